#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace semacc {

/// splitmix64 step; used to fan one user-facing seed out into per-stage seeds
/// so that stages stay decoupled (changing one stage's draw count never shifts
/// another stage's stream).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stage_tag) {
    return splitmix64(base ^ splitmix64(stage_tag));
}

/// Stage tags for derive_seed. Values are arbitrary but frozen: changing them
/// changes every artifact produced for a given --seed.
namespace seed_tag {
inline constexpr std::uint64_t tsne_init = 1;
inline constexpr std::uint64_t fcm_init = 2;
inline constexpr std::uint64_t shuffle = 3;
}  // namespace seed_tag

/// Deterministic random source. mt19937_64 is pinned by the standard; the
/// uniform and gaussian mappings below are spelled out here instead of using
/// std::*_distribution, whose output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        // keep log() finite
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Uniform integer in [0, bound) by rejection (unbiased).
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t x = gen_();
            if (x >= threshold) return x % bound;
        }
    }

    std::uint64_t next() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace semacc
