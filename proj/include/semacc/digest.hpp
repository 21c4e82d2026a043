#pragma once

#include <cstdint>
#include <string>

namespace semacc {

/// FNV-1a 64-bit over a byte string. Used for change detection on input files
/// and stage artifacts, not for anything adversarial.
inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Digest of a file's raw bytes, formatted "fnv1a64:<16 hex digits>".
/// Throws Error(Errc::MissingFile) if the file cannot be read.
std::string file_digest(const std::string& path);

std::string digest_to_string(std::uint64_t h);

}  // namespace semacc
