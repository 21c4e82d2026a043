#include "semacc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "csv.hpp"
#include "semacc/error.hpp"
#include "semacc/rng.hpp"

namespace semacc {

namespace {

constexpr double kMarginalFloor = 1e-12;
constexpr double kRowSumTol = 1e-6;

std::string row_name(Eigen::Index i) { return "row " + std::to_string(i + 1); }

}  // namespace

void ProbabilityMatrix::validate() const {
    const Eigen::Index n = rows.rows();
    const Eigen::Index c = rows.cols();
    if (c < 1) throw Error(Errc::InvalidDistribution, "no class columns");
    if (static_cast<Eigen::Index>(class_names.size()) != c) {
        throw Error(Errc::InvalidDistribution, "class name count differs from column count");
    }
    if (static_cast<Eigen::Index>(ids.size()) != n ||
        static_cast<Eigen::Index>(labels.size()) != n) {
        throw Error(Errc::InvalidDistribution, "id/label count differs from row count");
    }
    std::set<std::string_view> seen;
    for (const auto& id : ids) {
        if (id.empty()) throw Error(Errc::InvalidDistribution, "empty id");
        if (!seen.insert(id).second) throw Error(Errc::DuplicateId, "duplicate id '" + id + "'");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < c; ++j) {
            double p = rows(i, j);
            if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
                throw Error(Errc::InvalidDistribution,
                            row_name(i) + " has entry outside [0,1]");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > kRowSumTol) {
            throw Error(Errc::InvalidDistribution,
                        row_name(i) + " sums to " + csv::format_double(sum));
        }
    }
}

InceptionScoreResult inception_score(const ProbabilityMatrix& probs, int splits,
                                     std::optional<std::uint64_t> shuffle_seed) {
    probs.validate();
    const Eigen::Index n = probs.rows.rows();
    const Eigen::Index c = probs.rows.cols();
    if (splits < 1) throw Error(Errc::InvalidConfig, "splits must be >= 1");
    if (n < splits) {
        throw Error(Errc::TooFewRows, std::to_string(n) + " rows for " +
                                          std::to_string(splits) + " splits");
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    if (shuffle_seed) {
        Rng rng(*shuffle_seed);
        for (std::size_t i = order.size() - 1; i > 0; --i) {
            std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
            std::swap(order[i], order[j]);
        }
    }

    // contiguous chunks; the remainder goes to the first chunks
    const Eigen::Index base = n / splits;
    const Eigen::Index remainder = n % splits;
    std::vector<double> scores;
    scores.reserve(static_cast<std::size_t>(splits));
    Eigen::Index begin = 0;
    for (int s = 0; s < splits; ++s) {
        const Eigen::Index size = base + (s < remainder ? 1 : 0);
        Vector marginal = Vector::Zero(c);
        for (Eigen::Index i = begin; i < begin + size; ++i) {
            marginal += probs.rows.row(order[static_cast<std::size_t>(i)]).transpose();
        }
        marginal /= static_cast<double>(size);

        double mean_kl = 0.0;
        for (Eigen::Index i = begin; i < begin + size; ++i) {
            const auto row = probs.rows.row(order[static_cast<std::size_t>(i)]);
            double kl = 0.0;
            for (Eigen::Index j = 0; j < c; ++j) {
                double p = row(j);
                if (p > 0.0) kl += p * std::log(p / std::max(marginal(j), kMarginalFloor));
            }
            mean_kl += kl;
        }
        mean_kl /= static_cast<double>(size);
        scores.push_back(std::exp(mean_kl));
        begin += size;
    }

    InceptionScoreResult result;
    for (double s : scores) result.mean += s;
    result.mean /= static_cast<double>(splits);
    double var = 0.0;
    for (double s : scores) var += (s - result.mean) * (s - result.mean);
    result.std_dev = std::sqrt(var / static_cast<double>(splits));
    return result;
}

double direct_accuracy(const ProbabilityMatrix& probs,
                       const std::vector<std::string>& true_labels) {
    probs.validate();
    const Eigen::Index n = probs.rows.rows();
    if (static_cast<Eigen::Index>(true_labels.size()) != n) {
        throw Error(Errc::InvalidConfig, "label count differs from row count");
    }
    std::set<std::string> known(probs.class_names.begin(), probs.class_names.end());
    for (const auto& label : true_labels) {
        if (!known.count(label)) {
            throw Error(Errc::UnknownLabel, "label '" + label + "' is not a class name");
        }
    }
    long correct = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index best = 0;
        for (Eigen::Index j = 1; j < probs.rows.cols(); ++j) {
            if (probs.rows(i, j) > probs.rows(i, best)) best = j;
        }
        if (probs.class_names[static_cast<std::size_t>(best)] == true_labels[i]) ++correct;
    }
    return n > 0 ? static_cast<double>(correct) / static_cast<double>(n) : 0.0;
}

ProbabilityMatrix load_probability_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::MissingFile, path.string());

    ProbabilityMatrix probs;
    std::string line;
    csv::Metadata meta;
    bool have_header = false;
    Eigen::Index c = 0;
    std::vector<std::vector<double>> data;
    long data_row = 0;

    while (std::getline(in, line)) {
        csv::strip_cr(line);
        if (!have_header && csv::parse_metadata_line(line, meta)) continue;
        if (line.empty()) continue;
        auto fields = csv::split(line);
        if (!have_header) {
            if (fields.size() < 3 || fields[0] != "id" || fields[1] != "label") {
                throw Error(Errc::MalformedHeader,
                            path.string() + ": expected id,label,p0,... header");
            }
            c = static_cast<Eigen::Index>(fields.size()) - 2;
            for (Eigen::Index j = 0; j < c; ++j) {
                std::string expected = "p" + std::to_string(j);
                if (fields[static_cast<std::size_t>(j) + 2] != expected) {
                    throw Error(Errc::MalformedHeader,
                                path.string() + ": probability column " + std::to_string(j) +
                                    " must be named " + expected);
                }
            }
            have_header = true;
            continue;
        }
        ++data_row;
        if (static_cast<Eigen::Index>(fields.size()) != c + 2) {
            throw Error(Errc::RaggedRow, path.string() + ": data row " + std::to_string(data_row) +
                                             " has " + std::to_string(fields.size()) + " fields");
        }
        probs.ids.emplace_back(fields[0]);
        probs.labels.emplace_back(fields[1]);
        std::vector<double> row(static_cast<std::size_t>(c));
        for (Eigen::Index j = 0; j < c; ++j) {
            double value = 0.0;
            if (!csv::parse_double(fields[static_cast<std::size_t>(j) + 2], value) ||
                !std::isfinite(value)) {
                throw Error(Errc::NonFiniteValue, path.string() + ": data row " +
                                                      std::to_string(data_row) +
                                                      " has an unparseable probability");
            }
            row[static_cast<std::size_t>(j)] = value;
        }
        data.push_back(std::move(row));
    }
    if (!have_header) throw Error(Errc::MalformedHeader, path.string() + ": missing header");
    if (data.empty()) throw Error(Errc::TooFewRows, path.string() + ": no data rows");

    probs.rows = Matrix(static_cast<Eigen::Index>(data.size()), c);
    for (Eigen::Index i = 0; i < probs.rows.rows(); ++i) {
        for (Eigen::Index j = 0; j < c; ++j) {
            probs.rows(i, j) = data[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }

    if (const std::string* manifest = meta.find("classes")) {
        probs.class_names.clear();
        for (auto part : csv::split(*manifest)) probs.class_names.emplace_back(part);
        if (static_cast<Eigen::Index>(probs.class_names.size()) != c) {
            throw Error(Errc::MalformedHeader,
                        path.string() + ": classes manifest names " +
                            std::to_string(probs.class_names.size()) + " classes for " +
                            std::to_string(c) + " probability columns");
        }
    } else {
        for (Eigen::Index j = 0; j < c; ++j) probs.class_names.push_back("p" + std::to_string(j));
    }

    probs.validate();
    return probs;
}

void save_probability_csv(const ProbabilityMatrix& probs, const std::filesystem::path& path) {
    probs.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::IoError, "cannot open " + path.string() + " for writing");

    out << "# classes ";
    for (std::size_t j = 0; j < probs.class_names.size(); ++j) {
        if (j) out << ',';
        out << probs.class_names[j];
    }
    out << '\n';
    out << "id,label";
    for (Eigen::Index j = 0; j < probs.rows.cols(); ++j) out << ",p" << j;
    out << '\n';
    for (Eigen::Index i = 0; i < probs.rows.rows(); ++i) {
        out << probs.ids[static_cast<std::size_t>(i)] << ','
            << probs.labels[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < probs.rows.cols(); ++j) {
            out << ',' << csv::format_double(probs.rows(i, j));
        }
        out << '\n';
    }
    if (!out) throw Error(Errc::IoError, "failed writing " + path.string());
}

}  // namespace semacc
