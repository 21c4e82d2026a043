#include "semacc/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

#include "csv.hpp"
#include "semacc/error.hpp"

namespace semacc {

std::vector<std::string> FeatureDataset::label_set() const {
    std::set<std::string> distinct(labels.begin(), labels.end());
    return {distinct.begin(), distinct.end()};
}

void FeatureDataset::validate() const {
    const auto n = static_cast<std::size_t>(features.rows());
    if (n < 1 || features.cols() < 1) {
        throw Error(Errc::InvalidConfig, "dataset must have at least one row and one feature");
    }
    if (ids.size() != n || labels.size() != n) {
        throw Error(Errc::InvalidConfig, "ids/labels/features row counts differ");
    }
    std::unordered_set<std::string> seen;
    seen.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (ids[i].empty()) {
            throw Error(Errc::InvalidLabel, "empty id at row " + std::to_string(i + 1));
        }
        if (labels[i].empty()) {
            throw Error(Errc::InvalidLabel, "empty label at row " + std::to_string(i + 1));
        }
        if (!seen.insert(ids[i]).second) {
            throw Error(Errc::DuplicateId, "'" + ids[i] + "'");
        }
    }
    if (!features.allFinite()) {
        throw Error(Errc::NonFiniteValue, "feature matrix contains NaN or Inf");
    }
}

Matrix CombinedDataset::stacked_features() const {
    Matrix stacked(total(), real.dim());
    stacked.topRows(real.size()) = real.features;
    stacked.bottomRows(synthetic.size()) = synthetic.features;
    return stacked;
}

Eigen::Index Embedding2D::real_count() const {
    return std::count(sources.begin(), sources.end(), Source::Real);
}

void Embedding2D::validate() const {
    const auto n = static_cast<std::size_t>(coords.rows());
    if (coords.cols() != 2) {
        throw Error(Errc::DimensionMismatch, "embedding coordinates must be n x 2");
    }
    if (ids.size() != n || labels.size() != n || sources.size() != n) {
        throw Error(Errc::InvalidConfig, "embedding id/label/source counts differ from rows");
    }
    if (!coords.allFinite()) {
        throw Error(Errc::NonFiniteValue, "embedding contains NaN or Inf");
    }
}

namespace {

void check_header(const std::string& header_line, const std::string& path, Eigen::Index& dim_out) {
    auto fields = csv::split(header_line);
    if (fields.size() < 3 || fields[0] != "id" || fields[1] != "label") {
        throw Error(Errc::MalformedHeader,
                    path + ": expected 'id,label,f0,...' header, got '" + header_line + "'");
    }
    for (std::size_t i = 2; i < fields.size(); ++i) {
        std::string expected = "f" + std::to_string(i - 2);
        if (fields[i] != expected) {
            throw Error(Errc::MalformedHeader,
                        path + ": feature column " + std::to_string(i - 2) + " named '" +
                            std::string(fields[i]) + "', expected '" + expected + "'");
        }
    }
    dim_out = static_cast<Eigen::Index>(fields.size() - 2);
}

}  // namespace

FeatureDataset load_feature_csv(const std::string& path, Source source) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::MissingFile, "'" + path + "'");
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw Error(Errc::MalformedHeader, path + ": empty file");
    }
    csv::strip_cr(line);
    Eigen::Index dim = 0;
    check_header(line, path, dim);

    FeatureDataset out;
    out.source = source;
    std::vector<double> values;
    long row = 0;
    while (std::getline(in, line)) {
        csv::strip_cr(line);
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
        ++row;
        auto fields = csv::split(line);
        if (static_cast<Eigen::Index>(fields.size()) != dim + 2) {
            throw Error(Errc::RaggedRow, path + ": row " + std::to_string(row) + " has " +
                                             std::to_string(fields.size() - 2) + " features, expected " +
                                             std::to_string(dim));
        }
        out.ids.emplace_back(fields[0]);
        out.labels.emplace_back(fields[1]);
        for (Eigen::Index j = 0; j < dim; ++j) {
            double v = 0.0;
            if (!csv::parse_double(fields[2 + j], v) || !std::isfinite(v)) {
                throw Error(Errc::NonFiniteValue,
                            path + ": row " + std::to_string(row) + ", column f" + std::to_string(j));
            }
            values.push_back(v);
        }
    }
    if (row == 0) {
        throw Error(Errc::InvalidConfig, path + ": no data rows");
    }

    out.features = Matrix(row, dim);
    for (long i = 0; i < row; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            out.features(i, j) = values[static_cast<std::size_t>(i) * dim + j];
        }
    }
    out.validate();
    return out;
}

void save_feature_csv(const FeatureDataset& dataset, const std::string& path) {
    dataset.validate();
    std::ofstream outf(path);
    if (!outf) {
        throw Error(Errc::IoError, "cannot write '" + path + "'");
    }
    outf << "id,label";
    for (Eigen::Index j = 0; j < dataset.dim(); ++j) outf << ",f" << j;
    outf << "\n";
    for (Eigen::Index i = 0; i < dataset.size(); ++i) {
        outf << dataset.ids[i] << ',' << dataset.labels[i];
        for (Eigen::Index j = 0; j < dataset.dim(); ++j) {
            outf << ',' << csv::format_double(dataset.features(i, j));
        }
        outf << "\n";
    }
    if (!outf) {
        throw Error(Errc::IoError, "write failed for '" + path + "'");
    }
}

CombinedDataset combine(FeatureDataset real, FeatureDataset synthetic) {
    real.validate();
    synthetic.validate();
    if (real.dim() != synthetic.dim()) {
        throw Error(Errc::DimensionMismatch,
                    "real D=" + std::to_string(real.dim()) + ", synthetic D=" + std::to_string(synthetic.dim()));
    }
    std::set<std::string> real_labels(real.labels.begin(), real.labels.end());
    for (const auto& label : synthetic.labels) {
        if (!real_labels.count(label)) {
            throw Error(Errc::UnknownSyntheticLabel, "'" + label + "' has no real exemplars");
        }
    }
    CombinedDataset out;
    out.real = std::move(real);
    out.real.source = Source::Real;
    out.synthetic = std::move(synthetic);
    out.synthetic.source = Source::Synthetic;
    return out;
}

}  // namespace semacc
