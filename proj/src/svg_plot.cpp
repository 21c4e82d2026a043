#include "semacc/svg_plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "semacc/error.hpp"

namespace semacc {

namespace {

constexpr const char* kRealColor = "#000000";
constexpr const char* kCorrectColor = "#1f5fbf";
constexpr const char* kIncorrectColor = "#cc2222";
constexpr const char* kSyntheticColor = "#888888";

std::string fixed3(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, 3);
    std::string text(buf, res.ptr);
    if (text == "-0.000") text = "0.000";
    return text;
}

int hex_nibble(char ch) {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
    return -1;
}

std::string darken(const std::string& hex, double factor) {
    if (hex.size() != 7 || hex[0] != '#') return hex;
    std::string out = "#";
    for (int channel = 0; channel < 3; ++channel) {
        int hi = hex_nibble(hex[1 + 2 * channel]);
        int lo = hex_nibble(hex[2 + 2 * channel]);
        if (hi < 0 || lo < 0) return hex;
        int value = static_cast<int>(std::lround((hi * 16 + lo) * factor));
        value = std::clamp(value, 0, 255);
        const char* digits = "0123456789abcdef";
        out += digits[value / 16];
        out += digits[value % 16];
    }
    return out;
}

// Affine data->viewport map: 5% margin on every side, aspect ratio preserved,
// data centered; a degenerate bounding box maps to the viewport center.
struct ViewportMap {
    double scale = 0.0;
    double mid_x = 0.0, mid_y = 0.0;
    double center_x = 0.0, center_y = 0.0;

    ViewportMap(const Matrix& coords, int width, int height) {
        double min_x = coords.col(0).minCoeff();
        double max_x = coords.col(0).maxCoeff();
        double min_y = coords.col(1).minCoeff();
        double max_y = coords.col(1).maxCoeff();
        mid_x = 0.5 * (min_x + max_x);
        mid_y = 0.5 * (min_y + max_y);
        center_x = 0.5 * width;
        center_y = 0.5 * height;
        double usable_w = 0.9 * width;
        double usable_h = 0.9 * height;
        double range_x = max_x - min_x;
        double range_y = max_y - min_y;
        double sx = range_x > 0.0 ? usable_w / range_x : std::numeric_limits<double>::infinity();
        double sy = range_y > 0.0 ? usable_h / range_y : std::numeric_limits<double>::infinity();
        scale = std::min(sx, sy);
        if (!std::isfinite(scale)) scale = 0.0;
    }

    double px(double x) const { return center_x + (x - mid_x) * scale; }
    double py(double y) const { return center_y - (y - mid_y) * scale; }
};

std::map<std::string, std::size_t> class_indices(const Embedding2D& embedding) {
    std::set<std::string> distinct(embedding.labels.begin(), embedding.labels.end());
    std::map<std::string, std::size_t> indices;
    std::size_t next = 0;
    for (const auto& cls : distinct) indices[cls] = next++;
    return indices;
}

std::map<std::string, bool> correctness_by_id(const ClassificationResult& classification) {
    std::map<std::string, bool> by_id;
    for (const auto& point : classification.points) by_id[point.id] = point.correct;
    return by_id;
}

}  // namespace

std::string to_string(PlotMode mode) {
    switch (mode) {
        case PlotMode::CorrectIncorrect: return "correct";
        case PlotMode::RealVsSynthetic: return "source";
        case PlotMode::ColorByClass: return "class";
    }
    return "correct";
}

PlotMode parse_plot_mode(const std::string& name) {
    if (name == "correct") return PlotMode::CorrectIncorrect;
    if (name == "source") return PlotMode::RealVsSynthetic;
    if (name == "class") return PlotMode::ColorByClass;
    throw Error(Errc::InvalidConfig,
                "unknown plot mode '" + name + "' (expected correct, source, or class)");
}

void PlotSpec::validate() const {
    if (width < 100 || height < 100) {
        throw Error(Errc::InvalidConfig, "plot dimensions must be at least 100x100");
    }
    if (!(point_radius >= 1.0)) {
        throw Error(Errc::InvalidConfig, "point radius must be at least 1");
    }
    for (const auto& color : palette) {
        if (color.empty()) throw Error(Errc::InvalidConfig, "empty palette color");
    }
}

const std::vector<std::string>& default_palette() {
    static const std::vector<std::string> palette = {
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
        "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5",
        "#c49c94", "#f7b6d2", "#c7c7c7", "#dbdb8d", "#9edae5",
    };
    return palette;
}

std::string class_color(const std::vector<std::string>& palette, std::size_t class_index) {
    const auto& cycle = palette.empty() ? default_palette() : palette;
    std::size_t wrap = class_index / cycle.size();
    const std::string& base = cycle[class_index % cycle.size()];
    if (wrap == 0) return base;
    return darken(base, std::pow(0.75, static_cast<double>(wrap)));
}

std::string render_scatter(const Embedding2D& embedding,
                           const ClassificationResult* classification, const PlotSpec& spec) {
    spec.validate();
    embedding.validate();
    const Eigen::Index n = embedding.coords.rows();
    if (n == 0) throw Error(Errc::EmptyEmbedding, "no points to plot");

    std::map<std::string, bool> correct_by_id;
    if (spec.mode == PlotMode::CorrectIncorrect) {
        if (classification == nullptr) {
            throw Error(Errc::MissingClassification,
                        "correct/incorrect plot needs a classification result");
        }
        correct_by_id = correctness_by_id(*classification);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (embedding.sources[static_cast<std::size_t>(i)] == Source::Synthetic &&
                !correct_by_id.count(embedding.ids[static_cast<std::size_t>(i)])) {
                throw Error(Errc::MissingClassification,
                            "no classification for synthetic id '" +
                                embedding.ids[static_cast<std::size_t>(i)] + "'");
            }
        }
    }

    auto indices = class_indices(embedding);
    ViewportMap view(embedding.coords, spec.width, spec.height);

    auto fill_for = [&](Eigen::Index i) -> std::string {
        const auto idx = static_cast<std::size_t>(i);
        switch (spec.mode) {
            case PlotMode::CorrectIncorrect:
                if (embedding.sources[idx] == Source::Real) return kRealColor;
                return correct_by_id.at(embedding.ids[idx]) ? kCorrectColor : kIncorrectColor;
            case PlotMode::RealVsSynthetic:
                return embedding.sources[idx] == Source::Real ? kRealColor : kSyntheticColor;
            case PlotMode::ColorByClass:
                return class_color(spec.palette, indices.at(embedding.labels[idx]));
        }
        return kRealColor;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
        << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n";
    svg << "<rect width=\"" << spec.width << "\" height=\"" << spec.height
        << "\" fill=\"#ffffff\"/>\n";

    const std::string radius = csv::format_double(spec.point_radius);
    auto emit = [&](Eigen::Index i) {
        svg << "<circle cx=\"" << fixed3(view.px(embedding.coords(i, 0))) << "\" cy=\""
            << fixed3(view.py(embedding.coords(i, 1))) << "\" r=\"" << radius << "\" fill=\""
            << fill_for(i) << "\"/>\n";
    };
    // real beneath synthetic
    for (Eigen::Index i = 0; i < n; ++i) {
        if (embedding.sources[static_cast<std::size_t>(i)] == Source::Real) emit(i);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (embedding.sources[static_cast<std::size_t>(i)] == Source::Synthetic) emit(i);
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string legend_json(const Embedding2D& embedding,
                        const ClassificationResult* classification, const PlotSpec& spec) {
    spec.validate();
    (void)classification;
    nlohmann::json legend;
    legend["mode"] = to_string(spec.mode);
    nlohmann::json colors;
    switch (spec.mode) {
        case PlotMode::CorrectIncorrect:
            colors["real"] = kRealColor;
            colors["synthetic correct"] = kCorrectColor;
            colors["synthetic incorrect"] = kIncorrectColor;
            break;
        case PlotMode::RealVsSynthetic:
            colors["real"] = kRealColor;
            colors["synthetic"] = kSyntheticColor;
            break;
        case PlotMode::ColorByClass:
            for (const auto& [cls, index] : class_indices(embedding)) {
                colors[cls] = class_color(spec.palette, index);
            }
            break;
    }
    legend["colors"] = colors;
    return legend.dump(2) + "\n";
}

}  // namespace semacc
