#pragma once

#include <string>
#include <vector>

#include "semacc/dataset.hpp"
#include "semacc/fcm.hpp"

namespace semacc {

enum class PlotMode { CorrectIncorrect, RealVsSynthetic, ColorByClass };

std::string to_string(PlotMode mode);
PlotMode parse_plot_mode(const std::string& name);  // "correct", "source", "class"

struct PlotSpec {
    PlotMode mode = PlotMode::CorrectIncorrect;
    int width = 800;
    int height = 600;
    double point_radius = 2.0;
    std::vector<std::string> palette;  // empty -> built-in 20-color cycle

    void validate() const;  // width/height >= 100, radius >= 1
};

// Built-in qualitative palette used by ColorByClass when PlotSpec.palette is
// empty; indices beyond the cycle reuse it with progressively darker shades.
const std::vector<std::string>& default_palette();
std::string class_color(const std::vector<std::string>& palette, std::size_t class_index);

// Renders one circle per embedded point. Real points are drawn first so
// synthetic points sit on top. CorrectIncorrect mode requires a
// classification covering every synthetic id.
std::string render_scatter(const Embedding2D& embedding,
                           const ClassificationResult* classification, const PlotSpec& spec);

// Sidecar legend: JSON object mapping category names to fill colors.
std::string legend_json(const Embedding2D& embedding,
                        const ClassificationResult* classification, const PlotSpec& spec);

}  // namespace semacc
