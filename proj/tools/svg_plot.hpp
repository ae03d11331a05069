#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trajeval/geometry.hpp"

namespace trajeval::cli {

/// Top-down (x/y) view of the ground truth, the aligned estimate, and one
/// segment per associated pair connecting them. Returns a standalone SVG.
std::string ate_plot_svg(const std::vector<Vec3>& gt_path,
                         const std::vector<Vec3>& aligned_est_path,
                         const std::string& title);

struct BarValue {
  std::string group;   // sequence label (x-axis group)
  std::string series;  // algorithm label (bar colour)
  std::optional<double> value;
};

struct BarPanel {
  std::string title;
  std::string unit;
  std::vector<BarValue> values;
};

/// Grouped bar charts laid out on a two-column grid. Missing values leave an
/// empty slot; a panel with no values at all shows a "no data" note.
std::string bar_panels_svg(const std::vector<BarPanel>& panels, const std::string& title);

}  // namespace trajeval::cli
