#pragma once

#include <string>
#include <vector>

namespace qfp {

// Standalone SVG heatmap of the strict lower triangle of a square matrix.
// Values are clamped to [0, 1] and colored on a linear scale; row labels are
// shifted up by one and column labels drop the last entry, so only the
// off-diagonal cells carry ticks.
std::string render_heatmap(const std::vector<std::vector<double>>& matrix,
                           const std::vector<std::string>& labels,
                           const std::string& title = "");

}  // namespace qfp
