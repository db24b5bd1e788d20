#pragma once
#include <string>
#include <vector>

#include "jetpinn/experiment.hpp"

namespace jetpinn {

// Log-log scatter of approximation error against the total count of
// boundary + interface + initial sampling points, one series per interior
// budget M_L, with a reference line of the given slope. Output is a
// self-contained SVG.
void emit_plot(const std::vector<SweepRowResult>& rows, double reference_slope,
               const std::string& path);

}  // namespace jetpinn
