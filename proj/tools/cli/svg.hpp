#pragma once

#include <string>
#include <vector>

#include "normaj/linalg.hpp"

namespace normaj::cli {

/// Static root-geometry scatter: lambda as filled circles, mu as crosses,
/// the convex hull of lambda as a closed polyline, viewport padded 10%.
std::string root_scatter_svg(const std::vector<Complex>& lambda,
                             const std::vector<Complex>& mu);

}  // namespace normaj::cli
