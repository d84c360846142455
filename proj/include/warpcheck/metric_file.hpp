#pragma once

#include <string>

#include "warpcheck/geometry.hpp"

namespace warpcheck::cli {

/// Reads a metric specification:
///
///   [metric]
///   epsilon = 0.1
///
///   [[factor]]
///   dim = 2
///   sec_curv = 1          # or "p/q"
///   volume = 12.566       # optional for spheres (computed from sec_curv)
///   label = "S2"
///   warp = "1/(1 + t^4)"  # or coeff = "1 + t^4" (then f = sqrt(coeff))
///
/// Throws ParseError on malformed input; the returned metric is validated
/// (positive warps on the sampled window), which may throw DomainError.
geometry::WarpedMetric parse_metric_toml(const std::string& text);
geometry::WarpedMetric load_metric_file(const std::string& path);

} // namespace warpcheck::cli
