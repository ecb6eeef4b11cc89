#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "fuse/estimates.hpp"

namespace testutil {

// |a - b| <= max(floor, rel * |b|); b is the reference value.
inline bool close(double a, double b, double rel = 1e-12, double floor = 1e-15) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= std::max(floor, rel * std::abs(b));
}

// Scale-aware variant for quantities that may sit near zero after
// cancellation: the floor grows with the magnitude hint.
inline bool close_at_scale(double a, double b, double scale, double rel = 1e-12) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= rel * std::max({1.0, scale, std::abs(b)});
}

inline fuse::SourceEstimate src(double value, double uncertainty) {
  return fuse::SourceEstimate{value, uncertainty, ""};
}

inline std::vector<fuse::SourceEstimate> sources(
    std::initializer_list<std::pair<double, double>> pairs) {
  std::vector<fuse::SourceEstimate> out;
  for (const auto& [v, u] : pairs) out.push_back(src(v, u));
  return out;
}

}  // namespace testutil
