#pragma once

#include <algorithm>
#include <cmath>

namespace vadkit {

// A point in polar valence-arousal-dominance space, each axis in [-1, 1].
struct VadPoint {
  double valence = 0.0;
  double arousal = 0.0;
  double dominance = 0.0;

  friend bool operator==(const VadPoint&, const VadPoint&) = default;
};

inline constexpr double kPolarTolerance = 1e-9;

inline double squared_distance(const VadPoint& a, const VadPoint& b) noexcept {
  const double dv = a.valence - b.valence;
  const double da = a.arousal - b.arousal;
  const double dd = a.dominance - b.dominance;
  return dv * dv + da * da + dd * dd;
}

inline double l2_distance(const VadPoint& a, const VadPoint& b) noexcept {
  return std::sqrt(squared_distance(a, b));
}

inline bool is_finite(const VadPoint& p) noexcept {
  return std::isfinite(p.valence) && std::isfinite(p.arousal) && std::isfinite(p.dominance);
}

inline bool in_polar_range(const VadPoint& p, double tolerance = 0.0) noexcept {
  auto ok = [tolerance](double x) { return x >= -1.0 - tolerance && x <= 1.0 + tolerance; };
  return is_finite(p) && ok(p.valence) && ok(p.arousal) && ok(p.dominance);
}

struct ClampedPoint {
  VadPoint point;
  bool clamped = false;
};

inline ClampedPoint clamp_to_polar(const VadPoint& p) noexcept {
  const VadPoint c{std::clamp(p.valence, -1.0, 1.0), std::clamp(p.arousal, -1.0, 1.0),
                   std::clamp(p.dominance, -1.0, 1.0)};
  return {c, !(c == p)};
}

}  // namespace vadkit
