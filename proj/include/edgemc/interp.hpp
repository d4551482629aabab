#pragma once

#include "edgemc/vec3.hpp"

namespace edgemc {

/// Three-segment quantisation of the interpolation ratio. `lower_limit` and
/// `upper_limit` split [0, 1] into three bands that snap to `lower_value`,
/// 0.5 and `upper_value`.
struct InterpParams {
  double lower_value = 0.25;  // q
  double lower_limit = 0.3;   // m
  double upper_limit = 0.7;   // n
  double upper_value = 0.75;  // p

  /// 0 < q < m < n < p < 1 and q + p == 1.
  [[nodiscard]] bool valid() const;

  /// Validating constructor; throws std::invalid_argument.
  static InterpParams make(double q, double m, double n, double p);
};

enum class InterpKind { Linear, Midpoint, ThreeSegment };

struct InterpMode {
  InterpKind kind = InterpKind::ThreeSegment;
  InterpParams params;

  static InterpMode linear() { return {InterpKind::Linear, {}}; }
  static InterpMode midpoint() { return {InterpKind::Midpoint, {}}; }
  static InterpMode three_segment(InterpParams p = {});
};

/// Inside test used everywhere: a grid point is inside iff hu > threshold.
constexpr bool is_inside(double hu, double threshold) { return hu > threshold; }

constexpr bool crosses(double hu1, double hu2, double threshold) {
  return is_inside(hu1, threshold) != is_inside(hu2, threshold);
}

/// k = (Y - hu1) / (hu2 - hu1). Throws NoCrossingError when hu1 == hu2.
double interp_ratio(double hu1, double hu2, double threshold);

/// Snaps |k| to q below m, to p above n, to 0.5 otherwise; the sign of k is kept.
double snap_three_segment(double k, const InterpParams& params);

/// The ratio a mode places on an edge.
double edge_ratio(double hu1, double hu2, double threshold, const InterpMode& mode);

/// p1 + k (p2 - p1) with k from `edge_ratio`.
Vec3 edge_intersection(Vec3 p1, Vec3 p2, double hu1, double hu2, double threshold, const InterpMode& mode);

}  // namespace edgemc
