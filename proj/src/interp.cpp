#include "edgemc/interp.hpp"

#include <cmath>
#include <stdexcept>

#include "edgemc/error.hpp"

namespace edgemc {

bool InterpParams::valid() const {
  return 0.0 < lower_value && lower_value < lower_limit && lower_limit < upper_limit && upper_limit < upper_value &&
         upper_value < 1.0 && std::abs(lower_value + upper_value - 1.0) <= 1e-12;
}

InterpParams InterpParams::make(double q, double m, double n, double p) {
  InterpParams params{q, m, n, p};
  if (!params.valid()) {
    throw std::invalid_argument("interpolation parameters must satisfy 0 < q < m < n < p < 1 and q + p = 1");
  }
  return params;
}

InterpMode InterpMode::three_segment(InterpParams p) {
  if (!p.valid()) {
    throw std::invalid_argument("interpolation parameters must satisfy 0 < q < m < n < p < 1 and q + p = 1");
  }
  return {InterpKind::ThreeSegment, p};
}

double interp_ratio(double hu1, double hu2, double threshold) {
  if (hu1 == hu2) throw NoCrossingError("edge end values are equal; no iso-surface crossing");
  return (threshold - hu1) / (hu2 - hu1);
}

double snap_three_segment(double k, const InterpParams& params) {
  const double magnitude = std::abs(k);
  double snapped = 0.5;
  if (magnitude < params.lower_limit) {
    snapped = params.lower_value;
  } else if (magnitude > params.upper_limit) {
    snapped = params.upper_value;
  }
  return k < 0.0 ? -snapped : snapped;
}

double edge_ratio(double hu1, double hu2, double threshold, const InterpMode& mode) {
  const double k = interp_ratio(hu1, hu2, threshold);
  switch (mode.kind) {
    case InterpKind::Linear: return k;
    case InterpKind::Midpoint: return 0.5;
    case InterpKind::ThreeSegment: return snap_three_segment(k, mode.params);
  }
  return k;
}

Vec3 edge_intersection(Vec3 p1, Vec3 p2, double hu1, double hu2, double threshold, const InterpMode& mode) {
  const double k = edge_ratio(hu1, hu2, threshold, mode);
  return p1 + k * (p2 - p1);
}

}  // namespace edgemc
