#include "edgemc/edge_vertex.hpp"

namespace edgemc {

GridPoint edge_far_end(const EdgeId& e) {
  GridPoint p = e.origin;
  switch (e.axis) {
    case Axis::X: ++p.x; break;
    case Axis::Y: ++p.y; break;
    case Axis::Z: ++p.z; break;
  }
  return p;
}

bool edge_crosses(const Volume& v, const EdgeId& e, double threshold) {
  return crosses(v.at(e.origin), v.at(edge_far_end(e)), threshold);
}

EdgeVertex edge_vertex(const Volume& v, const EdgeId& e, double threshold, const InterpMode& mode) {
  const GridPoint a = e.origin;
  const GridPoint b = edge_far_end(e);
  const double hu_a = v.at(a);
  const double hu_b = v.at(b);
  const double k = edge_ratio(hu_a, hu_b, threshold, mode);
  const Vec3 pa = v.position(a);
  EdgeVertex out;
  out.position = pa + k * (v.position(b) - pa);
  const Vec3 ga = v.gradient(a);
  out.gradient = ga + k * (v.gradient(b) - ga);
  // Inside is the high-valued side, so the outward normal opposes the gradient.
  out.normal = normalized(-1.0 * out.gradient);
  out.hull_planes = static_cast<std::uint8_t>(v.hull_planes(a) & v.hull_planes(b));
  return out;
}

}  // namespace edgemc
