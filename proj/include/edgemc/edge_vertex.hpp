#pragma once

#include <cstdint>

#include "edgemc/cube.hpp"
#include "edgemc/interp.hpp"
#include "edgemc/volume.hpp"

namespace edgemc {

/// Iso-surface vertex on one grid edge. Always computed from the edge's
/// minimal end towards its maximal end, so any two callers get bit-identical
/// results for the same EdgeId.
struct EdgeVertex {
  Vec3 position;
  Vec3 gradient;  // interpolated gray-value gradient
  Vec3 normal;    // unit, pointing from inside (hu > Y) to outside
  std::uint8_t hull_planes = 0;
};

GridPoint edge_far_end(const EdgeId& e);

bool edge_crosses(const Volume& v, const EdgeId& e, double threshold);

/// Precondition: edge_crosses(v, e, threshold).
EdgeVertex edge_vertex(const Volume& v, const EdgeId& e, double threshold, const InterpMode& mode);

}  // namespace edgemc
