#pragma once

// Cube-cell conventions shared by the baseline extractor and edge growth.
//
// Corner n of a cell sits at offset (n & 1, (n >> 1) & 1, (n >> 2) & 1).
// Local edges are numbered by (lower corner id, axis), which makes the
// local order agree with the global EdgeId order inside any one cell.
// Local face f has normal axis f / 2 and lies on the min (f even) or max
// (f odd) side of the cell.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace edgemc {

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

struct GridPoint {
  int x = 0;
  int y = 0;
  int z = 0;
  friend constexpr auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

struct CubeIndex {
  int i = 0;
  int j = 0;
  int k = 0;
  friend constexpr auto operator<=>(const CubeIndex&, const CubeIndex&) = default;
};

/// Canonical key of a grid edge: its minimal grid point plus direction.
struct EdgeId {
  GridPoint origin;
  Axis axis = Axis::X;

  /// Packed key; ordering of keys is (z, y, x, axis) lexicographic.
  [[nodiscard]] std::uint64_t key() const;
  static EdgeId from_key(std::uint64_t key);
  friend constexpr auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

/// Canonical key of a cell face: its minimal grid point plus normal axis.
struct FaceId {
  GridPoint origin;
  Axis normal = Axis::X;

  [[nodiscard]] std::uint64_t key() const;
  friend constexpr auto operator<=>(const FaceId&, const FaceId&) = default;
};

namespace cube {

inline constexpr int kCorners = 8;
inline constexpr int kEdges = 12;
inline constexpr int kFaces = 6;

struct LocalEdge {
  std::uint8_t lo;
  std::uint8_t hi;
  Axis axis;
};

inline constexpr std::array<LocalEdge, kEdges> kEdgeTable{{
    {0, 1, Axis::X}, {0, 2, Axis::Y}, {0, 4, Axis::Z}, {1, 3, Axis::Y},
    {1, 5, Axis::Z}, {2, 3, Axis::X}, {2, 6, Axis::Z}, {3, 7, Axis::Z},
    {4, 5, Axis::X}, {4, 6, Axis::Y}, {5, 7, Axis::Y}, {6, 7, Axis::X},
}};

constexpr GridPoint corner_offset(int corner) {
  return {corner & 1, (corner >> 1) & 1, (corner >> 2) & 1};
}

constexpr Axis face_axis(int face) { return static_cast<Axis>(face / 2); }
constexpr int face_side(int face) { return face & 1; }
constexpr int opposite_face(int face) { return face ^ 1; }

/// Local edge joining two corners, or -1 when they are not cube-adjacent.
int edge_between(int c0, int c1);

/// Face corners in cyclic order.
const std::array<std::uint8_t, 4>& face_corners(int face);

/// Face edges in cyclic order; entry i joins face_corners[i] and face_corners[i + 1].
const std::array<std::uint8_t, 4>& face_edges(int face);

bool corner_on_face(int corner, int face);
bool edge_on_face(int edge, int face);

/// The two faces containing a local edge.
std::array<std::uint8_t, 2> faces_of_edge(int edge);

/// The single face containing both edges, if any.
std::optional<int> shared_face(int e0, int e1);

/// The corner across the cell from `corner` through the face opposite `face`.
int across(int corner, int face);

/// Bit e set when edge e has corners on different sides.
std::uint16_t crossing_edges(std::uint8_t inside_mask);

/// A face whose four corners alternate inside/outside around the cycle.
bool is_ambiguous_face(std::uint8_t inside_mask, int face);

/// A closed polygon of crossing edges, listed in traversal order.
using Cycle = std::vector<std::uint8_t>;

/// Per-face resolution of ambiguous faces: true pairs segments so the two
/// inside corners are cut off individually; false cuts off the outside ones.
/// Entries for unambiguous faces are ignored.
using FaceSeparation = std::array<bool, kFaces>;

/// Links the crossing edges of a cell into closed cycles. Every crossing edge
/// appears in exactly one cycle.
std::vector<Cycle> trace_cycles(std::uint8_t inside_mask, const FaceSeparation& separation);

/// Reverses the cycle if needed so the fan normals point from inside to
/// outside, then rotates it to start at its smallest edge.
Cycle orient_cycle(Cycle cycle, std::uint8_t inside_mask);

/// Triangles of an oriented cycle, winding preserved. Fans from the first
/// vertex (smallest edge) unless a fan diagonal would lie inside a cell face;
/// then from the next vertex that avoids that, or failing any, a
/// triangulation with the fewest such diagonals.
std::vector<std::array<std::uint8_t, 3>> triangulate_cycle(const Cycle& oriented);

/// Corner permutation induced by a proper rotation of the cell.
using CornerPerm = std::array<std::uint8_t, kCorners>;

/// The 24 proper rotations; entry 0 is the identity.
const std::array<CornerPerm, 24>& rotations();

/// Moves bit c of `mask` to bit perm[c].
std::uint8_t permute_mask(std::uint8_t mask, const CornerPerm& perm);
int permute_edge(int edge, const CornerPerm& perm);

}  // namespace cube

EdgeId global_edge(CubeIndex c, int local_edge);
FaceId global_face(CubeIndex c, int local_face);
CubeIndex neighbor(CubeIndex c, int local_face);

/// Local index of a global edge in cell c, or -1 if the edge is not on c.
int local_edge_of(CubeIndex c, const EdgeId& e);
/// Local index of a global face in cell c, or -1 if the face is not on c.
int local_face_of(CubeIndex c, const FaceId& f);

}  // namespace edgemc
