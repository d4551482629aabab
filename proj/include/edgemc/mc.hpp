#pragma once

// Classic 15-configuration marching cubes, kept as baseline and oracle.
// The 256-entry table is generated from 15 base sign patterns under the 24
// cell rotations and complementation. Complemented entries reuse the base
// polygons, which is exactly what leaves cracks on ambiguous faces.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "edgemc/cube.hpp"
#include "edgemc/interp.hpp"
#include "edgemc/mesh.hpp"
#include "edgemc/volume.hpp"

namespace edgemc {

/// Bit n set iff corner n is inside (hu > Y).
struct CubeCase {
  std::uint8_t mask = 0;
  friend bool operator==(const CubeCase&, const CubeCase&) = default;
};

CubeCase classify_cube(std::span<const float, 8> corner_values, double threshold);

/// Exactly one corner inside or exactly one outside: a single triangle.
bool is_config1(CubeCase c);

using LocalTriangle = std::array<std::uint8_t, 3>;

struct CaseEntry {
  std::vector<cube::Cycle> polygons;  // oriented, each starting at its smallest edge
  std::vector<LocalTriangle> triangles;
  int base = 0;         // index into base_case_masks()
  int rotation = 0;     // index into cube::rotations()
  bool complemented = false;
};

class CaseTable {
 public:
  /// The table used by extract_mc; built once on first use.
  static const CaseTable& classic();

  /// Builds the table from the base cases.
  CaseTable();

  [[nodiscard]] const CaseEntry& operator[](std::uint8_t mask) const { return entries_[mask]; }

 private:
  std::array<CaseEntry, 256> entries_;
};

/// Representative masks of the 15 base configurations, each with at most
/// four inside corners.
const std::array<std::uint8_t, 15>& base_case_masks();

/// Polygons of a base configuration, with inside corners cut off
/// individually on ambiguous faces.
std::vector<cube::Cycle> base_case_polygons(int base);

/// Orbits of all 256 masks under rotations and complementation, found by
/// brute-force closure. Each orbit is sorted; orbits are ordered by their
/// smallest member.
std::vector<std::vector<std::uint8_t>> mask_orbits();

/// Whether the sign pattern leaves a cell topologically ambiguous: an
/// ambiguous face, or inside (or outside) corners only at opposite body
/// diagonal ends.
bool is_ambiguous_case(CubeCase c);

/// Number of cells in the volume with an ambiguous sign pattern.
std::size_t count_ambiguous_cubes(const Volume& v, double threshold);

/// Serial reference extractor. Vertices are created once per crossing grid
/// edge, in EdgeId order; triangles follow cell order.
TriangleMesh extract_mc(const Volume& v, double threshold, const InterpMode& mode = InterpMode::linear());

/// OpenMP version of extract_mc; produces an identical mesh.
TriangleMesh extract_mc_parallel(const Volume& v, double threshold, const InterpMode& mode = InterpMode::linear());

}  // namespace edgemc
