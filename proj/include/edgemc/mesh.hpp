#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "edgemc/vec3.hpp"

namespace edgemc {

/// Indexed triangle mesh. `normals` and `hull_planes` are either empty or
/// parallel to `vertices`; `hull_planes` carries the volume-hull plane bits
/// (see Volume::hull_planes) of the grid edge each vertex came from.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Vec3> normals;
  std::vector<std::uint8_t> hull_planes;
  std::vector<std::array<std::uint32_t, 3>> triangles;

  [[nodiscard]] bool empty() const { return triangles.empty(); }
};

/// Throws DataError on out-of-range indices, degenerate triangles or
/// attribute arrays of the wrong length.
void validate(const TriangleMesh& mesh);

/// Merges vertices closer than `epsilon` (epsilon 0 merges exact duplicates),
/// reindexes triangles and drops the ones that collapse.
TriangleMesh weld(const TriangleMesh& mesh, double epsilon = 0.0);

struct TopologyReport {
  std::size_t edge_count = 0;
  std::size_t boundary_edges = 0;
  std::size_t manifold_edges = 0;
  std::size_t nonmanifold_edges = 0;
  std::size_t component_count = 0;
  std::size_t hull_boundary_edges = 0;
  /// Manifold edges traversed in the same direction by both triangles.
  std::size_t misoriented_edges = 0;
  bool watertight = false;
};

/// Edge incidence tallies over unordered vertex-index pairs. A boundary edge
/// whose two vertices share a hull plane counts as a hull edge.
TopologyReport topology_report(const TriangleMesh& mesh);

/// Partition by shared vertices; ordered by smallest original vertex index.
std::vector<TriangleMesh> connected_components(const TriangleMesh& mesh);
std::size_t count_components(const TriangleMesh& mesh);

struct BoundingBox {
  Vec3 min;
  Vec3 max;
  bool empty = true;
};

struct MeshStats {
  std::size_t triangle_count = 0;
  double total_area = 0.0;
  BoundingBox bbox;
};

MeshStats area_and_count_stats(const TriangleMesh& mesh);

// Export and import.

/// ASCII OBJ with shortest round-trip decimals; writes vn records when
/// normals are present.
void write_obj(const TriangleMesh& mesh, const std::filesystem::path& path);
std::string to_obj(const TriangleMesh& mesh);

/// Parses v/vn/f records (f accepts v, v/t, v//n, v/t/n). Throws DataError.
TriangleMesh read_obj(const std::filesystem::path& path);
TriangleMesh parse_obj(const std::string& text);

/// Little-endian binary STL: 80-byte header, count, 50-byte records.
void write_stl_binary(const TriangleMesh& mesh, const std::filesystem::path& path);

}  // namespace edgemc
