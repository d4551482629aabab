#include <bit>
#include <numeric>

#include "edgemc/edge_vertex.hpp"
#include "edgemc/mc.hpp"

namespace edgemc {

// Two passes per stage: count per z-plane, exclusive prefix sum, then fill.
// Plane-major order makes the output identical to extract_mc.
TriangleMesh extract_mc_parallel(const Volume& v, double threshold, const InterpMode& mode) {
  const Dims d = v.dims();
  const CaseTable& table = CaseTable::classic();
  std::vector<std::int32_t> slot_vertex(d.count() * 3, -1);

  auto crossing_axes = [&](int x, int y, int z) {
    const bool has[3] = {x + 1 < d.nx, y + 1 < d.ny, z + 1 < d.nz};
    unsigned bits = 0;
    for (int a = 0; a < 3; ++a) {
      if (has[a] && edge_crosses(v, EdgeId{{x, y, z}, static_cast<Axis>(a)}, threshold)) bits |= 1u << a;
    }
    return bits;
  };

  std::vector<std::size_t> plane_vertices(static_cast<std::size_t>(d.nz) + 1, 0);
#pragma omp parallel for schedule(static)
  for (int z = 0; z < d.nz; ++z) {
    std::size_t n = 0;
    for (int y = 0; y < d.ny; ++y) {
      for (int x = 0; x < d.nx; ++x) n += static_cast<std::size_t>(std::popcount(crossing_axes(x, y, z)));
    }
    plane_vertices[static_cast<std::size_t>(z) + 1] = n;
  }
  std::partial_sum(plane_vertices.begin(), plane_vertices.end(), plane_vertices.begin());

  TriangleMesh mesh;
  const std::size_t nv = plane_vertices.back();
  mesh.vertices.resize(nv);
  mesh.normals.resize(nv);
  mesh.hull_planes.resize(nv);

#pragma omp parallel for schedule(static)
  for (int z = 0; z < d.nz; ++z) {
    std::size_t next = plane_vertices[static_cast<std::size_t>(z)];
    for (int y = 0; y < d.ny; ++y) {
      for (int x = 0; x < d.nx; ++x) {
        const unsigned bits = crossing_axes(x, y, z);
        for (int a = 0; a < 3; ++a) {
          if (!(bits & (1u << a))) continue;
          const EdgeVertex ev = edge_vertex(v, EdgeId{{x, y, z}, static_cast<Axis>(a)}, threshold, mode);
          slot_vertex[v.index(x, y, z) * 3 + static_cast<std::size_t>(a)] = static_cast<std::int32_t>(next);
          mesh.vertices[next] = ev.position;
          mesh.normals[next] = ev.normal;
          mesh.hull_planes[next] = ev.hull_planes;
          ++next;
        }
      }
    }
  }

  const Dims cd = v.cube_dims();
  std::vector<std::size_t> layer_triangles(static_cast<std::size_t>(cd.nz) + 1, 0);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < cd.nz; ++k) {
    std::size_t n = 0;
    for (int j = 0; j < cd.ny; ++j) {
      for (int i = 0; i < cd.nx; ++i) {
        n += table[classify_cube(corner_values(v, {i, j, k}), threshold).mask].triangles.size();
      }
    }
    layer_triangles[static_cast<std::size_t>(k) + 1] = n;
  }
  std::partial_sum(layer_triangles.begin(), layer_triangles.end(), layer_triangles.begin());
  mesh.triangles.resize(layer_triangles.back());

#pragma omp parallel for schedule(static)
  for (int k = 0; k < cd.nz; ++k) {
    std::size_t next = layer_triangles[static_cast<std::size_t>(k)];
    for (int j = 0; j < cd.ny; ++j) {
      for (int i = 0; i < cd.nx; ++i) {
        const CubeIndex c{i, j, k};
        const CaseEntry& entry = table[classify_cube(corner_values(v, c), threshold).mask];
        for (const auto& tri : entry.triangles) {
          auto& out = mesh.triangles[next++];
          for (int n = 0; n < 3; ++n) {
            const EdgeId e = global_edge(c, tri[n]);
            out[n] = static_cast<std::uint32_t>(
                slot_vertex[v.index(e.origin.x, e.origin.y, e.origin.z) * 3 + static_cast<std::size_t>(e.axis)]);
          }
        }
      }
    }
  }
  return mesh;
}

}  // namespace edgemc
