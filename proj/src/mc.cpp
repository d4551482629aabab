#include "edgemc/edge_vertex.hpp"
#include "edgemc/mc.hpp"

namespace edgemc {

namespace {

constexpr std::int32_t kNoVertex = -1;

void push_vertex(TriangleMesh& mesh, const EdgeVertex& ev) {
  mesh.vertices.push_back(ev.position);
  mesh.normals.push_back(ev.normal);
  mesh.hull_planes.push_back(ev.hull_planes);
}

}  // namespace

std::size_t count_ambiguous_cubes(const Volume& v, double threshold) {
  const Dims cd = v.cube_dims();
  std::size_t count = 0;
  for (int k = 0; k < cd.nz; ++k) {
    for (int j = 0; j < cd.ny; ++j) {
      for (int i = 0; i < cd.nx; ++i) {
        const auto hu = corner_values(v, {i, j, k});
        if (is_ambiguous_case(classify_cube(hu, threshold))) ++count;
      }
    }
  }
  return count;
}

TriangleMesh extract_mc(const Volume& v, double threshold, const InterpMode& mode) {
  const Dims d = v.dims();
  const CaseTable& table = CaseTable::classic();
  TriangleMesh mesh;

  // One vertex per crossing grid edge, slot = 3 * point index + axis.
  std::vector<std::int32_t> slot_vertex(d.count() * 3, kNoVertex);
  for (int z = 0; z < d.nz; ++z) {
    for (int y = 0; y < d.ny; ++y) {
      for (int x = 0; x < d.nx; ++x) {
        const std::size_t base = v.index(x, y, z) * 3;
        const bool has[3] = {x + 1 < d.nx, y + 1 < d.ny, z + 1 < d.nz};
        for (int a = 0; a < 3; ++a) {
          if (!has[a]) continue;
          const EdgeId e{{x, y, z}, static_cast<Axis>(a)};
          if (!edge_crosses(v, e, threshold)) continue;
          slot_vertex[base + a] = static_cast<std::int32_t>(mesh.vertices.size());
          push_vertex(mesh, edge_vertex(v, e, threshold, mode));
        }
      }
    }
  }

  const Dims cd = v.cube_dims();
  for (int k = 0; k < cd.nz; ++k) {
    for (int j = 0; j < cd.ny; ++j) {
      for (int i = 0; i < cd.nx; ++i) {
        const CubeIndex c{i, j, k};
        const auto hu = corner_values(v, c);
        const CaseEntry& entry = table[classify_cube(hu, threshold).mask];
        for (const auto& tri : entry.triangles) {
          std::array<std::uint32_t, 3> out{};
          for (int n = 0; n < 3; ++n) {
            const EdgeId e = global_edge(c, tri[n]);
            out[n] = static_cast<std::uint32_t>(slot_vertex[v.index(e.origin.x, e.origin.y, e.origin.z) * 3 +
                                                            static_cast<std::size_t>(e.axis)]);
          }
          mesh.triangles.push_back(out);
        }
      }
    }
  }
  return mesh;
}

}  // namespace edgemc
