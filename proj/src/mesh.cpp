#include "edgemc/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <string>
#include <unordered_map>

#include "edgemc/error.hpp"

namespace edgemc {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller root wins so representatives are the minimal index.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::uint64_t bits_of(double v) {
  if (v == 0.0) v = 0.0;  // fold -0 into +0
  std::uint64_t b;
  std::memcpy(&b, &v, sizeof b);
  return b;
}

struct CellKey {
  std::int64_t x, y, z;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.x) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::size_t>(k.y) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(k.z) + 0x94D049BB133111EBull + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace

void validate(const TriangleMesh& mesh) {
  const std::size_t n = mesh.vertices.size();
  if (!mesh.normals.empty() && mesh.normals.size() != n) throw DataError("normal count does not match vertex count");
  if (!mesh.hull_planes.empty() && mesh.hull_planes.size() != n) {
    throw DataError("hull flag count does not match vertex count");
  }
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (auto v : tri) {
      if (v >= n) throw DataError("triangle " + std::to_string(t) + " references missing vertex " + std::to_string(v));
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw DataError("triangle " + std::to_string(t) + " is degenerate");
    }
  }
}

TriangleMesh weld(const TriangleMesh& mesh, double epsilon) {
  if (epsilon < 0.0) throw DataError("weld epsilon must be non-negative");
  const std::size_t n = mesh.vertices.size();
  std::vector<std::uint32_t> rep(n);

  if (epsilon == 0.0) {
    std::unordered_map<CellKey, std::uint32_t, CellHash> seen;
    for (std::size_t v = 0; v < n; ++v) {
      const Vec3 p = mesh.vertices[v];
      const CellKey key{static_cast<std::int64_t>(bits_of(p.x)), static_cast<std::int64_t>(bits_of(p.y)),
                        static_cast<std::int64_t>(bits_of(p.z))};
      rep[v] = seen.try_emplace(key, static_cast<std::uint32_t>(v)).first->second;
    }
  } else {
    std::unordered_map<CellKey, std::vector<std::uint32_t>, CellHash> grid;
    auto cell = [&](Vec3 p) {
      return CellKey{static_cast<std::int64_t>(std::floor(p.x / epsilon)),
                     static_cast<std::int64_t>(std::floor(p.y / epsilon)),
                     static_cast<std::int64_t>(std::floor(p.z / epsilon))};
    };
    for (std::size_t v = 0; v < n; ++v) {
      const Vec3 p = mesh.vertices[v];
      const CellKey c = cell(p);
      std::uint32_t found = static_cast<std::uint32_t>(v);
      for (int dz = -1; dz <= 1 && found == v; ++dz) {
        for (int dy = -1; dy <= 1 && found == v; ++dy) {
          for (int dx = -1; dx <= 1 && found == v; ++dx) {
            auto it = grid.find({c.x + dx, c.y + dy, c.z + dz});
            if (it == grid.end()) continue;
            for (auto r : it->second) {
              if (length(mesh.vertices[r] - p) <= epsilon) {
                found = r;
                break;
              }
            }
          }
        }
      }
      rep[v] = found;
      if (found == v) grid[c].push_back(static_cast<std::uint32_t>(v));
    }
  }

  TriangleMesh out;
  std::vector<std::uint32_t> remap(n, UINT32_MAX);
  for (std::size_t v = 0; v < n; ++v) {
    if (rep[v] != v) continue;
    remap[v] = static_cast<std::uint32_t>(out.vertices.size());
    out.vertices.push_back(mesh.vertices[v]);
    if (!mesh.normals.empty()) out.normals.push_back(mesh.normals[v]);
    if (!mesh.hull_planes.empty()) out.hull_planes.push_back(mesh.hull_planes[v]);
  }
  for (const auto& tri : mesh.triangles) {
    const std::array<std::uint32_t, 3> t{remap[rep[tri[0]]], remap[rep[tri[1]]], remap[rep[tri[2]]]};
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) continue;
    out.triangles.push_back(t);
  }
  return out;
}

TopologyReport topology_report(const TriangleMesh& mesh) {
  struct HalfEdge {
    std::uint64_t key;
    int direction;
  };
  std::vector<HalfEdge> halves;
  halves.reserve(mesh.triangles.size() * 3);
  for (const auto& tri : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      const std::uint32_t a = tri[e];
      const std::uint32_t b = tri[(e + 1) % 3];
      const std::uint64_t lo = std::min(a, b);
      const std::uint64_t hi = std::max(a, b);
      halves.push_back({(lo << 32) | hi, a < b ? 1 : -1});
    }
  }
  std::sort(halves.begin(), halves.end(), [](const HalfEdge& l, const HalfEdge& r) { return l.key < r.key; });

  TopologyReport report;
  for (std::size_t i = 0; i < halves.size();) {
    std::size_t j = i;
    int direction_sum = 0;
    while (j < halves.size() && halves[j].key == halves[i].key) direction_sum += halves[j++].direction;
    const std::size_t incidence = j - i;
    ++report.edge_count;
    if (incidence == 1) {
      ++report.boundary_edges;
      if (!mesh.hull_planes.empty()) {
        const auto a = static_cast<std::uint32_t>(halves[i].key >> 32);
        const auto b = static_cast<std::uint32_t>(halves[i].key & 0xFFFFFFFFu);
        if (mesh.hull_planes[a] & mesh.hull_planes[b]) ++report.hull_boundary_edges;
      }
    } else if (incidence == 2) {
      ++report.manifold_edges;
      if (direction_sum != 0) ++report.misoriented_edges;
    } else {
      ++report.nonmanifold_edges;
    }
    i = j;
  }
  report.component_count = count_components(mesh);
  report.watertight = report.boundary_edges == report.hull_boundary_edges && report.nonmanifold_edges == 0;
  return report;
}

namespace {

// Component label per triangle, labels ordered by smallest vertex index.
std::vector<std::size_t> label_triangles(const TriangleMesh& mesh, std::size_t& count) {
  DisjointSets sets(mesh.vertices.size());
  for (const auto& tri : mesh.triangles) {
    sets.unite(tri[0], tri[1]);
    sets.unite(tri[1], tri[2]);
  }
  std::vector<std::size_t> root_label(mesh.vertices.size(), SIZE_MAX);
  std::vector<bool> used(mesh.vertices.size(), false);
  for (const auto& tri : mesh.triangles) {
    for (auto v : tri) used[v] = true;
  }
  count = 0;
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    if (!used[v]) continue;
    const std::size_t r = sets.find(v);
    if (root_label[r] == SIZE_MAX) root_label[r] = count++;
  }
  std::vector<std::size_t> labels;
  labels.reserve(mesh.triangles.size());
  for (const auto& tri : mesh.triangles) labels.push_back(root_label[sets.find(tri[0])]);
  return labels;
}

}  // namespace

std::size_t count_components(const TriangleMesh& mesh) {
  std::size_t count = 0;
  label_triangles(mesh, count);
  return count;
}

std::vector<TriangleMesh> connected_components(const TriangleMesh& mesh) {
  std::size_t count = 0;
  const auto labels = label_triangles(mesh, count);
  std::vector<TriangleMesh> parts(count);
  std::vector<std::uint32_t> remap(mesh.vertices.size(), UINT32_MAX);

  // Walk vertices in index order so each part keeps the original order.
  std::vector<std::size_t> vertex_label(mesh.vertices.size(), SIZE_MAX);
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    for (auto v : mesh.triangles[t]) vertex_label[v] = labels[t];
  }
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    if (vertex_label[v] == SIZE_MAX) continue;
    TriangleMesh& part = parts[vertex_label[v]];
    remap[v] = static_cast<std::uint32_t>(part.vertices.size());
    part.vertices.push_back(mesh.vertices[v]);
    if (!mesh.normals.empty()) part.normals.push_back(mesh.normals[v]);
    if (!mesh.hull_planes.empty()) part.hull_planes.push_back(mesh.hull_planes[v]);
  }
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    parts[labels[t]].triangles.push_back({remap[tri[0]], remap[tri[1]], remap[tri[2]]});
  }
  return parts;
}

MeshStats area_and_count_stats(const TriangleMesh& mesh) {
  MeshStats stats;
  stats.triangle_count = mesh.triangles.size();
  for (const auto& tri : mesh.triangles) {
    const Vec3 a = mesh.vertices[tri[0]];
    const Vec3 b = mesh.vertices[tri[1]];
    const Vec3 c = mesh.vertices[tri[2]];
    stats.total_area += 0.5 * length(cross(b - a, c - a));
    for (const Vec3& p : {a, b, c}) {
      if (stats.bbox.empty) {
        stats.bbox = {p, p, false};
      } else {
        stats.bbox.min = {std::min(stats.bbox.min.x, p.x), std::min(stats.bbox.min.y, p.y),
                          std::min(stats.bbox.min.z, p.z)};
        stats.bbox.max = {std::max(stats.bbox.max.x, p.x), std::max(stats.bbox.max.y, p.y),
                          std::max(stats.bbox.max.z, p.z)};
      }
    }
  }
  return stats;
}

}  // namespace edgemc
