#pragma once

// Shared fixtures and brute-force oracles for the test binaries.

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "edgemc/mesh.hpp"
#include "edgemc/volume.hpp"

namespace edgemc::fixtures {

/// Uniform random values in [0, 100). With `padded`, the outermost grid
/// layer is zero so no surface touches the hull.
inline Volume random_volume(unsigned seed, Dims dims, bool padded) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<float> u(0.0f, 100.0f);
  std::vector<float> values(dims.count(), 0.0f);
  std::size_t n = 0;
  for (int z = 0; z < dims.nz; ++z) {
    for (int y = 0; y < dims.ny; ++y) {
      for (int x = 0; x < dims.nx; ++x, ++n) {
        const bool rim = x == 0 || y == 0 || z == 0 || x == dims.nx - 1 || y == dims.ny - 1 || z == dims.nz - 1;
        if (!(padded && rim)) values[n] = u(rng);
      }
    }
  }
  return Volume(dims, std::move(values));
}

inline double median_value(const Volume& v) {
  std::vector<float> vals(v.values().begin(), v.values().end());
  std::nth_element(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(vals.size() / 2), vals.end());
  return vals[vals.size() / 2];
}

/// Unordered edge -> incidence count, by direct enumeration.
inline std::map<std::pair<std::uint32_t, std::uint32_t>, int> edge_incidence(const TriangleMesh& m) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> out;
  for (const auto& t : m.triangles) {
    for (int i = 0; i < 3; ++i) {
      auto a = t[static_cast<std::size_t>(i)];
      auto b = t[static_cast<std::size_t>((i + 1) % 3)];
      if (a > b) std::swap(a, b);
      ++out[{a, b}];
    }
  }
  return out;
}

using PointKey = std::tuple<double, double, double>;

inline std::set<PointKey> vertex_set(const TriangleMesh& m) {
  std::set<PointKey> out;
  for (const auto& p : m.vertices) out.emplace(p.x, p.y, p.z);
  return out;
}

/// Only vertices referenced by a triangle.
inline std::set<PointKey> used_vertex_set(const TriangleMesh& m) {
  std::set<PointKey> out;
  for (const auto& t : m.triangles) {
    for (auto i : t) out.emplace(m.vertices[i].x, m.vertices[i].y, m.vertices[i].z);
  }
  return out;
}

/// Triangles as sorted position triples, independent of vertex numbering
/// and of rotation of the index triple (winding kept).
inline std::multiset<std::array<PointKey, 3>> triangle_set(const TriangleMesh& m) {
  std::multiset<std::array<PointKey, 3>> out;
  for (const auto& t : m.triangles) {
    std::array<PointKey, 3> k{};
    for (int i = 0; i < 3; ++i) {
      const Vec3& p = m.vertices[t[static_cast<std::size_t>(i)]];
      k[static_cast<std::size_t>(i)] = {p.x, p.y, p.z};
    }
    std::rotate(k.begin(), std::min_element(k.begin(), k.end()), k.end());
    out.insert(k);
  }
  return out;
}

}  // namespace edgemc::fixtures
