#include "edgemc/cube.hpp"

#include <algorithm>
#include <limits>
#include <bit>

#include "edgemc/error.hpp"
#include "edgemc/vec3.hpp"

namespace edgemc {

namespace {

constexpr std::uint64_t kCoordBits = 21;
constexpr std::uint64_t kCoordMask = (std::uint64_t{1} << kCoordBits) - 1;

std::uint64_t pack(GridPoint p, Axis a) {
  const auto x = static_cast<std::uint64_t>(p.x) & kCoordMask;
  const auto y = static_cast<std::uint64_t>(p.y) & kCoordMask;
  const auto z = static_cast<std::uint64_t>(p.z) & kCoordMask;
  return ((z << (2 * kCoordBits)) | (y << kCoordBits) | x) << 2 | static_cast<std::uint64_t>(a);
}

int axis_bit(Axis a) { return 1 << static_cast<int>(a); }

}  // namespace

std::uint64_t EdgeId::key() const { return pack(origin, axis); }

EdgeId EdgeId::from_key(std::uint64_t key) {
  EdgeId e;
  e.axis = static_cast<Axis>(key & 3);
  key >>= 2;
  e.origin.x = static_cast<int>(key & kCoordMask);
  e.origin.y = static_cast<int>((key >> kCoordBits) & kCoordMask);
  e.origin.z = static_cast<int>((key >> (2 * kCoordBits)) & kCoordMask);
  return e;
}

std::uint64_t FaceId::key() const { return pack(origin, normal); }

namespace cube {

int edge_between(int c0, int c1) {
  const int diff = c0 ^ c1;
  if (std::popcount(static_cast<unsigned>(diff)) != 1) return -1;
  const int lo = std::min(c0, c1);
  for (int e = 0; e < kEdges; ++e) {
    if (kEdgeTable[e].lo == lo && kEdgeTable[e].hi == lo + diff) return e;
  }
  return -1;
}

namespace {

struct FaceTables {
  std::array<std::array<std::uint8_t, 4>, kFaces> corners{};
  std::array<std::array<std::uint8_t, 4>, kFaces> edges{};
  std::array<std::array<std::uint8_t, 2>, kEdges> edge_faces{};

  FaceTables() {
    for (int f = 0; f < kFaces; ++f) {
      const int a = static_cast<int>(face_axis(f));
      const int u = (a + 1) % 3;
      const int v = (a + 2) % 3;
      const int base = face_side(f) ? (1 << a) : 0;
      // (0,0) (1,0) (1,1) (0,1) in the face's (u, v) plane.
      const int cu[4] = {0, 1, 1, 0};
      const int cv[4] = {0, 0, 1, 1};
      for (int n = 0; n < 4; ++n) {
        corners[f][n] = static_cast<std::uint8_t>(base | (cu[n] << u) | (cv[n] << v));
      }
      for (int n = 0; n < 4; ++n) {
        edges[f][n] = static_cast<std::uint8_t>(edge_between(corners[f][n], corners[f][(n + 1) % 4]));
      }
    }
    std::array<int, kEdges> fill{};
    for (int f = 0; f < kFaces; ++f) {
      for (auto e : edges[f]) edge_faces[e][fill[e]++] = static_cast<std::uint8_t>(f);
    }
  }
};

const FaceTables& face_tables() {
  static const FaceTables tables;
  return tables;
}

}  // namespace

const std::array<std::uint8_t, 4>& face_corners(int face) { return face_tables().corners[face]; }

const std::array<std::uint8_t, 4>& face_edges(int face) { return face_tables().edges[face]; }

bool corner_on_face(int corner, int face) {
  const int a = static_cast<int>(face_axis(face));
  return ((corner >> a) & 1) == face_side(face);
}

bool edge_on_face(int edge, int face) {
  const auto& faces = face_tables().edge_faces[edge];
  return faces[0] == face || faces[1] == face;
}

std::array<std::uint8_t, 2> faces_of_edge(int edge) { return face_tables().edge_faces[edge]; }

std::optional<int> shared_face(int e0, int e1) {
  if (e0 == e1) return std::nullopt;
  for (auto f : faces_of_edge(e0)) {
    if (edge_on_face(e1, f)) return f;
  }
  return std::nullopt;
}

int across(int corner, int face) { return corner ^ axis_bit(face_axis(face)); }

std::uint16_t crossing_edges(std::uint8_t inside_mask) {
  std::uint16_t bits = 0;
  for (int e = 0; e < kEdges; ++e) {
    const bool a = (inside_mask >> kEdgeTable[e].lo) & 1;
    const bool b = (inside_mask >> kEdgeTable[e].hi) & 1;
    if (a != b) bits |= static_cast<std::uint16_t>(1u << e);
  }
  return bits;
}

bool is_ambiguous_face(std::uint8_t inside_mask, int face) {
  const auto& c = face_corners(face);
  const bool s0 = (inside_mask >> c[0]) & 1;
  const bool s1 = (inside_mask >> c[1]) & 1;
  const bool s2 = (inside_mask >> c[2]) & 1;
  const bool s3 = (inside_mask >> c[3]) & 1;
  return s0 == s2 && s1 == s3 && s0 != s1;
}

std::vector<Cycle> trace_cycles(std::uint8_t inside_mask, const FaceSeparation& separation) {
  const std::uint16_t crossing = crossing_edges(inside_mask);
  // partner[e][slot] is the edge joined to e through faces_of_edge(e)[slot].
  std::array<std::array<int, 2>, kEdges> partner{};
  for (auto& p : partner) p = {-1, -1};

  auto link = [&](int e0, int e1, int f) {
    const auto f0 = faces_of_edge(e0);
    const auto f1 = faces_of_edge(e1);
    partner[e0][f0[0] == f ? 0 : 1] = e1;
    partner[e1][f1[0] == f ? 0 : 1] = e0;
  };

  for (int f = 0; f < kFaces; ++f) {
    const auto& corners = face_corners(f);
    const auto& edges = face_edges(f);
    std::array<int, 4> hit{};
    int count = 0;
    for (auto e : edges) {
      if ((crossing >> e) & 1) hit[count++] = e;
    }
    if (count == 2) {
      link(hit[0], hit[1], f);
    } else if (count == 4) {
      // Corner n sits between face edges n - 1 and n.
      for (int n = 0; n < 4; ++n) {
        const bool inside = (inside_mask >> corners[n]) & 1;
        if (inside == separation[f]) link(edges[(n + 3) % 4], edges[n], f);
      }
    }
  }

  std::vector<Cycle> cycles;
  std::uint16_t visited = 0;
  for (int start = 0; start < kEdges; ++start) {
    if (!((crossing >> start) & 1) || ((visited >> start) & 1)) continue;
    Cycle cycle;
    int cur = start;
    int arrived_slot = 1;
    while (true) {
      cycle.push_back(static_cast<std::uint8_t>(cur));
      visited |= static_cast<std::uint16_t>(1u << cur);
      // Leave through the face we did not arrive by.
      const int out_slot = 1 - arrived_slot;
      const int next = partner[cur][out_slot];
      if (next < 0) throw InternalError("open cycle while tracing cell polygon");
      if (next == start) break;
      const int face = faces_of_edge(cur)[out_slot];
      arrived_slot = faces_of_edge(next)[0] == face ? 0 : 1;
      cur = next;
      if (cycle.size() > kEdges) throw InternalError("runaway cycle while tracing cell polygon");
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

namespace {

Vec3 corner_point(int c) {
  const GridPoint o = corner_offset(c);
  return {static_cast<double>(o.x), static_cast<double>(o.y), static_cast<double>(o.z)};
}

Vec3 edge_midpoint(int e) {
  return 0.5 * (corner_point(kEdgeTable[e].lo) + corner_point(kEdgeTable[e].hi));
}

}  // namespace

Cycle orient_cycle(Cycle cycle, std::uint8_t inside_mask) {
  if (cycle.size() < 3) throw InternalError("cycle with fewer than three edges");
  // Every segment lies on a face. Walking it from a to b with the face's
  // outward normal n, a correctly oriented patch keeps inside corners on the
  // side of (b - a) x n. Each segment votes; a well-formed cycle is unanimous.
  int forward = 0;
  int backward = 0;
  const std::size_t n = cycle.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int ea = cycle[i];
    const int eb = cycle[(i + 1) % n];
    const auto face = shared_face(ea, eb);
    if (!face) throw InternalError("cycle step between edges with no common face");
    Vec3 normal{};
    const double sign = face_side(*face) ? 1.0 : -1.0;
    switch (face_axis(*face)) {
      case Axis::X: normal.x = sign; break;
      case Axis::Y: normal.y = sign; break;
      case Axis::Z: normal.z = sign; break;
    }
    const auto& la = kEdgeTable[ea];
    const auto& lb = kEdgeTable[eb];
    // The shared corner of adjacent edges is the one the segment cuts off;
    // for opposite edges any face corner is unambiguous.
    int probe = face_corners(*face)[0];
    if (la.lo == lb.lo || la.lo == lb.hi) probe = la.lo;
    if (la.hi == lb.lo || la.hi == lb.hi) probe = la.hi;
    const Vec3 pa = edge_midpoint(ea);
    const double side = dot(cross(edge_midpoint(eb) - pa, normal), corner_point(probe) - pa);
    const bool inside = (inside_mask >> probe) & 1;
    if ((side > 0.0) == inside) {
      ++forward;
    } else {
      ++backward;
    }
  }
  if (forward != 0 && backward != 0) throw InternalError("cycle segments disagree on orientation");
  if (backward != 0) std::reverse(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

namespace {

// Minimum-weight polygon triangulation that avoids diagonals lying in a cell
// face. Only reached for long cycles that cross a face twice.
std::vector<std::array<std::uint8_t, 3>> triangulate_avoiding_faces(const Cycle& c) {
  const int n = static_cast<int>(c.size());
  // In-face diagonals are expensive. When one cannot be avoided, the cell
  // on the min side of the face prefers joining parallel edges and the cell
  // on the max side prefers joining adjacent ones, so the two cells sharing
  // the face do not both draw the same diagonal.
  auto cost = [&](int i, int j) {
    if (j - i == 1 || (i == 0 && j == n - 1)) return 0;
    const int ea = c[static_cast<std::size_t>(i)];
    const int eb = c[static_cast<std::size_t>(j)];
    const auto face = shared_face(ea, eb);
    if (!face) return 0;
    const bool parallel = kEdgeTable[ea].axis == kEdgeTable[eb].axis;
    const bool preferred = parallel == (face_side(*face) == 1);
    return preferred ? 10 : 11;
  };
  std::vector<std::vector<int>> best(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  std::vector<std::vector<int>> split(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int len = 2; len < n; ++len) {
    for (int i = 0; i + len < n; ++i) {
      const int j = i + len;
      int top = std::numeric_limits<int>::max();
      for (int k = i + 1; k < j; ++k) {
        const int w = best[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                      best[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] + cost(i, k) + cost(k, j);
        if (w < top) {
          top = w;
          split[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = k;
        }
      }
      best[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = top;
    }
  }
  std::vector<std::array<std::uint8_t, 3>> tris;
  std::vector<std::pair<int, int>> todo{{0, n - 1}};
  while (!todo.empty()) {
    const auto [i, j] = todo.back();
    todo.pop_back();
    if (j - i < 2) continue;
    const int k = split[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    tris.push_back({c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(k)], c[static_cast<std::size_t>(j)]});
    todo.emplace_back(i, k);
    todo.emplace_back(k, j);
  }
  return tris;
}

}  // namespace

std::vector<std::array<std::uint8_t, 3>> triangulate_cycle(const Cycle& oriented) {
  const std::size_t n = oriented.size();
  // A diagonal joining two edges of one face would lie in that face, where
  // the neighbouring cell may draw the same diagonal. Fan from the first
  // vertex whose diagonals all leave the faces.
  for (std::size_t s = 0; s < n; ++s) {
    bool clean = true;
    for (std::size_t j = 2; j + 1 < n && clean; ++j) {
      clean = !shared_face(oriented[s], oriented[(s + j) % n]).has_value();
    }
    if (!clean) continue;
    std::vector<std::array<std::uint8_t, 3>> tris;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      tris.push_back({oriented[s], oriented[(s + i) % n], oriented[(s + i + 1) % n]});
    }
    return tris;
  }
  return triangulate_avoiding_faces(oriented);
}

namespace {

std::array<CornerPerm, 24> build_rotations() {
  std::array<CornerPerm, 24> out{};
  std::size_t count = 0;
  const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  for (int p = 0; p < 6; ++p) {
    const int parity = p < 3 ? 1 : -1;
    for (int signs = 0; signs < 8; ++signs) {
      int det = parity;
      for (int a = 0; a < 3; ++a) det *= ((signs >> a) & 1) ? -1 : 1;
      if (det != 1) continue;
      CornerPerm perm{};
      for (int c = 0; c < kCorners; ++c) {
        // Output axis a takes input axis perms[p][a], optionally mirrored.
        int target = 0;
        for (int a = 0; a < 3; ++a) {
          int bit = (c >> perms[p][a]) & 1;
          if ((signs >> a) & 1) bit ^= 1;
          target |= bit << a;
        }
        perm[c] = static_cast<std::uint8_t>(target);
      }
      out[count++] = perm;
    }
  }
  return out;
}

}  // namespace

const std::array<CornerPerm, 24>& rotations() {
  static const std::array<CornerPerm, 24> table = build_rotations();
  return table;
}

std::uint8_t permute_mask(std::uint8_t mask, const CornerPerm& perm) {
  std::uint8_t out = 0;
  for (int c = 0; c < kCorners; ++c) {
    if ((mask >> c) & 1) out |= static_cast<std::uint8_t>(1u << perm[c]);
  }
  return out;
}

int permute_edge(int edge, const CornerPerm& perm) {
  return edge_between(perm[kEdgeTable[edge].lo], perm[kEdgeTable[edge].hi]);
}

}  // namespace cube

EdgeId global_edge(CubeIndex c, int local_edge) {
  const auto& le = cube::kEdgeTable[local_edge];
  const GridPoint o = cube::corner_offset(le.lo);
  return {{c.i + o.x, c.j + o.y, c.k + o.z}, le.axis};
}

FaceId global_face(CubeIndex c, int local_face) {
  const Axis a = cube::face_axis(local_face);
  GridPoint o{c.i, c.j, c.k};
  if (cube::face_side(local_face)) {
    if (a == Axis::X) ++o.x;
    if (a == Axis::Y) ++o.y;
    if (a == Axis::Z) ++o.z;
  }
  return {o, a};
}

CubeIndex neighbor(CubeIndex c, int local_face) {
  const int step = cube::face_side(local_face) ? 1 : -1;
  switch (cube::face_axis(local_face)) {
    case Axis::X: c.i += step; break;
    case Axis::Y: c.j += step; break;
    case Axis::Z: c.k += step; break;
  }
  return c;
}

int local_edge_of(CubeIndex c, const EdgeId& e) {
  for (int n = 0; n < cube::kEdges; ++n) {
    if (global_edge(c, n) == e) return n;
  }
  return -1;
}

int local_face_of(CubeIndex c, const FaceId& f) {
  for (int n = 0; n < cube::kFaces; ++n) {
    if (global_face(c, n) == f) return n;
  }
  return -1;
}

}  // namespace edgemc
