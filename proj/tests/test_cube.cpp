#include <gtest/gtest.h>

#include <bit>
#include <set>

#include "edgemc/cube.hpp"
#include "edgemc/vec3.hpp"

using namespace edgemc;

namespace {

Vec3 corner_point(int c) {
  const GridPoint o = cube::corner_offset(c);
  return {double(o.x), double(o.y), double(o.z)};
}

std::uint8_t inside_mask(unsigned m) { return static_cast<std::uint8_t>(m); }

}  // namespace

TEST(Cube, EdgeTableJoinsUnitNeighbours) {
  for (const auto& e : cube::kEdgeTable) {
    const Vec3 d = corner_point(e.hi) - corner_point(e.lo);
    EXPECT_DOUBLE_EQ(length(d), 1.0);
    EXPECT_EQ(e.hi - e.lo, 1 << static_cast<int>(e.axis));
  }
}

TEST(Cube, LocalEdgeOrderMatchesGlobalKeyOrder) {
  const CubeIndex c{3, 5, 7};
  for (int e = 0; e + 1 < cube::kEdges; ++e) {
    EXPECT_LT(global_edge(c, e).key(), global_edge(c, e + 1).key());
  }
}

TEST(Cube, EdgeKeysRoundTrip) {
  const EdgeId e{{17, 2, 900}, Axis::Y};
  EXPECT_EQ(EdgeId::from_key(e.key()), e);
}

TEST(Cube, FaceCornersAreCyclic) {
  for (int f = 0; f < cube::kFaces; ++f) {
    const auto& c = cube::face_corners(f);
    const auto& e = cube::face_edges(f);
    for (int n = 0; n < 4; ++n) {
      EXPECT_TRUE(cube::corner_on_face(c[static_cast<std::size_t>(n)], f));
      // Face edge n joins corners n and n + 1.
      EXPECT_EQ(cube::edge_between(c[static_cast<std::size_t>(n)], c[static_cast<std::size_t>((n + 1) % 4)]),
                e[static_cast<std::size_t>(n)]);
    }
  }
}

TEST(Cube, NeighborSharesTheFace) {
  const CubeIndex c{4, 4, 4};
  for (int f = 0; f < cube::kFaces; ++f) {
    const CubeIndex n = neighbor(c, f);
    EXPECT_EQ(global_face(c, f), global_face(n, cube::opposite_face(f)));
    EXPECT_EQ(local_face_of(n, global_face(c, f)), cube::opposite_face(f));
  }
}

TEST(Cube, CrossingEdgesByBruteForce) {
  for (unsigned m = 0; m < 256; ++m) {
    std::uint16_t expect = 0;
    for (int e = 0; e < cube::kEdges; ++e) {
      const auto& le = cube::kEdgeTable[static_cast<std::size_t>(e)];
      if (((m >> le.lo) & 1) != ((m >> le.hi) & 1)) expect |= static_cast<std::uint16_t>(1u << e);
    }
    EXPECT_EQ(cube::crossing_edges(inside_mask(m)), expect);
  }
}

TEST(Cube, TraceCyclesCoversEveryCrossingEdgeOnce) {
  for (unsigned m = 0; m < 256; ++m) {
    for (unsigned sepbits = 0; sepbits < 64; sepbits += 21) {
      cube::FaceSeparation sep{};
      for (int f = 0; f < 6; ++f) sep[static_cast<std::size_t>(f)] = (sepbits >> f) & 1;
      std::uint16_t seen = 0;
      for (const auto& cyc : cube::trace_cycles(inside_mask(m), sep)) {
        EXPECT_GE(cyc.size(), 3u);
        for (std::size_t i = 0; i < cyc.size(); ++i) {
          EXPECT_FALSE((seen >> cyc[i]) & 1);
          seen |= static_cast<std::uint16_t>(1u << cyc[i]);
          EXPECT_TRUE(cube::shared_face(cyc[i], cyc[(i + 1) % cyc.size()]).has_value());
        }
      }
      EXPECT_EQ(seen, cube::crossing_edges(inside_mask(m)));
    }
  }
}

TEST(Cube, SeparationDecidesAmbiguousFace) {
  // Corners 0 and 3 inside: face z-min is ambiguous.
  const std::uint8_t m = 0x09;
  ASSERT_TRUE(cube::is_ambiguous_face(m, 4));
  cube::FaceSeparation apart{};
  apart.fill(true);
  EXPECT_EQ(cube::trace_cycles(m, apart).size(), 2u);
  cube::FaceSeparation joined = apart;
  joined[4] = false;
  const auto cycles = cube::trace_cycles(m, joined);
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(cycles[0].size(), 6u);
}

TEST(Cube, OrientedFanPointsOutward) {
  // Oracle: each triangle's normal has positive dot with (triangle centroid -
  // nearest inside corner) for the single-corner cases.
  for (int c = 0; c < cube::kCorners; ++c) {
    const std::uint8_t m = static_cast<std::uint8_t>(1u << c);
    cube::FaceSeparation sep{};
    const auto cyc = cube::orient_cycle(cube::trace_cycles(m, sep).front(), m);
    for (const auto& t : cube::triangulate_cycle(cyc)) {
      auto mid = [](int e) {
        const auto& le = cube::kEdgeTable[static_cast<std::size_t>(e)];
        return 0.5 * (corner_point(le.lo) + corner_point(le.hi));
      };
      const Vec3 a = mid(t[0]);
      const Vec3 n = cross(mid(t[1]) - a, mid(t[2]) - a);
      EXPECT_GT(dot(n, a - corner_point(c)), 0.0);
    }
  }
}

TEST(Cube, OrientationIsUnanimousOnAllCycles) {
  for (unsigned m = 1; m < 255; ++m) {
    for (bool s : {false, true}) {
      cube::FaceSeparation sep{};
      sep.fill(s);
      for (const auto& cyc : cube::trace_cycles(inside_mask(m), sep)) {
        EXPECT_NO_THROW(cube::orient_cycle(cyc, inside_mask(m)));
      }
    }
  }
}

TEST(Cube, TriangulationKeepsDiagonalsOutOfFaces) {
  // Every short cycle (at most 7 edges) admits a fan with no in-face diagonal.
  for (unsigned m = 1; m < 255; ++m) {
    cube::FaceSeparation sep{};
    sep.fill(true);
    for (const auto& cyc : cube::trace_cycles(inside_mask(m), sep)) {
      const auto oriented = cube::orient_cycle(cyc, inside_mask(m));
      const auto tris = cube::triangulate_cycle(oriented);
      EXPECT_EQ(tris.size(), oriented.size() - 2);
      std::set<std::pair<int, int>> boundary;
      for (std::size_t i = 0; i < oriented.size(); ++i) {
        int a = oriented[i];
        int b = oriented[(i + 1) % oriented.size()];
        boundary.insert({std::min(a, b), std::max(a, b)});
      }
      for (const auto& t : tris) {
        for (int i = 0; i < 3; ++i) {
          const int a = t[static_cast<std::size_t>(i)];
          const int b = t[static_cast<std::size_t>((i + 1) % 3)];
          if (boundary.count({std::min(a, b), std::max(a, b)})) continue;
          EXPECT_FALSE(cube::shared_face(a, b).has_value()) << "mask " << m;
        }
      }
    }
  }
}

TEST(Cube, RotationsAreProperAndDistinct) {
  const auto& rots = cube::rotations();
  std::set<cube::CornerPerm> distinct(rots.begin(), rots.end());
  EXPECT_EQ(distinct.size(), 24u);
  for (int c = 0; c < 8; ++c) EXPECT_EQ(rots[0][static_cast<std::size_t>(c)], c);
  for (const auto& r : rots) {
    // Edges map to edges.
    for (const auto& e : cube::kEdgeTable) {
      const int a = r[e.lo];
      const int b = r[e.hi];
      EXPECT_EQ(std::popcount(static_cast<unsigned>(a ^ b)), 1);
    }
    // Orientation kept: the image of the x, y, z unit frame is right handed.
    const Vec3 o = corner_point(r[0]);
    const Vec3 x = corner_point(r[1]) - o;
    const Vec3 y = corner_point(r[2]) - o;
    const Vec3 z = corner_point(r[4]) - o;
    EXPECT_DOUBLE_EQ(dot(cross(x, y), z), 1.0);
  }
}

TEST(Cube, PermuteEdgeFollowsCorners) {
  for (const auto& r : cube::rotations()) {
    for (int e = 0; e < cube::kEdges; ++e) {
      const auto& le = cube::kEdgeTable[static_cast<std::size_t>(e)];
      EXPECT_EQ(cube::permute_edge(e, r), cube::edge_between(r[le.lo], r[le.hi]));
    }
  }
}
