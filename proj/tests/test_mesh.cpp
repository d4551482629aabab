#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "edgemc/error.hpp"
#include "edgemc/mc.hpp"
#include "edgemc/mesh.hpp"
#include "support.hpp"

using namespace edgemc;

namespace {

TriangleMesh tetrahedron() {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  m.triangles = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
  return m;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("edgemc_mesh_" + name);
}

}  // namespace

TEST(Topology, SingleTriangleIsAllBoundary) {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.triangles = {{0, 1, 2}};
  const TopologyReport t = topology_report(m);
  EXPECT_EQ(t.edge_count, 3u);
  EXPECT_EQ(t.boundary_edges, 3u);
  EXPECT_EQ(t.manifold_edges, 0u);
  EXPECT_FALSE(t.watertight);
}

TEST(Topology, TetrahedronIsClosed) {
  const TopologyReport t = topology_report(tetrahedron());
  EXPECT_EQ(t.edge_count, 6u);
  EXPECT_EQ(t.manifold_edges, 6u);
  EXPECT_EQ(t.misoriented_edges, 0u);
  EXPECT_EQ(t.component_count, 1u);
  EXPECT_TRUE(t.watertight);
}

TEST(Topology, FlippedFaceIsMisoriented) {
  TriangleMesh m = tetrahedron();
  std::swap(m.triangles[3][0], m.triangles[3][1]);
  const TopologyReport t = topology_report(m);
  EXPECT_EQ(t.misoriented_edges, 3u);
  EXPECT_TRUE(t.watertight) << "orientation is reported separately";
}

TEST(Topology, ThreeTrianglesOnOneEdge) {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}};
  m.triangles = {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}};
  const TopologyReport t = topology_report(m);
  EXPECT_EQ(t.nonmanifold_edges, 1u);
  EXPECT_FALSE(t.watertight);
}

TEST(Topology, TalliesAddUp) {
  for (unsigned seed = 0; seed < 30; ++seed) {
    const Volume v = fixtures::random_volume(seed, {6, 6, 6}, false);
    const TriangleMesh m = extract_mc(v, 50.0);
    const TopologyReport t = topology_report(m);
    EXPECT_EQ(t.boundary_edges + t.manifold_edges + t.nonmanifold_edges, t.edge_count);
    const auto brute = fixtures::edge_incidence(m);
    EXPECT_EQ(brute.size(), t.edge_count);
    std::size_t ones = 0;
    for (const auto& [e, n] : brute) ones += n == 1;
    EXPECT_EQ(ones, t.boundary_edges);
  }
}

TEST(Topology, HullEdgesNeedASharedPlane) {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.hull_planes = {0x01, 0x01, 0x02};
  m.triangles = {{0, 1, 2}};
  const TopologyReport t = topology_report(m);
  EXPECT_EQ(t.hull_boundary_edges, 1u);
  EXPECT_FALSE(t.watertight);
}

TEST(Components, SeparatedPieces) {
  TriangleMesh m = tetrahedron();
  const TriangleMesh t = tetrahedron();
  for (const auto& p : t.vertices) m.vertices.push_back({p.x + 5, p.y, p.z});
  for (auto tri : t.triangles) m.triangles.push_back({tri[0] + 4, tri[1] + 4, tri[2] + 4});
  EXPECT_EQ(count_components(m), 2u);
  const auto parts = connected_components(m);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].triangles.size(), 4u);
  EXPECT_DOUBLE_EQ(parts[1].vertices[0].x, 5.0);
  EXPECT_EQ(count_components(TriangleMesh{}), 0u);
}

TEST(Weld, MergesExactDuplicates) {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  m.triangles = {{0, 1, 2}, {3, 5, 4}};
  const TriangleMesh w = weld(m);
  EXPECT_EQ(w.vertices.size(), 4u);
  EXPECT_EQ(w.triangles.size(), 2u);
  EXPECT_EQ(topology_report(w).manifold_edges, 1u);
}

TEST(Weld, EpsilonDropsCollapsedTriangles) {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1e-9, 0, 0}, {0, 1, 0}, {1, 0, 0}};
  m.triangles = {{0, 1, 2}, {0, 3, 2}};
  const TriangleMesh w = weld(m, 1e-6);
  EXPECT_EQ(w.vertices.size(), 3u);
  EXPECT_EQ(w.triangles.size(), 1u);
}

TEST(Stats, AreaAndBox) {
  const MeshStats s = area_and_count_stats(tetrahedron());
  EXPECT_EQ(s.triangle_count, 4u);
  EXPECT_NEAR(s.total_area, 1.5 + std::sqrt(3.0) / 2.0, 1e-12);
  EXPECT_FALSE(s.bbox.empty);
  EXPECT_DOUBLE_EQ(s.bbox.max.z, 1.0);
  EXPECT_TRUE(area_and_count_stats(TriangleMesh{}).bbox.empty);
}

TEST(Validate, RejectsBadMeshes) {
  TriangleMesh m = tetrahedron();
  EXPECT_NO_THROW(validate(m));
  m.triangles.push_back({0, 1, 9});
  EXPECT_THROW(validate(m), DataError);
  m = tetrahedron();
  m.triangles.push_back({1, 1, 2});
  EXPECT_THROW(validate(m), DataError);
  m = tetrahedron();
  m.normals.resize(2);
  EXPECT_THROW(validate(m), DataError);
}

TEST(Obj, RoundTripIsExact) {
  const TriangleMesh m = extract_mc(mc_example(100.0), 50.0);
  const TriangleMesh back = parse_obj(to_obj(m));
  ASSERT_EQ(back.vertices.size(), m.vertices.size());
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    EXPECT_EQ(back.vertices[i].x, m.vertices[i].x);
    EXPECT_EQ(back.vertices[i].y, m.vertices[i].y);
    EXPECT_EQ(back.vertices[i].z, m.vertices[i].z);
  }
  EXPECT_EQ(back.triangles, m.triangles);
  EXPECT_EQ(back.normals.size(), m.normals.size());
}

TEST(Obj, FileRoundTrip) {
  const auto path = temp_path("tet.obj");
  write_obj(tetrahedron(), path);
  const TriangleMesh back = read_obj(path);
  EXPECT_EQ(back.triangles, tetrahedron().triangles);
  std::filesystem::remove(path);
}

TEST(Obj, FaceForms) {
  const TriangleMesh m = parse_obj(
      "# comment\n"
      "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0\n"
      "vt 0 0\nvn 0 0 1\n"
      "f 1/1 2/1 3/1\n"
      "f 2//1 4//1 3//1\n"
      "f -4/1/1 -3/1/1 -1/1/1\n");
  ASSERT_EQ(m.triangles.size(), 3u);
  EXPECT_EQ(m.triangles[2], (std::array<std::uint32_t, 3>{0, 1, 3}));
}

TEST(Obj, QuadsAreFanned) {
  const TriangleMesh m = parse_obj("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
  EXPECT_EQ(m.triangles.size(), 2u);
}

TEST(Obj, Malformed) {
  EXPECT_THROW(parse_obj("v 0 0\n"), DataError);
  EXPECT_THROW(parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 7\n"), DataError);
  EXPECT_THROW(parse_obj("v 0 0 0\nf 1 1\n"), DataError);
  EXPECT_THROW(parse_obj("v a b c\n"), DataError);
  EXPECT_THROW(read_obj(temp_path("missing.obj")), DataError);
}

TEST(Stl, SizeMatchesTriangleCount) {
  const TriangleMesh m = extract_mc(mc_example(100.0), 50.0);
  const auto path = temp_path("example.stl");
  write_stl_binary(m, path);
  EXPECT_EQ(std::filesystem::file_size(path), 84u + 50u * m.triangles.size());
  std::ifstream in(path, std::ios::binary);
  in.seekg(80);
  std::uint32_t count = 0;
  in.read(reinterpret_cast<char*>(&count), 4);
  EXPECT_EQ(count, m.triangles.size());
  std::filesystem::remove(path);
}
