#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include "edgemc/error.hpp"
#include "edgemc/volume.hpp"
#include "support.hpp"

using namespace edgemc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "edgemc_volume_tests";
  fs::create_directories(dir);
  return dir / name;
}

Volume ramp(Dims d) {
  std::vector<float> vals(d.count());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = static_cast<float>(i % 251);
  return Volume(d, vals);
}

}  // namespace

TEST(Volume, RejectsBadShapes) {
  EXPECT_THROW(Volume({1, 4, 4}, std::vector<float>(16)), DataError);
  EXPECT_THROW(Volume({4, 4, 4}, std::vector<float>(63)), DataError);
  EXPECT_THROW(Volume({2, 2, 2}, std::vector<float>(8), Spacing{1, 0, 1}), DataError);
}

TEST(Volume, IndexingIsXFastest) {
  const Volume v = ramp({3, 4, 5});
  EXPECT_EQ(v.index(1, 0, 0), 1u);
  EXPECT_EQ(v.index(0, 1, 0), 3u);
  EXPECT_EQ(v.index(0, 0, 1), 12u);
  EXPECT_EQ(v.cube_dims(), (Dims{2, 3, 4}));
  EXPECT_TRUE(v.contains({1, 2, 3}));
  EXPECT_FALSE(v.contains({2, 0, 0}));
}

TEST(Volume, CornerOrder) {
  const Volume v = ramp({3, 3, 3});
  const auto c = cube_corners(v, {1, 1, 1});
  for (int n = 0; n < 8; ++n) {
    const GridPoint p{1 + (n & 1), 1 + ((n >> 1) & 1), 1 + ((n >> 2) & 1)};
    EXPECT_EQ(c[static_cast<std::size_t>(n)].value, v.at(p));
    EXPECT_EQ(corner_values(v, {1, 1, 1})[static_cast<std::size_t>(n)], v.at(p));
  }
  EXPECT_THROW(cube_corners(v, {2, 0, 0}), std::out_of_range);
}

TEST(Volume, HullPlanes) {
  const Volume v = ramp({4, 5, 6});
  EXPECT_EQ(v.hull_planes({0, 0, 0}), 0x15);
  EXPECT_EQ(v.hull_planes({3, 4, 5}), 0x2A);
  EXPECT_EQ(v.hull_planes({1, 2, 3}), 0);
  EXPECT_EQ(v.hull_planes({1, 4, 0}), 0x18);
}

TEST(Volume, GradientOfALinearField) {
  Dims d{5, 5, 5};
  std::vector<float> vals(d.count());
  for (int z = 0; z < 5; ++z)
    for (int y = 0; y < 5; ++y)
      for (int x = 0; x < 5; ++x) vals[static_cast<std::size_t>((z * 5 + y) * 5 + x)] = 2.0f * x - 3.0f * y + z;
  const Volume v(d, vals, Spacing{0.5, 1.0, 2.0});
  for (GridPoint p : {GridPoint{2, 2, 2}, GridPoint{0, 0, 0}, GridPoint{4, 4, 4}}) {
    const Vec3 g = v.gradient(p);
    EXPECT_NEAR(g.x, 4.0, 1e-6);
    EXPECT_NEAR(g.y, -3.0, 1e-6);
    EXPECT_NEAR(g.z, 0.5, 1e-6);
  }
}

TEST(Generators, ExampleShape) {
  const Volume v = mc_example(100.0);
  EXPECT_EQ(v.dims(), (Dims{10, 10, 10}));
  std::size_t nonzero = 0;
  for (int z = 0; z < 10; ++z) {
    for (int y = 0; y < 10; ++y) {
      for (int x = 0; x < 10; ++x) {
        const float a = v.at(x, y, z);
        EXPECT_TRUE(a == 0.0f || a == 100.0f);
        if (a != 0.0f) {
          ++nonzero;
          EXPECT_GE(z, 4);
          EXPECT_LE(z, 6);
        }
      }
    }
  }
  EXPECT_GT(nonzero, 0u);
  EXPECT_EQ(mc_example(7.0).at(0, 0, 5) == 7.0f, v.at(0, 0, 5) == 100.0f);
}

TEST(Generators, SphereAndShell) {
  const Volume s = gen_sphere({21, 21, 21}, {10, 10, 10}, 5.0, 1.0f, 0.0f);
  EXPECT_EQ(s.at(10, 10, 10), 1.0f);
  EXPECT_EQ(s.at(15, 10, 10), 1.0f);
  EXPECT_EQ(s.at(16, 10, 10), 0.0f);
  const Volume sh = gen_shell({21, 21, 21}, {10, 10, 10}, 8.0, 4.0, 1.0f, 0.0f);
  EXPECT_EQ(sh.at(10, 10, 10), 0.0f);
  EXPECT_EQ(sh.at(16, 10, 10), 1.0f);
  EXPECT_EQ(sh.at(19, 10, 10), 0.0f);
  EXPECT_THROW(gen_shell({8, 8, 8}, {4, 4, 4}, 2.0, 3.0, 1.0f, 0.0f), DataError);
}

TEST(Generators, TwoSpheresMustBeApart) {
  EXPECT_NO_THROW(gen_two_spheres({30, 10, 10}, {5, 5, 5}, 3, {20, 5, 5}, 3, 1.0f, 0.0f));
  EXPECT_THROW(gen_two_spheres({30, 10, 10}, {5, 5, 5}, 3, {9, 5, 5}, 3, 1.0f, 0.0f), DataError);
}

TEST(Raw, RoundTripAllKinds) {
  const Volume v = ramp({5, 4, 3});
  for (ValueKind k : {ValueKind::U8, ValueKind::U16, ValueKind::F32}) {
    for (Endian e : {Endian::Little, Endian::Big}) {
      const fs::path p = scratch("ramp_" + to_string(k) + to_string(e) + ".raw");
      write_raw(v, p, k, e);
      EXPECT_EQ(fs::file_size(p), v.dims().count() * value_width(k));
      const Volume back = load_raw(p, v.dims(), k, e);
      EXPECT_TRUE(std::equal(back.values().begin(), back.values().end(), v.values().begin()));
    }
  }
}

TEST(Raw, BigEndianByteOrder) {
  const Volume v({2, 2, 2}, {258, 0, 0, 0, 0, 0, 0, 1});
  const fs::path p = scratch("be16.raw");
  write_raw(v, p, ValueKind::U16, Endian::Big);
  std::ifstream in(p, std::ios::binary);
  unsigned char b[2];
  in.read(reinterpret_cast<char*>(b), 2);
  EXPECT_EQ(b[0], 1);
  EXPECT_EQ(b[1], 2);
}

TEST(Raw, Errors) {
  const Volume v = ramp({4, 4, 4});
  const fs::path p = scratch("short.raw");
  write_raw(v, p, ValueKind::U8);
  EXPECT_THROW(load_raw(p, {4, 4, 5}, ValueKind::U8), DataError);
  EXPECT_THROW(load_raw(scratch("nope.raw"), {4, 4, 4}, ValueKind::U8), DataError);
  const Volume frac({2, 2, 2}, {0.5f, 0, 0, 0, 0, 0, 0, 0});
  EXPECT_THROW(write_raw(frac, scratch("frac.raw"), ValueKind::U8), DataError);
  EXPECT_THROW(parse_value_kind("i32"), DataError);
  EXPECT_THROW(parse_endian("middle"), DataError);
}

TEST(Descriptor, RoundTrip) {
  const Volume v = fixtures::random_volume(4, {6, 5, 4}, false);
  const fs::path desc = save_described(v, scratch("noise"), ValueKind::F32, Endian::Big);
  const RawDescriptor d = read_descriptor(desc);
  EXPECT_EQ(d.dims, v.dims());
  EXPECT_EQ(d.kind, ValueKind::F32);
  EXPECT_EQ(d.endian, Endian::Big);
  const Volume back = load_described(desc);
  EXPECT_TRUE(std::equal(back.values().begin(), back.values().end(), v.values().begin()));
}

TEST(Descriptor, MissingKeys) {
  const fs::path p = scratch("bad.json");
  std::ofstream(p) << R"({"data": "x.raw", "type": "u8"})";
  EXPECT_THROW(read_descriptor(p), DataError);
  std::ofstream(p) << "not json";
  EXPECT_THROW(read_descriptor(p), DataError);
}

TEST(Slices, PngStackRoundTrip) {
  const Volume v = ramp({7, 5, 3});
  for (int depth : {8, 16}) {
    std::vector<fs::path> paths;
    for (int z = 0; z < 3; ++z) {
      paths.push_back(scratch("slice" + std::to_string(depth) + "_" + std::to_string(z) + ".png"));
      write_png_slice(v, z, paths.back(), depth);
    }
    const Volume back = load_slices(paths);
    EXPECT_EQ(back.dims(), v.dims());
    EXPECT_TRUE(std::equal(back.values().begin(), back.values().end(), v.values().begin()));
  }
}

TEST(Slices, MismatchedSizes) {
  std::vector<fs::path> paths{scratch("a.png"), scratch("b.png")};
  write_png_slice(ramp({4, 4, 2}), 0, paths[0]);
  write_png_slice(ramp({5, 4, 2}), 0, paths[1]);
  EXPECT_THROW(load_slices(paths), DataError);
  std::ofstream(scratch("junk.png")) << "nope";
  const std::vector<fs::path> junk{scratch("junk.png"), scratch("junk.png")};
  EXPECT_THROW(load_slices(junk), DataError);
}

TEST(Slices, RawPlanes) {
  const Volume v = ramp({4, 3, 2});
  std::vector<fs::path> paths;
  for (int z = 0; z < 2; ++z) {
    std::vector<float> plane(v.values().begin() + z * 12, v.values().begin() + (z + 1) * 12);
    paths.push_back(scratch("plane" + std::to_string(z) + ".raw"));
    // Write through a 2-plane volume and keep the first plane's bytes.
    std::vector<float> twice = plane;
    twice.insert(twice.end(), plane.begin(), plane.end());
    write_raw(Volume({4, 3, 2}, twice), paths.back(), ValueKind::U16);
    fs::resize_file(paths.back(), 24);
  }
  const Volume back = load_raw_slices(paths, 4, 3, ValueKind::U16);
  EXPECT_TRUE(std::equal(back.values().begin(), back.values().end(), v.values().begin()));
}
