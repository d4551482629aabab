#include "edgemc/volume.hpp"

#include <stdexcept>
#include <string>

#include "edgemc/error.hpp"

namespace edgemc {

Volume::Volume(Dims dims, std::vector<float> values, Spacing spacing)
    : dims_(dims), spacing_(spacing), values_(std::move(values)) {
  if (dims_.nx < 2 || dims_.ny < 2 || dims_.nz < 2) {
    throw DataError("volume needs at least 2 grid points per axis, got " + std::to_string(dims_.nx) + "x" +
                    std::to_string(dims_.ny) + "x" + std::to_string(dims_.nz));
  }
  if (values_.size() != dims_.count()) {
    throw DataError("volume value count " + std::to_string(values_.size()) + " does not match dims (" +
                    std::to_string(dims_.count()) + ")");
  }
  if (!(spacing_.sx > 0.0 && spacing_.sy > 0.0 && spacing_.sz > 0.0)) {
    throw DataError("volume spacing must be positive");
  }
}

Vec3 Volume::gradient(GridPoint p) const {
  auto diff = [&](int lo_x, int lo_y, int lo_z, int hi_x, int hi_y, int hi_z, double step) {
    const double span = step * ((hi_x - lo_x) + (hi_y - lo_y) + (hi_z - lo_z));
    return (static_cast<double>(at(hi_x, hi_y, hi_z)) - static_cast<double>(at(lo_x, lo_y, lo_z))) / span;
  };
  const int x0 = p.x > 0 ? p.x - 1 : p.x;
  const int x1 = p.x < dims_.nx - 1 ? p.x + 1 : p.x;
  const int y0 = p.y > 0 ? p.y - 1 : p.y;
  const int y1 = p.y < dims_.ny - 1 ? p.y + 1 : p.y;
  const int z0 = p.z > 0 ? p.z - 1 : p.z;
  const int z1 = p.z < dims_.nz - 1 ? p.z + 1 : p.z;
  return {diff(x0, p.y, p.z, x1, p.y, p.z, spacing_.sx), diff(p.x, y0, p.z, p.x, y1, p.z, spacing_.sy),
          diff(p.x, p.y, z0, p.x, p.y, z1, spacing_.sz)};
}

std::uint8_t Volume::hull_planes(GridPoint p) const {
  std::uint8_t bits = 0;
  if (p.x == 0) bits |= 1u << 0;
  if (p.x == dims_.nx - 1) bits |= 1u << 1;
  if (p.y == 0) bits |= 1u << 2;
  if (p.y == dims_.ny - 1) bits |= 1u << 3;
  if (p.z == 0) bits |= 1u << 4;
  if (p.z == dims_.nz - 1) bits |= 1u << 5;
  return bits;
}

std::array<CornerSample, 8> cube_corners(const Volume& v, CubeIndex c) {
  if (!v.contains(c)) {
    throw std::out_of_range("cube (" + std::to_string(c.i) + "," + std::to_string(c.j) + "," + std::to_string(c.k) +
                            ") outside the grid");
  }
  std::array<CornerSample, 8> out{};
  for (int n = 0; n < cube::kCorners; ++n) {
    const GridPoint o = cube::corner_offset(n);
    const GridPoint p{c.i + o.x, c.j + o.y, c.k + o.z};
    out[n] = {v.position(p), v.at(p)};
  }
  return out;
}

std::array<float, 8> corner_values(const Volume& v, CubeIndex c) {
  std::array<float, 8> out{};
  for (int n = 0; n < cube::kCorners; ++n) {
    const GridPoint o = cube::corner_offset(n);
    out[n] = v.at(c.i + o.x, c.j + o.y, c.k + o.z);
  }
  return out;
}

namespace {

// Rows are y, columns x; '#' marks a cell of value a.
constexpr const char* kSingleDiagonal[10] = {
    "..........", "..........", "..#.......", "...#......", "....#.....",
    ".....#....", "......#...", ".......#..", "........#.", "..........",
};

constexpr const char* kThickDiagonal[10] = {
    "..........", "..........", "..##......", "..###.....", "...###....",
    "....###...", ".....###..", "......###.", ".......##.", "........#.",
};

void stamp(std::vector<float>& values, const char* const (&rows)[10], int z, float a) {
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      if (rows[y][x] == '#') values[(static_cast<std::size_t>(z) * 10 + y) * 10 + x] = a;
    }
  }
}

template <typename F>
Volume fill(Dims dims, F&& value_at) {
  std::vector<float> values(dims.count());
  std::size_t n = 0;
  for (int z = 0; z < dims.nz; ++z) {
    for (int y = 0; y < dims.ny; ++y) {
      for (int x = 0; x < dims.nx; ++x) values[n++] = value_at(Vec3{double(x), double(y), double(z)});
    }
  }
  return Volume(dims, std::move(values));
}

void check_radius(double r) {
  if (!(r > 0.0)) throw DataError("sphere radius must be positive");
}

void check_fits(Dims dims, Vec3 c, double r) {
  const bool fits = c.x - r >= 0.0 && c.y - r >= 0.0 && c.z - r >= 0.0 && c.x + r <= dims.nx - 1 &&
                    c.y + r <= dims.ny - 1 && c.z + r <= dims.nz - 1;
  if (!fits) throw DataError("sphere does not fit inside the grid");
}

}  // namespace

Volume mc_example(double a) {
  if (!(a > 0.0)) throw DataError("mc_example requires a > 0");
  const Dims dims{10, 10, 10};
  std::vector<float> values(dims.count(), 0.0f);
  const auto av = static_cast<float>(a);
  stamp(values, kSingleDiagonal, 4, av);
  stamp(values, kThickDiagonal, 5, av);
  stamp(values, kThickDiagonal, 6, av);
  return Volume(dims, std::move(values));
}

Volume gen_sphere(Dims dims, Vec3 center, double radius, float inside, float outside) {
  check_radius(radius);
  check_fits(dims, center, radius);
  return fill(dims, [&](Vec3 p) { return length(p - center) <= radius ? inside : outside; });
}

Volume gen_two_spheres(Dims dims, Vec3 center_a, double radius_a, Vec3 center_b, double radius_b, float inside,
                       float outside) {
  check_radius(radius_a);
  check_radius(radius_b);
  check_fits(dims, center_a, radius_a);
  check_fits(dims, center_b, radius_b);
  if (length(center_a - center_b) <= radius_a + radius_b) throw DataError("two_spheres: supports overlap");
  return fill(dims, [&](Vec3 p) {
    return (length(p - center_a) <= radius_a || length(p - center_b) <= radius_b) ? inside : outside;
  });
}

Volume gen_shell(Dims dims, Vec3 center, double outer_radius, double inner_radius, float inside, float outside) {
  check_radius(outer_radius);
  check_radius(inner_radius);
  if (inner_radius >= outer_radius) throw DataError("shell: inner radius must be below outer radius");
  check_fits(dims, center, outer_radius);
  return fill(dims, [&](Vec3 p) {
    const double d = length(p - center);
    return (d <= outer_radius && d > inner_radius) ? inside : outside;
  });
}

}  // namespace edgemc
