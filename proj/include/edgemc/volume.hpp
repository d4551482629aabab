#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "edgemc/cube.hpp"
#include "edgemc/vec3.hpp"

namespace edgemc {

struct Dims {
  int nx = 0;
  int ny = 0;
  int nz = 0;
  [[nodiscard]] std::size_t count() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz);
  }
  friend bool operator==(const Dims&, const Dims&) = default;
};

struct Spacing {
  double sx = 1.0;
  double sy = 1.0;
  double sz = 1.0;
  friend bool operator==(const Spacing&, const Spacing&) = default;
};

/// Regular grid of gray values, x fastest and z slowest. Immutable once built.
class Volume {
 public:
  /// Throws DataError unless every dimension is >= 2, the value count
  /// matches, and all spacing components are positive.
  Volume(Dims dims, std::vector<float> values, Spacing spacing = {});

  [[nodiscard]] const Dims& dims() const { return dims_; }
  [[nodiscard]] const Spacing& spacing() const { return spacing_; }
  [[nodiscard]] std::span<const float> values() const { return values_; }

  [[nodiscard]] std::size_t index(int x, int y, int z) const {
    return (static_cast<std::size_t>(z) * static_cast<std::size_t>(dims_.ny) + static_cast<std::size_t>(y)) *
               static_cast<std::size_t>(dims_.nx) +
           static_cast<std::size_t>(x);
  }
  [[nodiscard]] float at(int x, int y, int z) const { return values_[index(x, y, z)]; }
  [[nodiscard]] float at(GridPoint p) const { return at(p.x, p.y, p.z); }

  [[nodiscard]] Vec3 position(GridPoint p) const {
    return {p.x * spacing_.sx, p.y * spacing_.sy, p.z * spacing_.sz};
  }

  /// Central differences in physical units, one-sided on the hull.
  [[nodiscard]] Vec3 gradient(GridPoint p) const;

  [[nodiscard]] Dims cube_dims() const { return {dims_.nx - 1, dims_.ny - 1, dims_.nz - 1}; }
  [[nodiscard]] bool contains(CubeIndex c) const {
    return c.i >= 0 && c.j >= 0 && c.k >= 0 && c.i < dims_.nx - 1 && c.j < dims_.ny - 1 && c.k < dims_.nz - 1;
  }
  [[nodiscard]] std::size_t cube_count() const { return cube_dims().count(); }
  [[nodiscard]] std::size_t cube_linear(CubeIndex c) const {
    const Dims cd = cube_dims();
    return (static_cast<std::size_t>(c.k) * static_cast<std::size_t>(cd.ny) + static_cast<std::size_t>(c.j)) *
               static_cast<std::size_t>(cd.nx) +
           static_cast<std::size_t>(c.i);
  }

  /// Bitmask of hull planes the grid point lies on:
  /// bit 0 x=0, bit 1 x=max, bit 2 y=0, bit 3 y=max, bit 4 z=0, bit 5 z=max.
  [[nodiscard]] std::uint8_t hull_planes(GridPoint p) const;

 private:
  Dims dims_;
  Spacing spacing_;
  std::vector<float> values_;
};

struct CornerSample {
  Vec3 position;
  float value = 0.0f;
};

/// The eight corners of a cell in CornerId order. Throws std::out_of_range.
std::array<CornerSample, 8> cube_corners(const Volume& v, CubeIndex c);

/// Gray values of the eight corners in CornerId order (no bounds check).
std::array<float, 8> corner_values(const Volume& v, CubeIndex c);

// Test volumes.

/// The 10x10x10 ambiguity fixture: zero everywhere except z-layers 4, 5, 6
/// (0-based), which carry a one-cell diagonal (layer 4) and a thick diagonal
/// band (layers 5 and 6) of value `a`.
Volume mc_example(double a = 100.0);

/// `inside` where |p - center| <= radius (voxel units), `outside` elsewhere.
Volume gen_sphere(Dims dims, Vec3 center, double radius, float inside, float outside);

/// Two spheres with disjoint supports. Throws DataError if they overlap.
Volume gen_two_spheres(Dims dims, Vec3 center_a, double radius_a, Vec3 center_b, double radius_b, float inside,
                       float outside);

/// A ball of `inside` with a concentric cavity of `outside` values:
/// inner_radius < |p - center| <= outer_radius is inside.
Volume gen_shell(Dims dims, Vec3 center, double outer_radius, double inner_radius, float inside, float outside);

// File ingestion.

enum class ValueKind { U8, U16, F32 };
enum class Endian { Little, Big };

std::size_t value_width(ValueKind kind);
std::string to_string(ValueKind kind);
ValueKind parse_value_kind(const std::string& s);
std::string to_string(Endian e);
Endian parse_endian(const std::string& s);

/// Reads a headerless x-fastest binary grid. Throws DataError on size
/// mismatch or unreadable file.
Volume load_raw(const std::filesystem::path& path, Dims dims, ValueKind kind, Endian endian = Endian::Little,
                Spacing spacing = {});

/// Writes the values as `kind`. Throws DataError when a value is not exactly
/// representable in that kind or the file cannot be written.
void write_raw(const Volume& v, const std::filesystem::path& path, ValueKind kind, Endian endian = Endian::Little);

/// Sidecar JSON describing a raw blob. Keys: "data" (path relative to the
/// descriptor), "dims" [nx, ny, nz], "type" ("u8" | "u16" | "f32"),
/// "endian" ("little" | "big"), "spacing" [sx, sy, sz].
struct RawDescriptor {
  std::filesystem::path data;
  Dims dims;
  ValueKind kind = ValueKind::U8;
  Endian endian = Endian::Little;
  Spacing spacing;
};

RawDescriptor read_descriptor(const std::filesystem::path& path);
void write_descriptor(const RawDescriptor& d, const std::filesystem::path& path);

/// Loads the blob a descriptor points to.
Volume load_described(const std::filesystem::path& descriptor_path);

/// Writes `<stem>.raw` and `<stem>.json`; returns the descriptor path.
std::filesystem::path save_described(const Volume& v, const std::filesystem::path& stem, ValueKind kind,
                                     Endian endian = Endian::Little);

/// Stacks 8- or 16-bit grayscale PNG slices; slice s becomes z-plane s.
Volume load_slices(std::span<const std::filesystem::path> paths, Spacing spacing = {});

/// Stacks headerless raw planes of width x height values.
Volume load_raw_slices(std::span<const std::filesystem::path> paths, int width, int height, ValueKind kind,
                       Endian endian = Endian::Little, Spacing spacing = {});

/// Writes one z-plane as a grayscale PNG (8 or 16 bit).
void write_png_slice(const Volume& v, int z, const std::filesystem::path& path, int bit_depth = 8);

}  // namespace edgemc
