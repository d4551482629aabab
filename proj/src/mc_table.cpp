#include <algorithm>
#include <bit>

#include "edgemc/error.hpp"
#include "edgemc/mc.hpp"

namespace edgemc {

CubeCase classify_cube(std::span<const float, 8> corner_values, double threshold) {
  std::uint8_t mask = 0;
  for (int n = 0; n < cube::kCorners; ++n) {
    if (is_inside(corner_values[n], threshold)) mask |= static_cast<std::uint8_t>(1u << n);
  }
  return {mask};
}

bool is_config1(CubeCase c) {
  const int inside = std::popcount(static_cast<unsigned>(c.mask));
  return inside == 1 || inside == 7;
}

const std::array<std::uint8_t, 15>& base_case_masks() {
  // Corners: 0 (000) 1 (100) 2 (010) 3 (110) 4 (001) 5 (101) 6 (011) 7 (111).
  static constexpr std::array<std::uint8_t, 15> kBases{
      0x00,  // empty
      0x01,  // single corner
      0x03,  // edge
      0x09,  // face diagonal
      0x81,  // body diagonal
      0x07,  // three corners on a face
      0x83,  // edge plus far corner
      0x86,  // three isolated corners
      0x0F,  // full face
      0x17,  // corner with its three neighbours
      0xC3,  // two opposite parallel edges
      0x8B,  // right-handed edge path
      0x87,  // face triple plus far corner
      0x69,  // alternating tetrahedron
      0x47,  // left-handed edge path
  };
  return kBases;
}

std::vector<cube::Cycle> base_case_polygons(int base) {
  cube::FaceSeparation separate_inside;
  separate_inside.fill(true);
  return cube::trace_cycles(base_case_masks().at(static_cast<std::size_t>(base)), separate_inside);
}

namespace {

std::uint8_t complement(std::uint8_t mask) { return static_cast<std::uint8_t>(~mask); }

CaseEntry make_entry(std::uint8_t mask, int base, int rotation, bool complemented) {
  CaseEntry entry;
  entry.base = base;
  entry.rotation = rotation;
  entry.complemented = complemented;
  const auto& perm = cube::rotations()[static_cast<std::size_t>(rotation)];
  for (const auto& poly : base_case_polygons(base)) {
    cube::Cycle mapped;
    for (auto e : poly) mapped.push_back(static_cast<std::uint8_t>(cube::permute_edge(e, perm)));
    cube::Cycle oriented = cube::orient_cycle(std::move(mapped), mask);
    for (const auto& tri : cube::triangulate_cycle(oriented)) entry.triangles.push_back(tri);
    entry.polygons.push_back(std::move(oriented));
  }
  return entry;
}

}  // namespace

CaseTable::CaseTable() {
  const auto& bases = base_case_masks();
  const auto& rots = cube::rotations();
  for (int m = 0; m < 256; ++m) {
    const auto mask = static_cast<std::uint8_t>(m);
    bool done = false;
    // Plain rotations first; complementation only when no rotation fits.
    for (int pass = 0; pass < 2 && !done; ++pass) {
      const std::uint8_t target = pass == 0 ? mask : complement(mask);
      for (int b = 0; b < static_cast<int>(bases.size()) && !done; ++b) {
        for (int r = 0; r < static_cast<int>(rots.size()) && !done; ++r) {
          if (cube::permute_mask(bases[static_cast<std::size_t>(b)], rots[static_cast<std::size_t>(r)]) == target) {
            entries_[mask] = make_entry(mask, b, r, pass == 1);
            done = true;
          }
        }
      }
    }
    if (!done) throw InternalError("mask " + std::to_string(m) + " not reachable from the base cases");
  }
}

const CaseTable& CaseTable::classic() {
  static const CaseTable table;
  return table;
}

std::vector<std::vector<std::uint8_t>> mask_orbits() {
  std::array<int, 256> orbit_of{};
  orbit_of.fill(-1);
  std::vector<std::vector<std::uint8_t>> orbits;
  for (int start = 0; start < 256; ++start) {
    if (orbit_of[start] >= 0) continue;
    const int id = static_cast<int>(orbits.size());
    std::vector<std::uint8_t> members;
    std::vector<std::uint8_t> frontier{static_cast<std::uint8_t>(start)};
    orbit_of[start] = id;
    while (!frontier.empty()) {
      const std::uint8_t m = frontier.back();
      frontier.pop_back();
      members.push_back(m);
      auto visit = [&](std::uint8_t n) {
        if (orbit_of[n] < 0) {
          orbit_of[n] = id;
          frontier.push_back(n);
        }
      };
      visit(complement(m));
      for (const auto& perm : cube::rotations()) visit(cube::permute_mask(m, perm));
    }
    std::sort(members.begin(), members.end());
    orbits.push_back(std::move(members));
  }
  return orbits;
}

bool is_ambiguous_case(CubeCase c) {
  for (int f = 0; f < cube::kFaces; ++f) {
    if (cube::is_ambiguous_face(c.mask, f)) return true;
  }
  const auto& entry = CaseTable::classic()[c.mask];
  return entry.base == 4;
}

}  // namespace edgemc
