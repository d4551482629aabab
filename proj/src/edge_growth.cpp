#include "edgemc/edge_growth.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <string>

#include "edgemc/edge_vertex.hpp"
#include "edgemc/error.hpp"
#include "edgemc/mc.hpp"

namespace edgemc {

namespace {

constexpr std::uint8_t kTop = 4;

std::uint16_t edge_bits(const cube::Cycle& cycle) {
  std::uint16_t bits = 0;
  for (auto e : cycle) bits |= static_cast<std::uint16_t>(1u << e);
  return bits;
}

bool has_segment(const cube::Cycle& cycle, int a, int b) {
  const std::size_t n = cycle.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int x = cycle[i];
    const int y = cycle[(i + 1) % n];
    if ((x == a && y == b) || (x == b && y == a)) return true;
  }
  return false;
}

std::string describe(CubeIndex c) {
  return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + "," + std::to_string(c.k) + ")";
}

// Same-side corners reachable from `seed` along cell edges.
std::uint8_t close_over_edges(std::uint8_t seed, std::uint8_t side) {
  std::uint8_t set = seed;
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& le : cube::kEdgeTable) {
      const bool lo = (set >> le.lo) & 1;
      const bool hi = (set >> le.hi) & 1;
      if (lo == hi) continue;
      const int other = lo ? le.hi : le.lo;
      if ((side >> other) & 1) {
        set |= static_cast<std::uint8_t>(1u << other);
        grew = true;
      }
    }
  }
  return set;
}

ConfigId classify_config(GrowthEdgeKind kind, int corners, bool complete) {
  if (kind == GrowthEdgeKind::QuadrangleEdge) {
    if (corners < 2 || corners > 4) throw InternalError("quadrangle patch with " + std::to_string(corners) + " corners");
    return 12 + 2 * (corners - 2) + (complete ? 1 : 0);
  }
  switch (corners) {
    case 1: return 1;
    case 2: return complete ? 4 : 2;
    case 3: return complete ? 5 : 3;
    case 4: return complete ? 7 : 6;
    case 5: return complete ? 8 : 9;
    case 6: return complete ? 10 : 9;
    case 7: return complete ? 11 : 9;
    default: throw InternalError("triangle patch with " + std::to_string(corners) + " corners");
  }
}

}  // namespace

int middle_layer(const Volume& v) { return v.cube_dims().nz / 2; }

LocalGrowthEdge localize(const GrowthEdge& e) {
  LocalGrowthEdge le;
  le.face = local_face_of(e.target_cube, e.shared_face);
  le.edge_I = local_edge_of(e.target_cube, e.endpoint_I.source);
  le.edge_II = local_edge_of(e.target_cube, e.endpoint_II.source);
  if (le.face < 0) throw MalformedEdgeError("shared face is not on the target cube");
  if (le.edge_I < 0 || le.edge_II < 0 || le.edge_I == le.edge_II || !cube::edge_on_face(le.edge_I, le.face) ||
      !cube::edge_on_face(le.edge_II, le.face)) {
    throw MalformedEdgeError("growth edge endpoints are not on two edges of the shared face");
  }
  const auto& a = cube::kEdgeTable[static_cast<std::size_t>(le.edge_I)];
  const auto& b = cube::kEdgeTable[static_cast<std::size_t>(le.edge_II)];
  const bool adjacent = a.lo == b.lo || a.lo == b.hi || a.hi == b.lo || a.hi == b.hi;
  le.kind = adjacent ? GrowthEdgeKind::TriangleEdge : GrowthEdgeKind::QuadrangleEdge;
  return le;
}

GrowthEdgeKind classify_growth_edge(const GrowthEdge& e) { return localize(e).kind; }

const char* to_string(VertexRole r) {
  switch (r) {
    case VertexRole::SS: return "SS";
    case VertexRole::SS_I: return "SS_I";
    case VertexRole::SS_II: return "SS_II";
    case VertexRole::SS_I_II: return "SS_I_II";
    case VertexRole::S_S: return "S_S";
    case VertexRole::S_S_I: return "S_S_I";
    case VertexRole::S_S_II: return "S_S_II";
    case VertexRole::S_S_I_II: return "S_S_I_II";
    case VertexRole::SS_UP_I: return "SS_UP_I";
    case VertexRole::SS_UP_II: return "SS_UP_II";
    case VertexRole::S_S_UP_I: return "S_S_UP_I";
    case VertexRole::S_S_UP_II: return "S_S_UP_II";
  }
  return "?";
}

std::uint8_t reference_point(std::span<const float, 8> hu, double threshold, const LocalGrowthEdge& le) {
  std::uint8_t inside = 0;
  for (int n = 0; n < cube::kCorners; ++n) {
    if (is_inside(hu[static_cast<std::size_t>(n)], threshold)) inside |= static_cast<std::uint8_t>(1u << n);
  }
  const auto outside = static_cast<std::uint8_t>(~inside);
  const auto& a = cube::kEdgeTable[static_cast<std::size_t>(le.edge_I)];
  if (le.kind == GrowthEdgeKind::TriangleEdge) {
    const auto& b = cube::kEdgeTable[static_cast<std::size_t>(le.edge_II)];
    const int ss = (a.lo == b.lo || a.lo == b.hi) ? a.lo : a.hi;
    return ((inside >> ss) & 1) ? inside : outside;
  }
  const int n_in = std::popcount(static_cast<unsigned>(inside));
  if (n_in < 4) return inside;
  if (n_in > 4) return outside;
  return ((inside >> a.lo) & 1) ? inside : outside;
}

VertexNaming name_vertices(const LocalGrowthEdge& le, std::uint8_t meeting) {
  using R = VertexRole;
  VertexNaming out{};
  const auto& a = cube::kEdgeTable[static_cast<std::size_t>(le.edge_I)];
  const auto& b = cube::kEdgeTable[static_cast<std::size_t>(le.edge_II)];
  auto set = [&](int corner, R on_face, R opposite) {
    out[static_cast<std::size_t>(corner)] = on_face;
    out[static_cast<std::size_t>(cube::across(corner, le.face))] = opposite;
  };
  if (le.kind == GrowthEdgeKind::TriangleEdge) {
    const int ss = (a.lo == b.lo || a.lo == b.hi) ? a.lo : a.hi;
    const int ss_i = a.lo == ss ? a.hi : a.lo;
    const int ss_ii = b.lo == ss ? b.hi : b.lo;
    int diagonal = -1;
    for (auto c : cube::face_corners(le.face)) {
      if (c != ss && c != ss_i && c != ss_ii) diagonal = c;
    }
    set(ss, R::SS, R::S_S);
    set(ss_i, R::SS_I, R::S_S_I);
    set(ss_ii, R::SS_II, R::S_S_II);
    set(diagonal, R::SS_I_II, R::S_S_I_II);
    return out;
  }
  const bool a_lo_meets = (meeting >> a.lo) & 1;
  const bool b_lo_meets = (meeting >> b.lo) & 1;
  set(a_lo_meets ? a.lo : a.hi, R::SS_I, R::S_S_I);
  set(a_lo_meets ? a.hi : a.lo, R::SS_UP_I, R::S_S_UP_I);
  set(b_lo_meets ? b.lo : b.hi, R::SS_II, R::S_S_II);
  set(b_lo_meets ? b.hi : b.lo, R::SS_UP_II, R::S_S_UP_II);
  return out;
}

void update_marks(CubeMarks& marks, ConfigId config, bool cube_complete) {
  std::uint8_t level = 0;
  switch (config) {
    case 4: case 5: case 7: case 8: case 10: case 11: case 13: case 15: case 17:
      level = kTop;
      break;
    case 2: case 3: case 6: case 9: case 12: case 14: case 16:
      level = 3;
      break;
    case 1:
      level = static_cast<std::uint8_t>(std::min<int>(marks.processing + 1, cube_complete ? kTop : 3));
      break;
    default:
      throw std::invalid_argument("config id out of range: " + std::to_string(config));
  }
  marks.processing = std::max(marks.processing, level);
}

bool should_enqueue(const CubeMarks& target) { return target.processing != kTop && target.growth != kTop; }

EdgeGrowth::EdgeGrowth(const Volume& v, double threshold, InterpMode mode, GrowthOptions options)
    : v_(v),
      threshold_(threshold),
      mode_(mode),
      options_(options),
      marks_(v.cube_count()),
      covered_(v.cube_count(), 0) {}

void EdgeGrowth::set_marks(CubeIndex c, CubeMarks m) {
  CubeMarks& slot = marks_[v_.cube_linear(c)];
  if (slot == m) return;
  const CubeMarks before = slot;
  slot = m;
  if (observer_.on_marks) observer_.on_marks(c, before, m);
}

std::uint32_t EdgeGrowth::vertex_for(const EdgeId& e) {
  const auto [it, fresh] = vertex_cache_.try_emplace(e.key(), static_cast<std::uint32_t>(mesh_.vertices.size()));
  if (fresh) {
    const EdgeVertex ev = edge_vertex(v_, e, threshold_, mode_);
    mesh_.vertices.push_back(ev.position);
    mesh_.normals.push_back(ev.normal);
    mesh_.hull_planes.push_back(ev.hull_planes);
    gradients_.push_back(ev.gradient);
  }
  return it->second;
}

void EdgeGrowth::emit(CubeIndex c, const cube::Cycle& oriented) {
  for (const auto& tri : cube::triangulate_cycle(oriented)) {
    std::array<std::uint32_t, 3> out{};
    for (int n = 0; n < 3; ++n) out[static_cast<std::size_t>(n)] = vertex_for(global_edge(c, tri[static_cast<std::size_t>(n)]));
    mesh_.triangles.push_back(out);
  }
}

void EdgeGrowth::push_growth_edges(CubeIndex c, const cube::Cycle& cycle, int skip_a, int skip_b) {
  const std::size_t n = cycle.size();
  for (std::size_t s = 0; s < n; ++s) {
    const int a = cycle[s];
    const int b = cycle[(s + 1) % n];
    if ((a == skip_a && b == skip_b) || (a == skip_b && b == skip_a)) continue;
    const auto face = cube::shared_face(a, b);
    if (!face) throw InternalError("consecutive cycle edges without a common face in cube " + describe(c));
    const CubeIndex target = neighbor(c, *face);
    if (!v_.contains(target)) continue;

    EdgeId ea = global_edge(c, a);
    EdgeId eb = global_edge(c, b);
    if (eb.key() < ea.key()) std::swap(ea, eb);
    const std::uint32_t va = vertex_for(ea);
    const std::uint32_t vb = vertex_for(eb);
    GrowthEdge g{{ea, mesh_.vertices[va], gradients_[va]},
                 {eb, mesh_.vertices[vb], gradients_[vb]},
                 global_face(c, *face),
                 target};

    const CubeMarks m = marks_[v_.cube_linear(target)];
    const bool admit = options_.growth_cap ? should_enqueue(m) : m.processing != kTop;
    if (!admit) {
      ++stats_.refused_edges;
      continue;
    }
    queue_.push_back(g);
    set_marks(target, {m.processing, static_cast<std::uint8_t>(std::min<int>(m.growth + 1, kTop))});
    stats_.peak_queue = std::max(stats_.peak_queue, queue_.size());
  }
}

cube::FaceSeparation EdgeGrowth::separation_for(CubeIndex c, std::uint8_t mask, std::uint8_t meeting) const {
  cube::FaceSeparation sep{};
  // Unclaimed ambiguous faces keep the requirement-meeting corners joined,
  // which means cutting off the other side's corners one by one.
  const bool meeting_inside = (meeting & mask) != 0;
  for (int f = 0; f < cube::kFaces; ++f) {
    sep[static_cast<std::size_t>(f)] = !meeting_inside;
    if (!cube::is_ambiguous_face(mask, f)) continue;
    const auto it = face_separation_.find(global_face(c, f).key());
    if (it != face_separation_.end()) sep[static_cast<std::size_t>(f)] = it->second;
  }
  return sep;
}

EdgeGrowth::Patch EdgeGrowth::plan(const GrowthEdge& e) const {
  const LocalGrowthEdge le = localize(e);
  const CubeIndex c = e.target_cube;
  const auto hu = corner_values(v_, c);
  const std::uint8_t mask = classify_cube(hu, threshold_).mask;
  const std::uint8_t side = reference_point(hu, threshold_, le);
  const cube::FaceSeparation sep = separation_for(c, mask, side);

  Patch patch;
  patch.separation = sep;
  for (auto& cycle : cube::trace_cycles(mask, sep)) {
    if (has_segment(cycle, le.edge_I, le.edge_II)) {
      patch.cycle = cube::orient_cycle(std::move(cycle), mask);
      break;
    }
  }
  if (patch.cycle.empty()) {
    throw InternalError("no patch through the growth edge in cube " + describe(c) + ", mask " + std::to_string(mask));
  }

  const std::uint16_t bits = edge_bits(patch.cycle);
  const std::uint16_t done = covered_[v_.cube_linear(c)];
  if (done & bits) {
    if ((done & bits) != bits) throw InternalError("patch overlaps an earlier one in cube " + describe(c));
    patch.duplicate = true;
  }

  std::uint8_t touched = 0;
  for (auto ed : patch.cycle) {
    const auto& le2 = cube::kEdgeTable[ed];
    touched |= static_cast<std::uint8_t>((1u << le2.lo) | (1u << le2.hi));
  }
  patch.meeting = close_over_edges(static_cast<std::uint8_t>(touched & side), side);
  const bool complete = static_cast<std::uint16_t>(done | bits) == cube::crossing_edges(mask);
  patch.complete = complete;
  patch.config = classify_config(le.kind, std::popcount(static_cast<unsigned>(patch.meeting)), complete);
  patch.edge_I = le.edge_I;
  patch.edge_II = le.edge_II;
  return patch;
}

void EdgeGrowth::commit(CubeIndex c, const Patch& patch) {
  const std::size_t n = patch.cycle.size();
  const std::uint8_t mask = classify_cube(corner_values(v_, c), threshold_).mask;
  for (std::size_t s = 0; s < n; ++s) {
    const auto face = cube::shared_face(patch.cycle[s], patch.cycle[(s + 1) % n]);
    if (face && cube::is_ambiguous_face(mask, *face)) {
      face_separation_.try_emplace(global_face(c, *face).key(), patch.separation[static_cast<std::size_t>(*face)]);
    }
  }
  std::uint16_t& done = covered_[v_.cube_linear(c)];
  if (done == 0) ++stats_.cubes_touched;
  done |= edge_bits(patch.cycle);
  emit(c, patch.cycle);

  if (observer_.on_patch) {
    std::vector<EdgeId> edges;
    for (auto ed : patch.cycle) edges.push_back(global_edge(c, ed));
    observer_.on_patch(c, patch.config, edges);
  }
}

std::size_t EdgeGrowth::select_seeds(const SeedRegion& region) {
  const Dims cd = v_.cube_dims();
  std::vector<CubeIndex> cubes;
  auto box = [&](int x0, int x1, int y0, int y1, int z0, int z1) {
    x0 = std::max(x0, 0), y0 = std::max(y0, 0), z0 = std::max(z0, 0);
    x1 = std::min(x1, cd.nx), y1 = std::min(y1, cd.ny), z1 = std::min(z1, cd.nz);
    if (x0 >= x1 || y0 >= y1 || z0 >= z1) throw std::invalid_argument("seed region does not intersect the cube grid");
    for (int k = z0; k < z1; ++k)
      for (int j = y0; j < y1; ++j)
        for (int i = x0; i < x1; ++i) cubes.push_back({i, j, k});
  };
  if (std::holds_alternative<MiddleLayer>(region)) {
    const int k = middle_layer(v_);
    box(0, cd.nx, 0, cd.ny, k, k + 1);
  } else if (const auto* layer = std::get_if<SeedLayer>(&region)) {
    if (layer->k < 0 || layer->k >= cd.nz) {
      throw std::invalid_argument("seed layer " + std::to_string(layer->k) + " outside 0.." + std::to_string(cd.nz - 1));
    }
    box(0, cd.nx, 0, cd.ny, layer->k, layer->k + 1);
  } else if (const auto* b = std::get_if<SeedBox>(&region)) {
    box(b->x_lo, b->x_hi, b->y_lo, b->y_hi, b->z_lo, b->z_hi);
  } else {
    for (const auto& c : std::get<std::vector<CubeIndex>>(region)) {
      if (!v_.contains(c)) throw std::invalid_argument("seed cube " + describe(c) + " is outside the grid");
      cubes.push_back(c);
    }
  }

  std::size_t seeds = 0;
  for (const auto& c : cubes) {
    const std::uint8_t mask = classify_cube(corner_values(v_, c), threshold_).mask;
    if (!is_config1({mask}) || marks_[v_.cube_linear(c)].processing == kTop) continue;
    cube::FaceSeparation sep{};
    const auto cycles = cube::trace_cycles(mask, sep);
    Patch patch;
    patch.config = 1;
    patch.complete = true;
    patch.cycle = cube::orient_cycle(cycles.front(), mask);
    commit(c, patch);
    set_marks(c, {kTop, kTop});
    push_growth_edges(c, patch.cycle, -1, -1);
    ++seeds;
  }
  if (seeds == 0) {
    std::ostringstream msg;
    msg << "no single-corner cell in the seed region at threshold " << threshold_
        << "; widen the region or pick another layer";
    throw NoSeedsError(msg.str());
  }
  stats_.seeds += seeds;
  return seeds;
}

bool EdgeGrowth::step() {
  if (queue_.empty()) return false;
  const GrowthEdge e = queue_.front();
  queue_.pop_front();
  ++stats_.steps;
  const CubeIndex c = e.target_cube;
  if (marks_[v_.cube_linear(c)].processing == kTop) {
    ++stats_.stale_drops;
    return true;
  }
  const Patch patch = plan(e);
  if (patch.duplicate) {
    ++stats_.duplicate_patches;
    return true;
  }
  commit(c, patch);
  CubeMarks m = marks_[v_.cube_linear(c)];
  update_marks(m, patch.config, patch.complete);
  set_marks(c, m);
  ++stats_.config_histogram[static_cast<std::size_t>(patch.config)];
  push_growth_edges(c, patch.cycle, patch.edge_I, patch.edge_II);
  return true;
}

void EdgeGrowth::run() {
  while (step()) {
  }
}

GrowthResult reconstruct(const Volume& v, double threshold, const SeedRegion& region, InterpMode mode,
                         GrowthOptions options) {
  EdgeGrowth g(v, threshold, mode, options);
  g.select_seeds(region);
  g.run();
  GrowthResult out;
  out.stats = g.stats();
  out.mesh = g.take_mesh();
  return out;
}

}  // namespace edgemc
