#pragma once

// Edge-growth reconstruction: start from single-corner seed triangles and
// grow the surface cube by cube through the segments it leaves on shared
// faces. Only surface connected to a seed is ever produced.
//
// Each grow step builds the patch constructively. The cell's crossing edges
// are linked into cycles (ambiguous faces take whatever pairing the
// neighbouring cell already committed to, or else keep the
// requirement-meeting corners connected), and the cycle that contains the
// incoming segment is the patch. Vertices are cached per grid edge, so two
// cells sharing a face always agree on it bit for bit.
//
// Configuration numbers (1-11 triangle edge, 12-17 quadrangle edge) are a
// classification of that patch by requirement-meeting corner count and by
// whether the patch finishes the cell:
//
//   triangle edge   corners  partial  complete
//                      1        1        1
//                      2        2        4
//                      3        3        5
//                      4        6        7
//                      5        9        8
//                      6        9       10
//                      7        9       11
//   quadrangle edge    2       12       13
//                      3       14       15
//                      4       16       17

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <span>
#include <variant>
#include <vector>

#include "edgemc/cube.hpp"
#include "edgemc/interp.hpp"
#include "edgemc/mesh.hpp"
#include "edgemc/vec3.hpp"
#include "edgemc/volume.hpp"

namespace edgemc {

enum class GrowthEdgeKind { TriangleEdge, QuadrangleEdge };

struct EdgeEndpoint {
  EdgeId source;
  Vec3 position;
  Vec3 gradient;
};

/// Queue element: a surface segment on a shared face plus the cell to grow into.
struct GrowthEdge {
  EdgeEndpoint endpoint_I;
  EdgeEndpoint endpoint_II;
  FaceId shared_face;
  CubeIndex target_cube;
};

struct CubeMarks {
  std::uint8_t processing = 0;
  std::uint8_t growth = 0;
  friend bool operator==(const CubeMarks&, const CubeMarks&) = default;
};

using ConfigId = int;

/// Seed selection. Box bounds are cube indices, half-open.
struct SeedBox {
  int x_lo, x_hi, y_lo, y_hi, z_lo, z_hi;
};
struct MiddleLayer {};
struct SeedLayer {
  int k;
};
using SeedRegion = std::variant<MiddleLayer, SeedLayer, SeedBox, std::vector<CubeIndex>>;

/// Cube layer used by MiddleLayer.
int middle_layer(const Volume& v);

/// The growth edge expressed in the target cell's local numbering.
/// edge_I / edge_II are the local edges of the endpoints; face is the
/// local face carrying the segment.
struct LocalGrowthEdge {
  int face = 0;
  int edge_I = 0;
  int edge_II = 0;
  GrowthEdgeKind kind = GrowthEdgeKind::TriangleEdge;
};

/// Throws MalformedEdgeError if the endpoints do not lie on two distinct
/// edges of the shared face, or the face is not on the target cell.
LocalGrowthEdge localize(const GrowthEdge& e);

GrowthEdgeKind classify_growth_edge(const GrowthEdge& e);

enum class VertexRole : std::uint8_t {
  SS,
  SS_I,
  SS_II,
  SS_I_II,
  S_S,
  S_S_I,
  S_S_II,
  S_S_I_II,
  SS_UP_I,
  SS_UP_II,
  S_S_UP_I,
  S_S_UP_II,
};

const char* to_string(VertexRole r);

/// Role of each corner, indexed by CornerId.
using VertexNaming = std::array<VertexRole, cube::kCorners>;

/// Requirement-meeting corners as a bitmask. Triangle edge: the side of SS.
/// Quadrangle edge: the smaller side of the whole cell; on a 4-4 split, the
/// side holding the lower-numbered corner of endpoint I's edge.
std::uint8_t reference_point(std::span<const float, 8> hu, double threshold, const LocalGrowthEdge& le);

/// `meeting` only matters for quadrangle edges, where it decides which
/// corner of each endpoint edge is SS_I / SS_II.
VertexNaming name_vertices(const LocalGrowthEdge& le, std::uint8_t meeting);

/// Processing-mark update. `cube_complete` is whether every crossing edge of
/// the cell is now covered; a single-triangle patch only finishes a cell
/// that really is finished.
void update_marks(CubeMarks& marks, ConfigId config, bool cube_complete);

/// The queueing rule on marks alone: neither mark of the target is 4.
bool should_enqueue(const CubeMarks& target);

struct GrowthOptions {
  // Refuse growth edges into a cell whose growth mark already reached 4.
  // Off by default: a cell entered four times through one patch would then
  // turn away the edges of its other patches, leaving holes on noisy data.
  // With it off only the processing mark gates the queue.
  bool growth_cap = false;
};

struct GrowthStats {
  std::array<std::size_t, 18> config_histogram{};  // index 0 unused
  std::size_t seeds = 0;
  std::size_t peak_queue = 0;
  std::size_t cubes_touched = 0;
  std::size_t stale_drops = 0;
  std::size_t duplicate_patches = 0;
  std::size_t refused_edges = 0;
  std::size_t steps = 0;
};

/// Hooks for tests and tracing.
struct GrowthObserver {
  std::function<void(CubeIndex, const CubeMarks& before, const CubeMarks& after)> on_marks;
  // Emitted patch in cell order, as global edges of the oriented cycle.
  std::function<void(CubeIndex, ConfigId, const std::vector<EdgeId>& cycle)> on_patch;
};

class EdgeGrowth {
 public:
  EdgeGrowth(const Volume& v, double threshold, InterpMode mode = InterpMode::three_segment(),
             GrowthOptions options = {});

  void set_observer(GrowthObserver obs) { observer_ = std::move(obs); }

  /// Emits seed triangles for every single-corner cell in the region and
  /// queues their growth edges. Throws NoSeedsError if none exist, or
  /// std::invalid_argument for a region outside the grid.
  std::size_t select_seeds(const SeedRegion& region);

  /// Processes one queue entry; false when the queue is empty.
  bool step();

  /// Drains the queue.
  void run();

  [[nodiscard]] const TriangleMesh& mesh() const { return mesh_; }
  TriangleMesh take_mesh() { return std::move(mesh_); }
  [[nodiscard]] const GrowthStats& stats() const { return stats_; }
  [[nodiscard]] CubeMarks marks(CubeIndex c) const { return marks_[v_.cube_linear(c)]; }
  [[nodiscard]] std::size_t queue_size() const { return queue_.size(); }

  struct Patch {
    ConfigId config = 0;
    cube::Cycle cycle;              // oriented, local edges
    std::uint8_t meeting = 0;       // requirement-meeting corners in the patch
    cube::FaceSeparation separation{};
    int edge_I = -1;
    int edge_II = -1;
    bool complete = false;          // cell fully covered once this patch is in
    bool duplicate = false;
  };

  /// Builds the patch a growth edge would produce in its target cell with
  /// the current face commitments, without emitting anything.
  Patch plan(const GrowthEdge& e) const;

 private:
  std::uint32_t vertex_for(const EdgeId& e);
  void emit(CubeIndex c, const cube::Cycle& oriented);
  void commit(CubeIndex c, const Patch& patch);
  void push_growth_edges(CubeIndex c, const cube::Cycle& cycle, int skip_a, int skip_b);
  cube::FaceSeparation separation_for(CubeIndex c, std::uint8_t mask, std::uint8_t meeting) const;
  void set_marks(CubeIndex c, CubeMarks m);

  const Volume& v_;
  double threshold_;
  InterpMode mode_;
  GrowthOptions options_;
  TriangleMesh mesh_;
  std::vector<Vec3> gradients_;  // parallel to mesh_.vertices
  std::vector<CubeMarks> marks_;
  std::vector<std::uint16_t> covered_;  // crossing edges already in emitted patches
  std::unordered_map<std::uint64_t, bool> face_separation_;  // FaceId key -> inside corners separated
  std::unordered_map<std::uint64_t, std::uint32_t> vertex_cache_;
  std::deque<GrowthEdge> queue_;
  GrowthStats stats_;
  GrowthObserver observer_;
};

struct GrowthResult {
  TriangleMesh mesh;
  GrowthStats stats;
};

/// Seeds, grows until the queue is empty, and returns the welded mesh.
GrowthResult reconstruct(const Volume& v, double threshold, const SeedRegion& region = MiddleLayer{},
                         InterpMode mode = InterpMode::three_segment(), GrowthOptions options = {});

}  // namespace edgemc
