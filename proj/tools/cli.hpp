#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgemc/edge_growth.hpp"
#include "edgemc/interp.hpp"
#include "edgemc/mesh.hpp"
#include "edgemc/volume.hpp"

namespace edgemc::tools {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

/// Thrown for option combinations that parse but make no sense.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algo { MC, EdgeGrowth };
std::string to_string(Algo a);
Algo parse_algo(const std::string& s);

/// Where the volume comes from. `input` is one of:
///   gen:<preset>      a built-in dataset
///   <file>.json       a raw descriptor
///   <file>.raw        needs dims and kind
///   <directory>       every *.png in it, sorted by name, as z-slices
struct InputSpec {
  std::string input;
  std::optional<Dims> dims;
  ValueKind kind = ValueKind::U8;
  Endian endian = Endian::Little;
};

struct RunConfig {
  InputSpec input;
  std::optional<double> threshold;  // falls back to the preset's for gen: inputs
  Algo algo = Algo::EdgeGrowth;
  std::optional<InterpMode> interp;  // default depends on algo
  std::optional<SeedRegion> seeds;   // edge growth only
  GrowthOptions growth;
  std::filesystem::path out;
  std::string format;  // obj | stl; empty means from the extension
  std::filesystem::path report;
};

struct LoadedInput {
  Volume volume;
  double threshold;
  SeedRegion seeds;
};

LoadedInput load_input(const RunConfig& cfg);

struct RunResult {
  Algo algo;
  double time_s = 0.0;
  TriangleMesh mesh;
  std::optional<GrowthStats> stats;
};

/// Runs one extraction and times it (extraction only, no IO).
RunResult run_algorithm(const LoadedInput& in, const RunConfig& cfg);

nlohmann::json report_json(const RunResult& r);
nlohmann::json topology_json(const TopologyReport& t);

/// Parses "x0,x1,y0,y1,z0,z1" and "middle" / "N".
SeedBox parse_seed_region(const std::string& s);
SeedRegion parse_seed_layer(const std::string& s);
InterpParams parse_interp_params(const std::string& s);
Dims parse_dims(const std::string& s);

int cmd_gen(const std::string& name, const std::vector<std::string>& params, const std::filesystem::path& out,
            ValueKind kind);
int cmd_reconstruct(const RunConfig& cfg);
int cmd_compare(const RunConfig& a, const RunConfig& b);
int cmd_check(const std::filesystem::path& mesh_path, const std::filesystem::path& report);

struct BenchEntry {
  std::string dataset;  // preset name or input spec
  RunConfig config;
};

struct BenchRecord {
  std::string dataset;
  Algo algo;
  double time_s;
  std::size_t triangles;
  std::size_t peak_queue;
};

/// Suite file: {"repetitions": 3, "algos": ["mc", "edge-growth"],
/// "datasets": [{"id": "sphere", "input": "gen:sphere", "threshold": 50,
/// "seed_layer": "middle"}]}. Without a file: the three presets
/// mc-example, sphere, shell under both algorithms.
std::vector<BenchEntry> load_suite(const std::filesystem::path& suite, int* repetitions);

/// Median time over `repetitions`; triangle and queue counts from the last
/// run (they do not vary). Writes one JSON per entry into reports_dir when set.
std::vector<BenchRecord> run_bench(const std::vector<BenchEntry>& suite, int repetitions,
                                   const std::filesystem::path& reports_dir);
std::string bench_csv(const std::vector<BenchRecord>& records);

int cmd_bench(const std::filesystem::path& suite, std::optional<int> repetitions, const std::filesystem::path& out,
              const std::filesystem::path& reports_dir);

/// Full command line, including argv[0]. Returns the exit code.
int run(int argc, char** argv);

}  // namespace edgemc::tools
