#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "edgemc/error.hpp"
#include "edgemc/mc.hpp"
#include "presets.hpp"

namespace edgemc::tools {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<double> parse_numbers(const std::string& s, std::size_t expected, const char* what) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad number '") + item + "' in " + what);
    }
  }
  if (out.size() != expected) {
    throw UsageError(std::string(what) + " needs " + std::to_string(expected) + " comma-separated values, got '" + s +
                     "'");
  }
  return out;
}

int to_int(double d, const char* what) {
  if (d != static_cast<int>(d)) throw UsageError(std::string(what) + " must be integers");
  return static_cast<int>(d);
}

Vec3 parse_vec3(const std::string& s, const char* what) {
  const auto v = parse_numbers(s, 3, what);
  return {v[0], v[1], v[2]};
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw DataError("cannot write " + path.string());
}

std::vector<fs::path> png_slices(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

void write_mesh(const TriangleMesh& mesh, const fs::path& path, const std::string& format) {
  std::string fmt = format;
  if (fmt.empty()) fmt = path.extension() == ".stl" ? "stl" : "obj";
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  if (fmt == "stl") {
    write_stl_binary(mesh, path);
  } else if (fmt == "obj") {
    write_obj(mesh, path);
  } else {
    throw UsageError("unknown mesh format '" + format + "'");
  }
}

}  // namespace

std::string to_string(Algo a) { return a == Algo::MC ? "mc" : "edge-growth"; }

Algo parse_algo(const std::string& s) {
  if (s == "mc") return Algo::MC;
  if (s == "edge-growth") return Algo::EdgeGrowth;
  throw UsageError("unknown algorithm '" + s + "' (mc, edge-growth)");
}

SeedBox parse_seed_region(const std::string& s) {
  const auto v = parse_numbers(s, 6, "--seed-region");
  return {to_int(v[0], "seed region bounds"), to_int(v[1], "seed region bounds"), to_int(v[2], "seed region bounds"),
          to_int(v[3], "seed region bounds"), to_int(v[4], "seed region bounds"), to_int(v[5], "seed region bounds")};
}

SeedRegion parse_seed_layer(const std::string& s) {
  if (s == "middle") return MiddleLayer{};
  return SeedLayer{to_int(parse_numbers(s, 1, "--seed-layer")[0], "--seed-layer")};
}

InterpParams parse_interp_params(const std::string& s) {
  const auto v = parse_numbers(s, 4, "--interp-params");
  try {
    return InterpParams::make(v[0], v[1], v[2], v[3]);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Dims parse_dims(const std::string& s) {
  if (s.find(',') == std::string::npos) {
    const int n = to_int(parse_numbers(s, 1, "--dims")[0], "--dims");
    return {n, n, n};
  }
  const auto v = parse_numbers(s, 3, "--dims");
  return {to_int(v[0], "--dims"), to_int(v[1], "--dims"), to_int(v[2], "--dims")};
}

LoadedInput load_input(const RunConfig& cfg) {
  const std::string& in = cfg.input.input;
  if (in.empty()) throw UsageError("--input is required");
  if (in.rfind("gen:", 0) == 0) {
    Preset p = [&] {
      try {
        return preset(in.substr(4));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }();
    return {std::move(p.volume), cfg.threshold.value_or(p.threshold), cfg.seeds.value_or(p.seeds)};
  }
  if (!cfg.threshold) throw UsageError("--threshold is required");
  const fs::path path(in);
  if (!fs::exists(path)) throw DataError("input not found: " + in);
  const SeedRegion seeds = cfg.seeds.value_or(MiddleLayer{});
  if (fs::is_directory(path)) {
    const auto slices = png_slices(path);
    return {load_slices(slices), *cfg.threshold, seeds};
  }
  if (path.extension() == ".json") return {load_described(path), *cfg.threshold, seeds};
  if (!cfg.input.dims) throw UsageError("raw input needs --dims");
  return {load_raw(path, *cfg.input.dims, cfg.input.kind, cfg.input.endian), *cfg.threshold, seeds};
}

RunResult run_algorithm(const LoadedInput& in, const RunConfig& cfg) {
  RunResult r;
  r.algo = cfg.algo;
  const auto start = std::chrono::steady_clock::now();
  if (cfg.algo == Algo::MC) {
    r.mesh = extract_mc_parallel(in.volume, in.threshold, cfg.interp.value_or(InterpMode::linear()));
  } else {
    GrowthResult g = reconstruct(in.volume, in.threshold, in.seeds, cfg.interp.value_or(InterpMode::three_segment()),
                                 cfg.growth);
    r.mesh = std::move(g.mesh);
    r.stats = g.stats;
  }
  r.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  spdlog::debug("{}: {} triangles in {:.6f} s", to_string(r.algo), r.mesh.triangles.size(), r.time_s);
  return r;
}

json topology_json(const TopologyReport& t) {
  return {{"edge_count", t.edge_count},
          {"boundary_edges", t.boundary_edges},
          {"manifold_edges", t.manifold_edges},
          {"nonmanifold_edges", t.nonmanifold_edges},
          {"hull_boundary_edges", t.hull_boundary_edges},
          {"misoriented_edges", t.misoriented_edges},
          {"component_count", t.component_count},
          {"watertight", t.watertight}};
}

json report_json(const RunResult& r) {
  const MeshStats ms = area_and_count_stats(r.mesh);
  json j{{"algo", to_string(r.algo)},
         {"time_s", r.time_s},
         {"triangles", r.mesh.triangles.size()},
         {"vertices", r.mesh.vertices.size()},
         {"area", ms.total_area},
         {"report", topology_json(topology_report(r.mesh))}};
  if (r.stats) {
    const GrowthStats& s = *r.stats;
    json hist = json::object();
    for (std::size_t c = 1; c < s.config_histogram.size(); ++c) hist[std::to_string(c)] = s.config_histogram[c];
    j["stats"] = {{"seeds", s.seeds},
                  {"peak_queue", s.peak_queue},
                  {"cubes_touched", s.cubes_touched},
                  {"stale_drops", s.stale_drops},
                  {"duplicate_patches", s.duplicate_patches},
                  {"refused_edges", s.refused_edges},
                  {"steps", s.steps},
                  {"configs", hist}};
  }
  return j;
}

int cmd_gen(const std::string& name, const std::vector<std::string>& params, const fs::path& out, ValueKind kind) {
  // params are key=value pairs collected by the front end.
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    for (const auto& p : params) {
      if (p.rfind(key + "=", 0) == 0) return p.substr(key.size() + 1);
    }
    return std::nullopt;
  };
  auto num = [&](const std::string& key, double fallback) {
    const auto s = get(key);
    return s ? parse_numbers(*s, 1, key.c_str())[0] : fallback;
  };
  auto vec = [&](const std::string& key, Vec3 fallback) {
    const auto s = get(key);
    return s ? parse_vec3(*s, key.c_str()) : fallback;
  };

  std::optional<Volume> v;
  if (name == "mc-example") {
    v = mc_example(num("a", 100.0));
  } else {
    const Preset base = preset(name);
    const Dims dims = get("dims") ? parse_dims(*get("dims")) : base.volume.dims();
    const auto inside = static_cast<float>(num("inside", 100.0));
    const auto outside = static_cast<float>(num("outside", 0.0));
    const Vec3 mid{(dims.nx - 1) / 2.0, (dims.ny - 1) / 2.0, (dims.nz - 1) / 2.0};
    if (name == "sphere") {
      v = gen_sphere(dims, vec("center", mid), num("radius", 0.4 * (std::min({dims.nx, dims.ny, dims.nz}) - 1)),
                     inside, outside);
    } else if (name == "shell") {
      const double r = 0.4 * (std::min({dims.nx, dims.ny, dims.nz}) - 1);
      v = gen_shell(dims, vec("center", mid), num("radius", r), num("inner", r / 2.0), inside, outside);
    } else {
      const double r = 0.15 * (dims.nx - 1);
      v = gen_two_spheres(dims, vec("center", {0.25 * (dims.nx - 1), mid.y, mid.z}), num("radius", r),
                          vec("center-b", {0.75 * (dims.nx - 1), mid.y, mid.z}), num("radius-b", r), inside,
                          outside);
    }
  }
  fs::path stem = out;
  if (stem.has_parent_path()) fs::create_directories(stem.parent_path());
  const fs::path descriptor = save_described(*v, stem.replace_extension(), kind);
  spdlog::info("wrote {}", descriptor.string());
  return kOk;
}

int cmd_reconstruct(const RunConfig& cfg) {
  const LoadedInput in = load_input(cfg);
  const RunResult r = run_algorithm(in, cfg);
  if (!cfg.out.empty()) write_mesh(r.mesh, cfg.out, cfg.format);
  const json j = report_json(r);
  if (!cfg.report.empty()) {
    write_text(cfg.report, j.dump(2) + "\n");
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return kOk;
}

int cmd_compare(const RunConfig& a, const RunConfig& b) {
  const LoadedInput in = load_input(a);
  const RunResult ra = run_algorithm(in, a);
  const RunResult rb = run_algorithm(in, b);
  const json ja = report_json(ra);
  const json jb = report_json(rb);
  json j{{"runs", {ja, jb}},
         {"delta",
          {{"triangles", static_cast<long long>(rb.mesh.triangles.size()) -
                             static_cast<long long>(ra.mesh.triangles.size())},
           {"components", static_cast<long long>(jb["report"]["component_count"].get<std::size_t>()) -
                              static_cast<long long>(ja["report"]["component_count"].get<std::size_t>())},
           {"watertight", {ja["report"]["watertight"], jb["report"]["watertight"]}}}}};
  if (!a.report.empty()) {
    write_text(a.report, j.dump(2) + "\n");
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return kOk;
}

int cmd_check(const fs::path& mesh_path, const fs::path& report) {
  const TriangleMesh mesh = read_obj(mesh_path);
  const json j = topology_json(topology_report(mesh));
  if (!report.empty()) {
    write_text(report, j.dump(2) + "\n");
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return kOk;
}

std::vector<BenchEntry> load_suite(const fs::path& suite, int* repetitions) {
  std::vector<BenchEntry> out;
  if (suite.empty()) {
    for (const char* name : {"mc-example", "sphere", "shell"}) {
      for (Algo a : {Algo::MC, Algo::EdgeGrowth}) {
        BenchEntry e;
        e.dataset = name;
        e.config.input.input = std::string("gen:") + name;
        e.config.algo = a;
        out.push_back(e);
      }
    }
    return out;
  }
  std::ifstream in(suite);
  if (!in) throw DataError("cannot read suite " + suite.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("malformed suite " + suite.string() + ": " + e.what());
  }
  try {
    if (repetitions && j.contains("repetitions")) *repetitions = j["repetitions"].get<int>();
    std::vector<Algo> algos{Algo::MC, Algo::EdgeGrowth};
    if (j.contains("algos")) {
      algos.clear();
      for (const auto& a : j["algos"]) algos.push_back(parse_algo(a.get<std::string>()));
    }
    for (const auto& d : j.at("datasets")) {
      for (Algo a : algos) {
        BenchEntry e;
        e.dataset = d.at("id").get<std::string>();
        e.config.input.input = d.value("input", "gen:" + e.dataset);
        if (d.contains("threshold")) e.config.threshold = d["threshold"].get<double>();
        if (d.contains("dims")) e.config.input.dims = parse_dims(d["dims"].get<std::string>());
        if (d.contains("type")) e.config.input.kind = parse_value_kind(d["type"].get<std::string>());
        e.config.algo = a;
        if (a == Algo::EdgeGrowth) {
          if (d.contains("seed_layer")) e.config.seeds = parse_seed_layer(d["seed_layer"].get<std::string>());
          if (d.contains("seed_region")) e.config.seeds = parse_seed_region(d["seed_region"].get<std::string>());
        }
        out.push_back(e);
      }
    }
  } catch (const json::exception& e) {
    throw DataError("bad suite " + suite.string() + ": " + e.what());
  }
  return out;
}

std::vector<BenchRecord> run_bench(const std::vector<BenchEntry>& suite, int repetitions, const fs::path& reports_dir) {
  if (repetitions < 1) throw UsageError("repetitions must be at least 1");
  std::vector<BenchRecord> out;
  for (const auto& entry : suite) {
    const LoadedInput in = load_input(entry.config);
    std::vector<double> times;
    RunResult last;
    for (int rep = 0; rep < repetitions; ++rep) {
      last = run_algorithm(in, entry.config);
      times.push_back(last.time_s);
    }
    std::sort(times.begin(), times.end());
    const std::size_t n = times.size();
    const double median = n % 2 ? times[n / 2] : 0.5 * (times[n / 2 - 1] + times[n / 2]);
    const std::size_t peak = last.stats ? last.stats->peak_queue : 0;
    out.push_back({entry.dataset, entry.config.algo, median, last.mesh.triangles.size(), peak});
    if (!reports_dir.empty()) {
      json j = report_json(last);
      j["dataset"] = entry.dataset;
      j["time_s"] = median;
      write_text(reports_dir / (entry.dataset + "_" + to_string(entry.config.algo) + ".json"), j.dump(2) + "\n");
    }
    spdlog::info("{} {}: {:.6f} s, {} triangles", entry.dataset, to_string(entry.config.algo), median,
                 last.mesh.triangles.size());
  }
  return out;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "dataset,algo,time_s,triangles,peak_queue\n";
  out.precision(9);
  for (const auto& r : records) {
    out << r.dataset << ',' << to_string(r.algo) << ',' << std::fixed << r.time_s << ',' << r.triangles << ','
        << r.peak_queue << '\n';
  }
  return out.str();
}

int cmd_bench(const fs::path& suite, std::optional<int> repetitions, const fs::path& out, const fs::path& reports_dir) {
  int reps = 3;
  const auto entries = load_suite(suite, &reps);
  if (repetitions) reps = *repetitions;
  const std::string csv = bench_csv(run_bench(entries, reps, reports_dir));
  if (!out.empty()) {
    write_text(out, csv);
  } else {
    std::cout << csv;
  }
  return kOk;
}

namespace {

struct RunFlags {
  std::string input;
  std::string dims;
  std::string type = "u8";
  std::string endian = "little";
  std::optional<double> threshold;
  std::string algo = "edge-growth";
  std::string interp;
  std::string interp_params;
  std::string seed_layer;
  std::string seed_region;
  bool growth_cap = false;
  std::string out;
  std::string format;
  std::string report;

  void attach(CLI::App* app, bool with_algo) {
    app->add_option("--input", input, "gen:<dataset>, descriptor .json, .raw file, or PNG slice directory")
        ->required();
    app->add_option("--dims", dims, "nx,ny,nz (or n) for .raw input");
    app->add_option("--type", type, "u8 | u16 | f32 for .raw input");
    app->add_option("--endian", endian, "little | big for .raw input");
    app->add_option("--threshold", threshold, "iso value Y; required unless the input is gen:<dataset>");
    if (with_algo) app->add_option("--algo", algo, "mc | edge-growth");
    app->add_option("--interp", interp, "linear | midpoint | three-segment");
    app->add_option("--interp-params", interp_params, "q,m,n,p for three-segment");
    app->add_option("--seed-layer", seed_layer, "middle or a cube layer index (edge growth)");
    app->add_option("--seed-region", seed_region, "x0,x1,y0,y1,z0,z1 half-open cube box (edge growth)");
    app->add_flag("--growth-cap", growth_cap, "also refuse growth edges into cells whose growth mark is 4");
    if (with_algo) {
      app->add_option("--out", out, "mesh output path");
      app->add_option("--format", format, "obj | stl (default from extension)");
    }
    app->add_option("--report", report, "JSON report path (default stdout)");
  }

  RunConfig config(Algo a, bool seeds_allowed) const {
    RunConfig c;
    c.input.input = input;
    if (!dims.empty()) c.input.dims = parse_dims(dims);
    try {
      c.input.kind = parse_value_kind(type);
      c.input.endian = parse_endian(endian);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    c.threshold = threshold;
    c.algo = a;
    const bool seeded = !seed_layer.empty() || !seed_region.empty() || growth_cap;
    if (seeded && !seeds_allowed) throw UsageError("seed options require --algo edge-growth");
    if (!seed_layer.empty() && !seed_region.empty()) throw UsageError("give --seed-layer or --seed-region, not both");
    if (seeds_allowed) {
      if (!seed_layer.empty()) c.seeds = parse_seed_layer(seed_layer);
      if (!seed_region.empty()) c.seeds = parse_seed_region(seed_region);
    }
    c.growth.growth_cap = growth_cap;
    if (!interp.empty() || !interp_params.empty()) {
      const std::string kind = interp.empty() ? "three-segment" : interp;
      if (!interp_params.empty() && kind != "three-segment") {
        throw UsageError("--interp-params only applies to three-segment");
      }
      if (kind == "linear") {
        c.interp = InterpMode::linear();
      } else if (kind == "midpoint") {
        c.interp = InterpMode::midpoint();
      } else if (kind == "three-segment") {
        c.interp = InterpMode::three_segment(interp_params.empty() ? InterpParams{} : parse_interp_params(interp_params));
      } else {
        throw UsageError("unknown interpolation '" + kind + "'");
      }
    }
    c.out = out;
    c.format = format;
    c.report = report;
    return c;
  }
};

void configure_logging() {
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("EDGEMC_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

}  // namespace

int run(int argc, char** argv) {
  configure_logging();
  CLI::App app{"edge-growth marching cubes toolkit"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "write a test volume as <out>.raw + <out>.json");
  std::string gen_name;
  std::string gen_out;
  std::string gen_type = "u8";
  std::vector<std::string> gen_params;
  gen->add_option("name", gen_name, "mc-example | sphere | shell | two-spheres")->required();
  gen->add_option("--out", gen_out, "output stem")->required();
  gen->add_option("--type", gen_type, "u8 | u16 | f32");
  for (const char* key : {"a", "dims", "center", "radius", "inner", "center-b", "radius-b", "inside", "outside"}) {
    gen->add_option_function<std::string>(
        std::string("--") + key, [&gen_params, key](const std::string& v) { gen_params.push_back(key + ("=" + v)); },
        "generator parameter");
  }

  auto* rec = app.add_subcommand("reconstruct", "extract a surface and write mesh + JSON report");
  RunFlags rec_flags;
  rec_flags.attach(rec, true);

  auto* cmp = app.add_subcommand("compare", "run mc and edge-growth on the same volume");
  RunFlags cmp_flags;
  cmp_flags.attach(cmp, false);

  auto* check = app.add_subcommand("check", "topology report for an OBJ mesh");
  std::string check_path;
  std::string check_report;
  check->add_option("mesh", check_path)->required();
  check->add_option("--report", check_report);

  auto* bench = app.add_subcommand("bench", "time a dataset x algorithm matrix, CSV out");
  std::string bench_suite;
  std::optional<int> bench_reps;
  std::string bench_out;
  std::string bench_reports;
  bench->add_option("--suite", bench_suite, "suite JSON (default: mc-example, sphere, shell)");
  bench->add_option("--repetitions", bench_reps);
  bench->add_option("--out", bench_out, "CSV path (default stdout)");
  bench->add_option("--reports", bench_reports, "directory for per-run JSON reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) {
      ValueKind kind = ValueKind::U8;
      try {
        kind = parse_value_kind(gen_type);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
      return cmd_gen(gen_name, gen_params, gen_out, kind);
    }
    if (rec->parsed()) {
      const Algo a = parse_algo(rec_flags.algo);
      return cmd_reconstruct(rec_flags.config(a, a == Algo::EdgeGrowth));
    }
    if (cmp->parsed()) {
      // Seed options belong to the edge-growth side only.
      RunFlags plain = cmp_flags;
      plain.seed_layer.clear();
      plain.seed_region.clear();
      plain.growth_cap = false;
      return cmd_compare(plain.config(Algo::MC, false), cmp_flags.config(Algo::EdgeGrowth, true));
    }
    if (check->parsed()) return cmd_check(check_path, check_report);
    if (bench->parsed()) return cmd_bench(bench_suite, bench_reps, bench_out, bench_reports);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const NoCrossingError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace edgemc::tools
