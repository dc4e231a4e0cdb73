// Command line front end: device characterization, Ising solves, verification.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shemtj/shemtj.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace shemtj;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNotConverged = 3;

constexpr const char* kParamsDirEnv = "SHEMTJ_PARAMS_DIR";
constexpr const char* kDefaultParamsName = "default.params";
constexpr const char* kDefaultCurveName = "default_curve";

std::optional<std::string> env_params_dir() {
  if (const char* v = std::getenv(kParamsDirEnv); v && *v) return std::string(v);
  return std::nullopt;
}

DeviceParams resolve_params(const std::string& params_path) {
  if (!params_path.empty()) return load_device_params(params_path);
  if (auto dir = env_params_dir()) {
    const fs::path p = fs::path(*dir) / kDefaultParamsName;
    if (fs::exists(p)) return load_device_params(p.string());
  }
  return DeviceParams{};  // built-in defaults
}

SwitchCurve resolve_curve(const std::string& curve_path) {
  auto meta_of = [](const fs::path& csv) {
    fs::path m = csv;
    m.replace_extension(".meta.json");
    return m;
  };
  if (!curve_path.empty()) {
    const fs::path csv(curve_path);
    const fs::path meta = meta_of(csv);
    return load_switch_curve(csv.string(), fs::exists(meta) ? meta.string() : "");
  }
  if (auto dir = env_params_dir()) {
    const fs::path csv = fs::path(*dir) / (std::string(kDefaultCurveName) + ".csv");
    if (fs::exists(csv)) {
      const fs::path meta = meta_of(csv);
      return load_switch_curve(csv.string(), fs::exists(meta) ? meta.string() : "");
    }
  }
  throw std::runtime_error(
      "no switching curve: pass --curve or put " + std::string(kDefaultCurveName) +
      ".csv in $" + kParamsDirEnv);
}

unsigned resolve_threads(unsigned threads) {
  return threads == 0 ? default_thread_count() : threads;
}

// ---- solve support ----------------------------------------------------------

enum class Problem { maxcut, coloring, digits };

struct SolveOptions {
  std::string input;
  std::string digits;  // glyph string, digits problem only
  std::string params_path;
  std::string curve_path;
  std::string backend = "curve";
  std::string schedule_text;
  std::string order = "sequential";
  std::string out_dir = ".";
  int max_sweeps = 1000;
  std::uint64_t seed = 1;
  std::optional<long long> target;
  bool strict = false;
};

struct ProblemInstance {
  CouplingGraph graph{1};
  std::optional<WeightedGraph> maxcut;
  std::optional<ColoringSpec> coloring;
  std::optional<ColoringEncoding> coloring_enc;
  std::optional<SpinArray> digit_target;
  int grid_w = 0, grid_h = 0;  // nonzero for grid (digit) instances
};

ProblemInstance build_instance(Problem problem, const SolveOptions& opt) {
  ProblemInstance inst;
  switch (problem) {
    case Problem::maxcut: {
      if (opt.input.empty()) throw std::runtime_error("solve maxcut: --input required");
      inst.maxcut = load_weighted_graph(opt.input);
      inst.graph = maxcut_encode(*inst.maxcut);
      break;
    }
    case Problem::coloring: {
      if (opt.input.empty())
        throw std::runtime_error("solve coloring: --input required");
      inst.coloring = load_coloring_spec(opt.input);
      inst.coloring_enc = coloring_encode(*inst.coloring);
      inst.graph = inst.coloring_enc->graph;
      break;
    }
    case Problem::digits: {
      DigitInstance di;
      if (!opt.digits.empty()) {
        std::vector<Bitmap> maps;
        for (char c : opt.digits) {
          if (c < '0' || c > '4')
            throw std::runtime_error("solve digits: --digits accepts characters 0-4");
          maps.push_back(digit_glyph(c - '0'));
        }
        di = digit_instance(maps);
      } else if (!opt.input.empty()) {
        di = digit_instance(parse_pgm(read_text_file(opt.input)));
      } else {
        throw std::runtime_error("solve digits: pass --digits or --input (PGM)");
      }
      inst.graph = std::move(di.graph);
      inst.digit_target = std::move(di.target);
      inst.grid_w = di.width;
      inst.grid_h = di.height;
      break;
    }
  }
  return inst;
}

std::string provenance_comment(std::uint64_t seed, const std::string& digest,
                               const AnnealSchedule& sched) {
  return "# seed=" + std::to_string(seed) + " params_digest=" + digest +
         " schedule=" + format_schedule(sched) + "\n";
}

void write_snapshot(const fs::path& dir, const std::string& stem,
                    const SpinArray& s, int sweep, const ProblemInstance& inst,
                    const std::string& provenance) {
  if (inst.grid_w > 0) {
    const Bitmap b = spins_to_bitmap(s, inst.grid_w, inst.grid_h);
    std::string pgm = bitmap_to_pgm(b);
    pgm.insert(pgm.find('\n') + 1, provenance);  // comment after the magic line
    write_text_file((dir / (stem + ".pgm")).string(), pgm);
  } else {
    ordered_json j;
    j["sweep"] = sweep;
    j["spins"] = s;
    write_text_file((dir / (stem + ".json")).string(), j.dump() + "\n");
  }
}

int run_solve(Problem problem, const SolveOptions& opt) {
  const DeviceParams params = resolve_params(opt.params_path);
  const std::string digest = device_digest(params);
  const AnnealSchedule sched = opt.schedule_text.empty()
                                   ? AnnealSchedule::default_schedule()
                                   : parse_schedule(opt.schedule_text);

  OrderPolicy order;
  if (opt.order == "sequential" || opt.order == "seq")
    order = OrderPolicy::sequential;
  else if (opt.order == "random")
    order = OrderPolicy::random_permutation;
  else
    throw std::runtime_error("solve: --order must be sequential or random");

  std::unique_ptr<FlipBackend> backend;
  std::string curve_digest;
  if (opt.backend == "curve") {
    SwitchCurve curve = resolve_curve(opt.curve_path);
    curve_digest = content_digest(switch_curve_csv(curve));
    // Fail now, not mid-run, if the schedule can leave the measured range.
    for (const auto& ph : sched.phases)
      for (double I : {ph.map.I_min, ph.map.I_max}) psw_lookup(curve, I);
    backend = std::make_unique<CurveBackend>(std::move(curve));
  } else if (opt.backend == "llg") {
    backend = std::make_unique<LlgBackend>(params);
  } else if (opt.backend == "majority") {
    backend = std::make_unique<DeterministicMajorityBackend>();
  } else {
    throw std::runtime_error("solve: --backend must be curve, llg, or majority");
  }

  ProblemInstance inst = build_instance(problem, opt);
  const int n = inst.graph.size();

  const fs::path out_dir(opt.out_dir);
  fs::create_directories(out_dir);
  const std::string provenance = provenance_comment(opt.seed, digest, sched);

  RngStream rng_init(opt.seed, substream_id("initial-state"));
  SpinArray initial = random_spins(n, rng_init);

  SpinArray middle_spins;
  int middle_sweep = -1;
  const int half = opt.max_sweeps / 2;
  auto observer = [&](int sweep, const SpinArray& s) {
    if (sweep == 0)
      write_snapshot(out_dir, "initial", s, 0, inst, provenance);
    else if (sweep == half) {
      middle_spins = s;
      middle_sweep = sweep;
    }
  };

  const RunStats stats = run(inst.graph, initial, *backend, sched, opt.max_sweeps,
                             opt.target, order, params, opt.seed, observer);

  if (middle_sweep < 0) {  // stopped before the midpoint
    middle_spins = stats.final_spins;
    middle_sweep = stats.sweeps;
  }
  write_snapshot(out_dir, "middle", middle_spins, middle_sweep, inst, provenance);
  write_snapshot(out_dir, "final", stats.final_spins, stats.sweeps, inst, provenance);
  write_snapshot(out_dir, "best", stats.best_spins, stats.best_sweep, inst, provenance);

  {
    std::string csv = provenance + "sweep,energy,flips\n";
    for (std::size_t i = 0; i < stats.energy_trace.size(); i++) {
      csv += std::to_string(i) + "," + std::to_string(stats.energy_trace[i]) + ",";
      csv += std::to_string(i == 0 ? 0 : stats.flips_per_sweep[i - 1]);
      csv += "\n";
    }
    write_text_file((out_dir / "trace.csv").string(), csv);
  }

  ordered_json summary;
  summary["problem"] = problem == Problem::maxcut     ? "maxcut"
                       : problem == Problem::coloring ? "coloring"
                                                      : "digits";
  summary["input"] = opt.digits.empty() ? opt.input : opt.digits;
  summary["n_spins"] = n;
  summary["backend"] = backend->name();
  summary["seed"] = opt.seed;
  summary["schedule"] = format_schedule(sched);
  summary["order"] = opt.order == "random" ? "random" : "sequential";
  summary["params_digest"] = digest;
  if (!curve_digest.empty()) summary["curve_digest"] = curve_digest;
  summary["max_sweeps"] = opt.max_sweeps;
  summary["sweeps"] = stats.sweeps;
  summary["updates"] = stats.updates;
  if (opt.target) {
    summary["target"] = *opt.target;
    summary["reached_target"] = stats.reached_target;
  }
  summary["initial_energy"] = stats.energy_trace.front();
  summary["final_energy"] = stats.final_energy;
  summary["best_energy"] = stats.best_energy;
  summary["best_sweep"] = stats.best_sweep;
  summary["final_spins"] = stats.final_spins;
  summary["best_spins"] = stats.best_spins;
  {
    ordered_json e;
    e["write_pJ"] = stats.ledger.write_J * 1e12;
    e["read_pJ"] = stats.ledger.read_J * 1e12;
    e["overhead_pJ"] = stats.ledger.overhead_J * 1e12;
    e["total_pJ"] = stats.ledger.total_J() * 1e12;
    e["updates"] = stats.ledger.updates;
    e["per_update_pJ"] =
        stats.ledger.updates
            ? stats.ledger.total_J() * 1e12 / static_cast<double>(stats.ledger.updates)
            : 0.0;
    summary["energy"] = e;
  }

  bool converged = true;
  if (problem == Problem::maxcut) {
    ordered_json c;
    c["best_cut"] = cut_value(stats.best_spins, *inst.maxcut);
    c["final_cut"] = cut_value(stats.final_spins, *inst.maxcut);
    c["total_weight"] = total_weight(*inst.maxcut);
    summary["cut"] = c;
  } else if (problem == Problem::coloring) {
    const auto res = coloring_decode(stats.best_spins, *inst.coloring);
    ordered_json c;
    c["one_hot"] = res.one_hot;
    c["proper"] = res.proper;
    c["penalty"] = coloring_penalty(stats.best_spins, *inst.coloring);
    if (res.one_hot) c["colors"] = res.colors;
    if (!res.invalid_vertices.empty()) c["invalid_vertices"] = res.invalid_vertices;
    if (!res.conflict_edges.empty()) {
      ordered_json ce = nlohmann::json::array();
      for (auto [u, v] : res.conflict_edges) ce.push_back({u, v});
      c["conflict_edges"] = ce;
    }
    summary["coloring"] = c;
    if (!opt.target) converged = res.proper;
  } else {
    const double agree = pixel_agreement(stats.best_spins, *inst.digit_target);
    ordered_json c;
    c["pixel_agreement"] = agree;
    c["width"] = inst.grid_w;
    c["height"] = inst.grid_h;
    summary["digits"] = c;
    if (!opt.target) converged = agree == 1.0;
  }
  if (opt.target) converged = stats.reached_target;
  summary["converged"] = converged;

  write_text_file((out_dir / "summary.json").string(), summary.dump(2) + "\n");

  std::printf("spins %d  sweeps %d  best H %lld (sweep %d)  final H %lld\n", n,
              stats.sweeps, stats.best_energy, stats.best_sweep, stats.final_energy);
  std::printf("energy %.3f pJ over %llu updates  ->  %s/summary.json\n",
              stats.ledger.total_J() * 1e12,
              static_cast<unsigned long long>(stats.ledger.updates),
              out_dir.string().c_str());
  if (opt.strict && !converged) {
    std::fprintf(stderr, "strict: run did not converge\n");
    return kExitNotConverged;
  }
  return 0;
}

// ---- device commands ----------------------------------------------------------

int run_device_sweep(const std::string& params_path, double start_uA, double stop_uA,
                     double step_uA, std::uint64_t trials, std::uint64_t seed,
                     unsigned threads, const std::string& out_prefix, bool quiet) {
  const DeviceParams params = resolve_params(params_path);
  const LlgSystem sys = params.make_llg_system();

  auto progress = [&](std::size_t k, std::size_t total, const PswEstimate& est) {
    if (!quiet)
      std::fprintf(stderr, "  [%zu/%zu] I = %.1f uA  p = %.4f  [%.4f, %.4f]\n", k,
                   total, est.I_q * 1e6, est.p, est.ci_lo, est.ci_hi);
  };
  SwitchCurve curve = measure_switch_curve(
      sys, start_uA / 1e6, stop_uA / 1e6, step_uA / 1e6, trials,
      params.trial_protocol(), params.integrator(), seed, resolve_threads(threads),
      progress);
  curve.meta.torque_scale = params.torque_scale;
  curve.meta.params_digest = device_digest(params);

  ordered_json meta = switch_curve_meta_json(curve.meta);
  if (trials < 1000) meta["wide_intervals"] = true;

  write_text_file(out_prefix + ".csv", switch_curve_csv(curve));
  write_text_file(out_prefix + ".meta.json", meta.dump(2) + "\n");

  try {
    std::printf("p = 0.5 crossing at %.2f uA\n", find_fifty_percent(curve) * 1e6);
  } catch (const std::runtime_error&) {
    std::printf("p = 0.5 crossing: not bracketed in [%.1f, %.1f] uA\n", start_uA,
                stop_uA);
  }
  std::printf("wrote %s.csv and %s.meta.json\n", out_prefix.c_str(),
              out_prefix.c_str());
  return 0;
}

int run_device_calibrate(const std::string& params_path, double target_uA,
                         std::uint64_t bracket_trials, std::uint64_t refine_trials,
                         std::uint64_t seed, unsigned threads,
                         const std::string& out_path) {
  const DeviceParams params = resolve_params(params_path);
  CalibrationOptions opt;
  opt.target_I = target_uA / 1e6;
  opt.n_bracket = bracket_trials;
  opt.n_refine = refine_trials;
  opt.threads = resolve_threads(threads);
  const CalibrationResult res = calibrate_torque_scale(params, opt, seed);

  std::printf("torque_scale = %s  (unit-scale 50%% current %.2f uA, %llu trials)\n",
              fmt_double(res.torque_scale).c_str(), res.I_half_unit_scale * 1e6,
              static_cast<unsigned long long>(res.trials_used));
  if (!out_path.empty()) {
    DeviceParams calibrated = params;
    calibrated.torque_scale = res.torque_scale;
    save_device_params(calibrated, out_path);
    std::printf("wrote %s\n", out_path.c_str());
  }
  return 0;
}

// ---- verify / oracle ------------------------------------------------------------

SpinArray spins_from_state_file(const std::string& path) {
  const auto j = nlohmann::json::parse(read_text_file(path));
  const nlohmann::json* arr = nullptr;
  for (const char* key : {"best_spins", "final_spins", "spins"})
    if (j.contains(key) && j.at(key).is_array()) {
      arr = &j.at(key);
      break;
    }
  if (!arr) throw std::runtime_error(path + ": no spins/best_spins/final_spins field");
  SpinArray s = arr->get<SpinArray>();
  validate_spins(s);
  return s;
}

int run_verify(const std::string& problem, const std::string& input,
               const std::string& state_path, bool oracle, int oracle_limit) {
  const SpinArray s = spins_from_state_file(state_path);
  bool ok = true;
  CouplingGraph graph{1};

  if (problem == "maxcut") {
    const WeightedGraph wg = load_weighted_graph(input);
    graph = maxcut_encode(wg);
    const long long H = hamiltonian(s, graph);
    const long long cut = cut_value(s, wg);
    const long long expect_H = total_weight(wg) - 2 * cut;
    std::printf("H = %lld  cut = %lld  total weight = %lld\n", H, cut,
                total_weight(wg));
    if (H != expect_H) {
      std::printf("FAIL: H != total_weight - 2*cut (expected %lld)\n", expect_H);
      ok = false;
    }
  } else if (problem == "coloring") {
    const ColoringSpec spec = load_coloring_spec(input);
    const ColoringEncoding enc = coloring_encode(spec);
    graph = enc.graph;
    const long long H = hamiltonian(s, graph);
    const long long pen = coloring_penalty(s, spec);
    std::printf("H = %lld  penalty = %lld  offset = %lld\n", H, pen, enc.offset);
    if (H + enc.offset != enc.scale * pen) {
      std::printf("FAIL: H + offset != %lld * penalty\n", enc.scale);
      ok = false;
    }
    const auto res = coloring_decode(s, spec);
    std::printf("one_hot = %s  proper = %s\n", res.one_hot ? "yes" : "no",
                res.proper ? "yes" : "no");
  } else if (problem == "graph") {
    graph = load_coupling_graph(input);
    std::printf("H = %lld\n", hamiltonian(s, graph));
  } else {
    throw std::runtime_error("verify: --problem must be maxcut, coloring, or graph");
  }

  if (oracle) {
    const GroundResult g = brute_force(graph, oracle_limit);
    const long long H = hamiltonian(s, graph);
    std::printf("oracle ground energy = %lld (degeneracy %llu)\n", g.energy,
                static_cast<unsigned long long>(g.degeneracy));
    if (H == g.energy) {
      std::printf("state attains the ground energy\n");
    } else {
      std::printf("FAIL: state energy %lld is above the ground energy\n", H);
      ok = false;
    }
  }
  std::printf(ok ? "verify: OK\n" : "verify: FAILED\n");
  return ok ? 0 : kExitRuntime;
}

int run_oracle(const std::string& problem, const std::string& input, int limit) {
  CouplingGraph graph{1};
  std::optional<WeightedGraph> wg;
  std::optional<ColoringSpec> spec;
  if (problem == "maxcut") {
    wg = load_weighted_graph(input);
    graph = maxcut_encode(*wg);
  } else if (problem == "coloring") {
    spec = load_coloring_spec(input);
    graph = coloring_encode(*spec).graph;
  } else if (problem == "graph") {
    graph = load_coupling_graph(input);
  } else {
    throw std::runtime_error("oracle: --problem must be maxcut, coloring, or graph");
  }
  const GroundResult g = brute_force(graph, limit);
  std::printf("ground energy = %lld  degeneracy = %llu\n", g.energy,
              static_cast<unsigned long long>(g.degeneracy));
  if (wg)
    std::printf("max cut = %lld\n", cut_value(g.states.front(), *wg));
  if (spec) {
    const long long pen = coloring_penalty(g.states.front(), *spec);
    std::printf("ground penalty = %lld (%s)\n", pen,
                pen == 0 ? "proper coloring exists" : "no proper coloring at this k");
  }
  ordered_json out;
  out["ground_energy"] = g.energy;
  out["degeneracy"] = g.degeneracy;
  out["spins"] = g.states.front();
  std::printf("%s\n", out.dump().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin Hall effect MTJ Ising machine simulator"};
  app.require_subcommand(1);

  // device
  auto* device = app.add_subcommand("device", "device characterization");
  device->require_subcommand(1);

  std::string d_params, d_out = "curve";
  double d_start = 40, d_stop = 160, d_step = 5;
  std::uint64_t d_trials = 2000, d_seed = 1;
  unsigned d_threads = 1;
  bool d_quiet = false;
  auto* sweep_cmd = device->add_subcommand("sweep", "measure a switching curve");
  sweep_cmd->add_option("--params", d_params, "device parameter file");
  sweep_cmd->add_option("--start-uA", d_start, "first current [uA]");
  sweep_cmd->add_option("--stop-uA", d_stop, "last current [uA]");
  sweep_cmd->add_option("--step-uA", d_step, "current step [uA]");
  sweep_cmd->add_option("--trials", d_trials, "trials per point");
  sweep_cmd->add_option("--seed", d_seed, "rng seed");
  sweep_cmd->add_option("--threads", d_threads, "worker threads (0 = all cores)");
  sweep_cmd->add_option("--out", d_out, "output prefix (<out>.csv, <out>.meta.json)");
  sweep_cmd->add_flag("--quiet", d_quiet, "suppress per-point progress");

  std::string c_params, c_out;
  double c_target = 90;
  std::uint64_t c_bracket = 1500, c_refine = 4000, c_seed = 1;
  unsigned c_threads = 1;
  auto* cal_cmd = device->add_subcommand("calibrate", "fit torque_scale");
  cal_cmd->add_option("--params", c_params, "device parameter file");
  cal_cmd->add_option("--target-uA", c_target, "current that should switch at 50%");
  cal_cmd->add_option("--bracket-trials", c_bracket, "trials per bracketing probe");
  cal_cmd->add_option("--refine-trials", c_refine, "trials per refinement probe");
  cal_cmd->add_option("--seed", c_seed, "rng seed");
  cal_cmd->add_option("--threads", c_threads, "worker threads (0 = all cores)");
  cal_cmd->add_option("--out", c_out, "write calibrated parameter file here");

  // solve
  auto* solve = app.add_subcommand("solve", "anneal a problem instance");
  solve->require_subcommand(1);
  SolveOptions so;
  std::vector<std::pair<std::string, Problem>> kinds = {
      {"maxcut", Problem::maxcut},
      {"coloring", Problem::coloring},
      {"digits", Problem::digits}};
  std::vector<CLI::App*> solve_subs;
  long long target_value = 0;
  for (auto& [name, kind] : kinds) {
    auto* sub = solve->add_subcommand(name, "solve a " + name + " instance");
    sub->add_option("--input", so.input, "problem file");
    if (kind == Problem::digits)
      sub->add_option("--digits", so.digits, "glyph string, e.g. 0124");
    sub->add_option("--params", so.params_path, "device parameter file");
    sub->add_option("--curve", so.curve_path, "switching curve CSV (curve backend)");
    sub->add_option("--backend", so.backend, "curve | llg | majority");
    sub->add_option("--sweeps", so.max_sweeps, "maximum sweeps");
    sub->add_option("--schedule", so.schedule_text,
                    "phases start:Imin_uA:Imax_uA,... (default 0:60:120,400:40:160)");
    sub->add_option("--order", so.order, "sequential | random");
    sub->add_option("--seed", so.seed, "rng seed");
    sub->add_option("--target", target_value, "stop at this energy or lower");
    sub->add_option("--out-dir", so.out_dir, "output directory");
    sub->add_flag("--strict", so.strict, "nonzero exit unless converged");
    solve_subs.push_back(sub);
  }

  // verify
  std::string v_problem = "graph", v_input, v_state;
  bool v_oracle = false;
  int v_limit = 24;
  auto* verify_cmd = app.add_subcommand("verify", "recheck a reported state");
  verify_cmd->add_option("--problem", v_problem, "maxcut | coloring | graph");
  verify_cmd->add_option("--input", v_input, "problem file")->required();
  verify_cmd->add_option("--state", v_state, "JSON with spins/best_spins")->required();
  verify_cmd->add_flag("--oracle", v_oracle, "compare against exhaustive enumeration");
  verify_cmd->add_option("--limit", v_limit, "max spins for the oracle");

  // oracle
  std::string o_problem = "graph", o_input;
  int o_limit = 24;
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive ground state search");
  oracle_cmd->add_option("--problem", o_problem, "maxcut | coloring | graph");
  oracle_cmd->add_option("--input", o_input, "problem file")->required();
  oracle_cmd->add_option("--limit", o_limit, "max spins to enumerate");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep_cmd->parsed())
      return run_device_sweep(d_params, d_start, d_stop, d_step, d_trials, d_seed,
                              d_threads, d_out, d_quiet);
    if (cal_cmd->parsed())
      return run_device_calibrate(c_params, c_target, c_bracket, c_refine, c_seed,
                                  c_threads, c_out);
    for (std::size_t i = 0; i < solve_subs.size(); i++)
      if (solve_subs[i]->parsed()) {
        if (solve_subs[i]->count("--target")) so.target = target_value;
        return run_solve(kinds[i].second, so);
      }
    if (verify_cmd->parsed())
      return run_verify(v_problem, v_input, v_state, v_oracle, v_limit);
    if (oracle_cmd->parsed()) return run_oracle(o_problem, o_input, o_limit);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return 0;
}
