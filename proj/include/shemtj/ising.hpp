#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "shemtj/device.hpp"
#include "shemtj/io.hpp"
#include "shemtj/rng.hpp"
#include "shemtj/switch_curve.hpp"

namespace shemtj {

using SpinArray = std::vector<int>;  // each entry +1 or -1

inline void validate_spins(const SpinArray& s) {
  for (int v : s)
    if (v != 1 && v != -1) throw std::invalid_argument("spins must be +-1");
}

inline SpinArray random_spins(int n, RngStream& rng) {
  SpinArray s(n);
  for (auto& v : s) v = (rng.next_u64() & 1) ? 1 : -1;
  return s;
}

// Sparse symmetric integer couplings plus external fields. Zero entries are
// never stored; accumulating a coupling to zero removes it.
class CouplingGraph {
 public:
  explicit CouplingGraph(int n) : n_(n), adj_(n), h_(n, 0) {
    if (n <= 0) throw std::invalid_argument("coupling graph: n must be positive");
  }

  int size() const { return n_; }

  void add_coupling(int i, int j, long long J) {
    check(i);
    check(j);
    if (i == j) throw std::invalid_argument("coupling graph: no self-couplings");
    if (J == 0) throw std::invalid_argument("coupling graph: zero coupling weight");
    apply(i, j, J);
    apply(j, i, J);
  }

  void add_field(int i, long long h) {
    check(i);
    h_[i] += h;
  }

  void set_field(int i, long long h) {
    check(i);
    h_[i] = h;
  }

  long long field(int i) const {
    check(i);
    return h_[i];
  }

  long long coupling(int i, int j) const {
    check(i);
    check(j);
    auto it = adj_[i].find(j);
    return it == adj_[i].end() ? 0 : it->second;
  }

  const std::map<int, long long>& neighbors(int i) const {
    check(i);
    return adj_[i];
  }

  // Canonical (i < j) edge list, sorted.
  std::vector<std::tuple<int, int, long long>> edges() const {
    std::vector<std::tuple<int, int, long long>> out;
    for (int i = 0; i < n_; i++)
      for (const auto& [j, J] : adj_[i])
        if (j > i) out.emplace_back(i, j, J);
    return out;
  }

 private:
  void check(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("coupling graph: index out of range");
  }
  void apply(int i, int j, long long J) {
    auto [it, fresh] = adj_[i].try_emplace(j, 0);
    it->second += J;
    if (it->second == 0) adj_[i].erase(it);
  }

  int n_;
  std::vector<std::map<int, long long>> adj_;
  std::vector<long long> h_;
};

// H = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i; positive J favors parallel spins.
inline long long hamiltonian(const SpinArray& s, const CouplingGraph& g) {
  if (static_cast<int>(s.size()) != g.size())
    throw std::invalid_argument("hamiltonian: spin/graph size mismatch");
  long long H = 0;
  for (int i = 0; i < g.size(); i++) {
    for (const auto& [j, J] : g.neighbors(i))
      if (j > i) H -= J * s[i] * s[j];
    H -= g.field(i) * s[i];
  }
  return H;
}

// ---- majority vote ---------------------------------------------------------

struct VoteCount {
  long long flip = 0;   // total weight preferring -s_i
  long long keep = 0;   // total weight preferring +s_i
  long long total() const { return flip + keep; }
};

// Each neighbor j votes with weight |J_ij| for the state sign(J_ij s_j); the
// field h_i votes with weight |h_i| for sign(h_i).
inline VoteCount count_votes(int i, const SpinArray& s, const CouplingGraph& g) {
  VoteCount v;
  for (const auto& [j, J] : g.neighbors(i)) {
    const int preferred = J > 0 ? s[j] : -s[j];
    (preferred == -s[i] ? v.flip : v.keep) += J > 0 ? J : -J;
  }
  if (const long long h = g.field(i); h != 0) {
    const int preferred = h > 0 ? 1 : -1;
    (preferred == -s[i] ? v.flip : v.keep) += h > 0 ? h : -h;
  }
  return v;
}

struct VoteCurrentMap {
  double I_min = 60e-6;  // drive at zero flip votes [A]
  double I_max = 120e-6; // drive at unanimous flip votes [A]

  void validate() const {
    if (!(I_min > 0) || !(I_max > I_min))
      throw std::invalid_argument("vote map: need 0 < I_min < I_max");
  }
};

// Affine vote-to-current mapping; an isolated spin (no weight at all) drives
// at I_min.
inline double vote_to_current(const VoteCount& v, const VoteCurrentMap& map) {
  map.validate();
  if (v.flip < 0 || v.keep < 0 || v.flip > v.total())
    throw std::invalid_argument("vote_to_current: malformed vote count");
  if (v.total() == 0) return map.I_min;
  return map.I_min + static_cast<double>(v.flip) * (map.I_max - map.I_min) /
                         static_cast<double>(v.total());
}

// ---- flip backends ---------------------------------------------------------

class FlipBackend {
 public:
  virtual ~FlipBackend() = default;
  // One switching attempt for a spin currently in state `current` (+-1) under
  // drive magnitude I [A]; returns true when the device flipped.
  virtual bool sample_flip(const VoteCount& votes, double I, int current,
                           RngStream& rng) = 0;
  virtual std::string name() const = 0;
};

// Lookup backend: samples against the measured switching curve.
class CurveBackend : public FlipBackend {
 public:
  explicit CurveBackend(SwitchCurve curve) : curve_(std::move(curve)) {
    curve_.validate();
  }
  bool sample_flip(const VoteCount&, double I, int, RngStream& rng) override {
    return rng.uniform() < psw_lookup(curve_, I);
  }
  std::string name() const override { return "curve"; }
  const SwitchCurve& curve() const { return curve_; }

 private:
  SwitchCurve curve_;
};

// Live-physics backend: every attempt is a full stochastic write event.
class LlgBackend : public FlipBackend {
 public:
  LlgBackend(const DeviceParams& params)
      : sys_(params.make_llg_system()),
        proto_(params.trial_protocol()),
        cfg_(params.integrator()) {}

  bool sample_flip(const VoteCount&, double I, int current, RngStream& rng) override {
    if (current != 1 && current != -1)
      throw std::invalid_argument("llg backend: spin must be +-1");
    MagnetizationState st{sys_.anisotropy().easy_axis * static_cast<double>(current), 0.0};
    if (proto_.burn_in > 0) st = sys_.run_segment(st, 0.0, proto_.burn_in, cfg_, rng);
    // drive toward the opposite of the current state
    const auto ev =
        simulate_write_event(sys_, st, -current * I, proto_.timing, cfg_, rng);
    return ev.flipped;
  }
  std::string name() const override { return "llg"; }

 private:
  LlgSystem sys_;
  TrialProtocol proto_;
  IntegratorConfig cfg_;
};

// Test backend: deterministic classical majority rule.
class DeterministicMajorityBackend : public FlipBackend {
 public:
  bool sample_flip(const VoteCount& votes, double, int, RngStream&) override {
    return 2 * votes.flip > votes.total();
  }
  std::string name() const override { return "majority"; }
};

// ---- update loop -----------------------------------------------------------

struct UpdateResult {
  int new_spin = 0;
  bool flipped = false;
  double I_drive = 0.0;
  VoteCount votes;
  EnergyLedger energy;
};

// One hardware update: sense the spin through the read path, gather votes,
// drive a write pulse toward the opposite state, account the energy.
inline UpdateResult update_spin(int i, SpinArray& s, const CouplingGraph& g,
                                FlipBackend& backend, const VoteCurrentMap& map,
                                const DeviceParams& dev, RngStream& rng) {
  if (i < 0 || i >= static_cast<int>(s.size()))
    throw std::out_of_range("update_spin: index out of range");
  const int sensed = read_state(resistance_of_spin(s[i], dev), dev);
  UpdateResult r;
  r.votes = count_votes(i, s, g);
  r.I_drive = vote_to_current(r.votes, map);
  try {
    r.flipped = backend.sample_flip(r.votes, r.I_drive, sensed, rng);
  } catch (const std::exception& e) {
    throw std::runtime_error("update_spin: spin " + std::to_string(i) +
                             ": " + e.what());
  }
  if (r.flipped) s[i] = -sensed;
  r.new_spin = s[i];
  r.energy = account_update(dev, r.I_drive);
  return r;
}

enum class OrderPolicy { sequential, random_permutation };

struct SweepStats {
  long long energy_after = 0;
  int flips = 0;
  EnergyLedger energy;
};

// One asynchronous sweep: every spin updated exactly once, each update seeing
// the newest neighbor states; the Hamiltonian is recomputed afterwards.
inline SweepStats sweep(SpinArray& s, const CouplingGraph& g, FlipBackend& backend,
                        const VoteCurrentMap& map, OrderPolicy order,
                        const DeviceParams& dev, RngStream& rng_updates,
                        RngStream& rng_order) {
  const int n = g.size();
  if (static_cast<int>(s.size()) != n)
    throw std::invalid_argument("sweep: spin/graph size mismatch");

  std::vector<int> idx(n);
  for (int i = 0; i < n; i++) idx[i] = i;
  if (order == OrderPolicy::random_permutation) {
    for (int i = n - 1; i > 0; i--) {
      const auto j = static_cast<int>(rng_order.uniform_below(i + 1));
      std::swap(idx[i], idx[j]);
    }
  }

  SweepStats st;
  for (int i : idx) {
    const auto r = update_spin(i, s, g, backend, map, dev, rng_updates);
    st.flips += r.flipped ? 1 : 0;
    st.energy += r.energy;
  }
  st.energy_after = hamiltonian(s, g);
  return st;
}

// ---- annealing schedule ----------------------------------------------------

struct SchedulePhase {
  int start_sweep = 0;
  VoteCurrentMap map;
};

struct AnnealSchedule {
  std::vector<SchedulePhase> phases;

  void validate() const {
    if (phases.empty()) throw std::invalid_argument("schedule: needs at least one phase");
    if (phases.front().start_sweep != 0)
      throw std::invalid_argument("schedule: first phase must start at sweep 0");
    for (std::size_t k = 0; k < phases.size(); k++) {
      phases[k].map.validate();
      if (k && phases[k].start_sweep <= phases[k - 1].start_sweep)
        throw std::invalid_argument("schedule: phase starts must strictly increase");
    }
  }

  const VoteCurrentMap& map_for_sweep(int sweep) const {
    std::size_t pick = 0;
    for (std::size_t k = 0; k < phases.size(); k++)
      if (phases[k].start_sweep <= sweep) pick = k;
    return phases[pick].map;
  }

  static AnnealSchedule default_schedule() {
    return {{{0, {60e-6, 120e-6}}, {400, {40e-6, 160e-6}}}};
  }
};

// "start:imin_uA:imax_uA,start:imin_uA:imax_uA,..."
inline AnnealSchedule parse_schedule(std::string_view text) {
  AnnealSchedule sched;
  std::string buf(text);
  std::istringstream in(buf);
  std::string phase;
  while (std::getline(in, phase, ',')) {
    const auto a = phase.find(':');
    const auto b = phase.find(':', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos)
      throw ParseError("schedule phase '" + phase + "' must be start:imin_uA:imax_uA");
    SchedulePhase ph;
    ph.start_sweep = static_cast<int>(parse_int(trim(phase.substr(0, a))));
    ph.map.I_min = parse_scaled(trim(phase.substr(a + 1, b - a - 1)), 1e6);
    ph.map.I_max = parse_scaled(trim(phase.substr(b + 1)), 1e6);
    sched.phases.push_back(ph);
  }
  sched.validate();
  return sched;
}

inline std::string format_schedule(const AnnealSchedule& sched) {
  std::string out;
  for (std::size_t k = 0; k < sched.phases.size(); k++) {
    if (k) out += ",";
    out += std::to_string(sched.phases[k].start_sweep) + ":" +
           fmt_scaled(sched.phases[k].map.I_min, 1e6) + ":" +
           fmt_scaled(sched.phases[k].map.I_max, 1e6);
  }
  return out;
}

// ---- full run ---------------------------------------------------------------

struct RunStats {
  std::vector<long long> energy_trace;  // length = sweeps + 1, starts with H(initial)
  std::vector<int> flips_per_sweep;
  EnergyLedger ledger;
  int sweeps = 0;
  std::uint64_t updates = 0;
  bool reached_target = false;
  SpinArray final_spins;
  long long final_energy = 0;
  SpinArray best_spins;     // lowest-energy state seen at any sweep boundary
  long long best_energy = 0;
  int best_sweep = 0;
};

// Run sweeps under the schedule until target energy (if given) or max_sweeps.
// The observer, when set, is called with (sweep, spins) after every sweep and
// once with sweep 0 for the initial state.
inline RunStats run(const CouplingGraph& g, SpinArray initial, FlipBackend& backend,
                    const AnnealSchedule& schedule, int max_sweeps,
                    std::optional<long long> target_energy, OrderPolicy order,
                    const DeviceParams& dev, std::uint64_t seed,
                    const std::function<void(int, const SpinArray&)>& observer = {}) {
  if (max_sweeps < 1) throw std::invalid_argument("run: max_sweeps must be >= 1");
  validate_spins(initial);
  schedule.validate();

  RngStream rng_updates(seed, substream_id("spin-update"));
  RngStream rng_order(seed, substream_id("sweep-order"));

  RunStats stats;
  SpinArray s = std::move(initial);
  long long H = hamiltonian(s, g);
  stats.energy_trace.push_back(H);
  stats.best_energy = H;
  stats.best_spins = s;
  stats.best_sweep = 0;
  if (observer) observer(0, s);

  for (int sw = 0; sw < max_sweeps; sw++) {
    const auto& map = schedule.map_for_sweep(sw);
    const auto st = sweep(s, g, backend, map, order, dev, rng_updates, rng_order);
    stats.energy_trace.push_back(st.energy_after);
    stats.flips_per_sweep.push_back(st.flips);
    stats.ledger += st.energy;
    stats.sweeps = sw + 1;
    stats.updates += static_cast<std::uint64_t>(g.size());
    if (st.energy_after < stats.best_energy) {
      stats.best_energy = st.energy_after;
      stats.best_spins = s;
      stats.best_sweep = sw + 1;
    }
    if (observer) observer(sw + 1, s);
    if (target_energy && st.energy_after <= *target_energy) {
      stats.reached_target = true;
      break;
    }
  }
  stats.final_spins = std::move(s);
  stats.final_energy = stats.energy_trace.back();
  return stats;
}

// ---- coupling graph file ----------------------------------------------------

// Text format: first non-comment line is n; then `i j J_ij` couplings and
// `i h_i` fields, '#' comments allowed. Duplicate couplings accumulate.
inline CouplingGraph parse_coupling_graph(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::optional<CouplingGraph> g;
  while (std::getline(in, raw)) {
    line_no++;
    std::string_view line = trim(raw);
    if (auto pos = line.find('#'); pos != std::string_view::npos)
      line = trim(line.substr(0, pos));
    if (line.empty()) continue;
    std::istringstream ls{std::string(line)};
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    try {
      if (!g) {
        if (tok.size() != 1) throw ParseError("expected spin count");
        const long long n = parse_int(tok[0]);
        if (n <= 0 || n > 1'000'000) throw ParseError("spin count out of range");
        g.emplace(static_cast<int>(n));
      } else if (tok.size() == 3) {
        g->add_coupling(static_cast<int>(parse_int(tok[0])),
                        static_cast<int>(parse_int(tok[1])), parse_int(tok[2]));
      } else if (tok.size() == 2) {
        g->add_field(static_cast<int>(parse_int(tok[0])), parse_int(tok[1]));
      } else {
        throw ParseError("expected 'i j J' or 'i h'");
      }
    } catch (const std::exception& e) {
      throw ParseError("coupling graph line " + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  if (!g) throw ParseError("coupling graph: empty file");
  return *g;
}

inline std::string serialize_coupling_graph(const CouplingGraph& g) {
  std::ostringstream out;
  out << g.size() << "\n";
  for (const auto& [i, j, J] : g.edges()) out << i << " " << j << " " << J << "\n";
  for (int i = 0; i < g.size(); i++)
    if (g.field(i) != 0) out << i << " " << g.field(i) << "\n";
  return out.str();
}

inline CouplingGraph load_coupling_graph(const std::string& path) {
  return parse_coupling_graph(read_text_file(path));
}

}  // namespace shemtj
