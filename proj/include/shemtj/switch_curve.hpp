#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "shemtj/device.hpp"
#include "shemtj/io.hpp"
#include "shemtj/switching.hpp"

namespace shemtj {

struct SwitchPoint {
  double I = 0.0;  // [A]
  double p = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;
};

struct SwitchCurveMeta {
  std::uint64_t n_trials = 0;
  double t_write = 0.0, t_relax = 0.0, burn_in = 0.0, dt = 0.0;  // [s]
  double torque_scale = 1.0;
  std::uint64_t seed = 0;
  std::string params_digest;
};

struct SwitchCurve {
  std::vector<SwitchPoint> points;
  SwitchCurveMeta meta;

  void validate() const {
    if (points.size() < 2)
      throw std::invalid_argument("switch curve: need at least two points");
    for (std::size_t i = 0; i < points.size(); i++) {
      const auto& pt = points[i];
      if (!(pt.p >= 0 && pt.p <= 1))
        throw std::invalid_argument("switch curve: probability outside [0,1]");
      if (i && !(points[i].I > points[i - 1].I))
        throw std::invalid_argument("switch curve: currents must be strictly increasing");
    }
  }
};

// Piecewise-linear interpolation between measured points. Queries outside the
// measured range are an error (no extrapolation); a relative slack of 1e-9
// absorbs round-off at the end points.
inline double psw_lookup(const SwitchCurve& curve, double I) {
  const auto& pts = curve.points;
  if (pts.size() < 2) throw std::invalid_argument("psw_lookup: curve has too few points");
  const double lo = pts.front().I, hi = pts.back().I;
  const double slack = 1e-9 * std::max(std::abs(lo), std::abs(hi));
  if (I < lo - slack || I > hi + slack)
    throw std::out_of_range("psw_lookup: current " + fmt_double(I * 1e6) +
                            " uA outside measured range [" + fmt_double(lo * 1e6) +
                            ", " + fmt_double(hi * 1e6) + "] uA");
  const double Ic = std::clamp(I, lo, hi);
  auto it = std::upper_bound(pts.begin(), pts.end(), Ic,
                             [](double v, const SwitchPoint& p) { return v < p.I; });
  if (it == pts.begin()) return pts.front().p;
  if (it == pts.end()) return pts.back().p;
  const auto& b = *it;
  const auto& a = *(it - 1);
  const double f = (Ic - a.I) / (b.I - a.I);
  return a.p + f * (b.p - a.p);
}

// Sweep the drive current and measure the switching probability at each step.
inline SwitchCurve measure_switch_curve(
    const LlgSystem& sys, double I_start, double I_stop, double I_step,
    std::uint64_t n_trials, const TrialProtocol& proto, const IntegratorConfig& cfg,
    std::uint64_t seed, unsigned threads = 1,
    const std::function<void(std::size_t, std::size_t, const PswEstimate&)>& progress = {}) {
  if (!(I_step > 0) || !(I_stop >= I_start))
    throw std::invalid_argument("measure_switch_curve: bad sweep range");
  const auto n_pts = static_cast<std::size_t>(
      std::floor((I_stop - I_start) / I_step + 1.0 + 1e-9));
  SwitchCurve curve;
  curve.points.reserve(n_pts);
  for (std::size_t k = 0; k < n_pts; k++) {
    const double I = I_start + static_cast<double>(k) * I_step;
    const auto est = estimate_psw(sys, I, n_trials, proto, cfg, seed,
                                  substream_id("sweep-point", k), threads);
    curve.points.push_back({I, est.p, est.ci_lo, est.ci_hi});
    if (progress) progress(k + 1, n_pts, est);
  }
  curve.meta.n_trials = n_trials;
  curve.meta.t_write = proto.timing.t_write;
  curve.meta.t_relax = proto.timing.t_relax;
  curve.meta.burn_in = proto.burn_in;
  curve.meta.dt = cfg.dt;
  curve.meta.seed = seed;
  curve.validate();
  return curve;
}

// First crossing of p = 0.5, linearly interpolated. Requires the curve to
// actually bracket one half.
inline double find_fifty_percent(const SwitchCurve& curve) {
  const auto& pts = curve.points;
  for (std::size_t i = 1; i < pts.size(); i++) {
    const auto& a = pts[i - 1];
    const auto& b = pts[i];
    if ((a.p - 0.5) * (b.p - 0.5) <= 0 && a.p != b.p) {
      if (a.p == 0.5 && b.p == 0.5) continue;
      return a.I + (0.5 - a.p) / (b.p - a.p) * (b.I - a.I);
    }
  }
  throw std::runtime_error("find_fifty_percent: curve never crosses 0.5");
}

// ---- persistence ---------------------------------------------------------

inline std::string switch_curve_csv(const SwitchCurve& curve) {
  std::ostringstream out;
  out << "I_uA,p,ci_lo,ci_hi\n";
  for (const auto& pt : curve.points)
    out << fmt_scaled(pt.I, 1e6) << "," << fmt_double(pt.p) << ","
        << fmt_double(pt.ci_lo) << "," << fmt_double(pt.ci_hi) << "\n";
  return out.str();
}

inline nlohmann::ordered_json switch_curve_meta_json(const SwitchCurveMeta& m) {
  nlohmann::ordered_json j;
  j["n_trials"] = m.n_trials;
  j["t_write_ns"] = scaled_for_display(m.t_write, 1e9);
  j["t_relax_ns"] = scaled_for_display(m.t_relax, 1e9);
  j["burn_in_ns"] = scaled_for_display(m.burn_in, 1e9);
  j["dt_ps"] = scaled_for_display(m.dt, 1e12);
  j["torque_scale"] = m.torque_scale;
  j["seed"] = m.seed;
  j["params_digest"] = m.params_digest;
  return j;
}

inline void save_switch_curve(const SwitchCurve& curve, const std::string& csv_path,
                              const std::string& meta_path) {
  write_text_file(csv_path, switch_curve_csv(curve));
  write_text_file(meta_path, switch_curve_meta_json(curve.meta).dump(2) + "\n");
}

inline SwitchCurve parse_switch_curve_csv(const std::string& text) {
  SwitchCurve curve;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "I_uA,p,ci_lo,ci_hi")
    throw ParseError("switch curve csv: bad header");
  int n = 1;
  while (std::getline(in, line)) {
    n++;
    std::string_view rest = trim(line);
    if (rest.empty()) continue;
    SwitchPoint pt;
    double* fields[4] = {&pt.I, &pt.p, &pt.ci_lo, &pt.ci_hi};
    for (int f = 0; f < 4; f++) {
      const auto comma = rest.find(',');
      const bool last = f == 3;
      if (last != (comma == std::string_view::npos))
        throw ParseError("switch curve csv line " + std::to_string(n) +
                         ": expected 4 fields");
      *fields[f] = parse_double(trim(last ? rest : rest.substr(0, comma)));
      if (!last) rest = rest.substr(comma + 1);
    }
    pt.I /= 1e6;
    curve.points.push_back(pt);
  }
  curve.validate();
  return curve;
}

inline SwitchCurveMeta parse_switch_curve_meta(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SwitchCurveMeta m;
  m.n_trials = j.at("n_trials").get<std::uint64_t>();
  m.t_write = j.at("t_write_ns").get<double>() / 1e9;
  m.t_relax = j.at("t_relax_ns").get<double>() / 1e9;
  m.burn_in = j.at("burn_in_ns").get<double>() / 1e9;
  m.dt = j.at("dt_ps").get<double>() / 1e12;
  m.torque_scale = j.at("torque_scale").get<double>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.params_digest = j.value("params_digest", std::string{});
  return m;
}

inline SwitchCurve load_switch_curve(const std::string& csv_path,
                                     const std::string& meta_path = {}) {
  SwitchCurve curve = parse_switch_curve_csv(read_text_file(csv_path));
  if (!meta_path.empty()) curve.meta = parse_switch_curve_meta(read_text_file(meta_path));
  return curve;
}

// ---- torque-scale calibration ---------------------------------------------

struct CalibrationOptions {
  double target_I = 90e-6;     // current that should switch with p = target_p
  double target_p = 0.5;
  std::uint64_t n_bracket = 1500;
  std::uint64_t n_refine = 4000;
  unsigned threads = 1;
};

struct CalibrationResult {
  double torque_scale = 1.0;
  double I_half_unit_scale = 0.0;  // 50% current of the uncalibrated device [A]
  std::uint64_t trials_used = 0;
};

// The torque scale multiplies the spin current, so P(I; s) = P(sI; 1) exactly.
// Locate the 50% crossing of the uncalibrated device by bracket + bisection,
// then sharpen it with a local linear fit; the scale is the ratio to the
// target current.
inline CalibrationResult calibrate_torque_scale(const DeviceParams& params,
                                                const CalibrationOptions& opt,
                                                std::uint64_t seed) {
  if (!(opt.target_I > 0) || !(opt.target_p > 0) || !(opt.target_p < 1))
    throw std::invalid_argument("calibrate: bad target");
  DeviceParams base = params;
  base.torque_scale = 1.0;
  const LlgSystem sys = base.make_llg_system();
  const auto proto = base.trial_protocol();
  const auto cfg = base.integrator();

  std::uint64_t salt = 0;
  std::uint64_t used = 0;
  auto prob = [&](double I, std::uint64_t n) {
    const auto e = estimate_psw(sys, I, n, proto, cfg, seed,
                                substream_id("calibrate", salt++), opt.threads);
    used += n;
    return e.p;
  };

  // bracket the crossing on a geometric ladder
  double lo = opt.target_I, hi = opt.target_I;
  double p_hi = prob(hi, opt.n_bracket);
  int guard = 0;
  if (p_hi < opt.target_p) {
    while (p_hi < opt.target_p) {
      if (++guard > 24) throw std::runtime_error("calibrate: no crossing found (high)");
      lo = hi;
      hi *= 1.5;
      p_hi = prob(hi, opt.n_bracket);
    }
  } else {
    double p_lo = p_hi;
    while (p_lo >= opt.target_p) {
      if (++guard > 24) throw std::runtime_error("calibrate: no crossing found (low)");
      hi = lo;
      lo /= 1.5;
      p_lo = prob(lo, opt.n_bracket);
    }
  }

  // bisection while the interval is wide relative to the sigmoid
  for (int it = 0; it < 5; it++) {
    const double mid = 0.5 * (lo + hi);
    if (prob(mid, opt.n_bracket) < opt.target_p)
      lo = mid;
    else
      hi = mid;
  }

  // local linear fit of p(I) around the bisected estimate
  const double center = 0.5 * (lo + hi);
  const double span = std::max(hi - lo, 0.02 * center);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int k_pts = 5;
  for (int k = 0; k < k_pts; k++) {
    const double x = center + span * (k - (k_pts - 1) / 2.0) / (k_pts - 1);
    const double y = prob(x, opt.n_refine);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (k_pts * sxy - sx * sy) / (k_pts * sxx - sx * sx);
  const double icept = (sy - slope * sx) / k_pts;
  if (!(slope > 0)) throw std::runtime_error("calibrate: sigmoid slope not positive");
  const double I_half = (opt.target_p - icept) / slope;

  CalibrationResult r;
  r.I_half_unit_scale = I_half;
  r.torque_scale = I_half / opt.target_I;
  r.trials_used = used;
  return r;
}

}  // namespace shemtj
