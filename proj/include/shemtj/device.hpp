#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shemtj/demag.hpp"
#include "shemtj/fields.hpp"
#include "shemtj/io.hpp"
#include "shemtj/llg.hpp"
#include "shemtj/magnetics.hpp"
#include "shemtj/switching.hpp"

namespace shemtj {

// Full device description. Values are SI internally; the parameter-file
// parser converts from the unit named in each key at the boundary.
struct DeviceParams {
  // free layer ellipse
  double axis_long = 112.5e-9;   // [m]
  double axis_short = 45e-9;     // [m]
  double t_free = 1.5e-9;        // [m]
  // spin Hall channel
  double t_hm = 2.3e-9;          // heavy metal thickness [m]
  double w_mtj = 45e-9;          // MTJ width over the channel [m]
  double theta_sh = 0.3;         // spin Hall angle
  double rho_hm = 2.0e-6;        // channel resistivity [ohm m]
  // magnet
  double Ms = 1.2573e6;          // [A/m]
  double alpha = 0.1;
  double barrier_kT = 60.0;      // easy-axis barrier in units of kB T
  double temperature = 300.0;    // [K]
  // tunnel junction
  double t_mgo = 1.4e-9;         // [m]
  double R_p = 8.56e3;           // [ohm]
  double R_ap = 18.31e3;         // [ohm]
  // pulse protocol and supply
  double t_write = 3e-9;         // [s]
  double t_relax = 6e-9;         // [s]
  double t_read = 1e-9;          // [s]
  double V_dd = 1.0;             // [V]
  double I_read = 38e-6;         // read current for energy accounting [A]
  double overhead_energy = 1e-14;  // fixed per-update overhead [J]
  // model knobs
  double torque_scale = 1.0;     // multiplies the spin current
  Vec3 polarization_axis{1, 0, 0};
  bool demag_override_set = false;
  Vec3 demag_override{0, 0, 1};  // used when demag_override_set
  double dt = 1e-13;             // integrator step [s]
  double burn_in = 1e-9;         // pre-pulse thermalization [s]

  void validate() const {
    geometry().validate();
    material().validate();
    if (!(t_hm > 0) || !(w_mtj > 0)) throw std::invalid_argument("device: channel dims");
    if (!(theta_sh > 0 && theta_sh <= 1))
      throw std::invalid_argument("device: theta_sh must be in (0, 1]");
    if (!(rho_hm > 0) || !(t_mgo > 0)) throw std::invalid_argument("device: stack dims");
    if (!(R_p > 0) || !(R_ap > R_p))
      throw std::invalid_argument("device: need 0 < R_p < R_ap");
    if (!(barrier_kT > 0)) throw std::invalid_argument("device: barrier must be positive");
    if (!(t_write > 0) || t_relax < 0 || !(t_read > 0))
      throw std::invalid_argument("device: pulse timings");
    if (!(V_dd > 0) || !(I_read >= 0) || !(overhead_energy >= 0))
      throw std::invalid_argument("device: electrical params");
    if (!(torque_scale > 0)) throw std::invalid_argument("device: torque_scale");
    if (!(burn_in >= 0)) throw std::invalid_argument("device: burn_in");
    IntegratorConfig{dt}.validate();
    anisotropy().validate();
  }

  Geometry geometry() const { return {axis_long, axis_short, t_free}; }
  MaterialParams material() const { return {Ms, alpha, temperature}; }
  double barrier_J() const { return barrier_kT * constants::k_B * temperature; }

  Vec3 demag() const {
    if (demag_override_set) return demag_override;
    return demag_factors_elliptic_cylinder(axis_long, axis_short, t_free);
  }

  AnisotropyModel anisotropy() const {
    const Vec3 N = demag();
    const Vec3 easy{1, 0, 0};
    return {easy, calibrate_hk(barrier_J(), material(), geometry(), N, easy), N};
  }

  double gain() const { return spin_hall_gain(theta_sh, w_mtj, t_hm); }

  LlgSystem make_llg_system() const {
    return LlgSystem(material(), geometry(), anisotropy(), polarization_axis, gain(),
                     torque_scale);
  }

  IntegratorConfig integrator() const { return {dt}; }
  PulseTiming pulse_timing() const { return {t_write, t_relax}; }
  TrialProtocol trial_protocol() const { return {{t_write, t_relax}, burn_in}; }
};

namespace detail {

inline const char* axis_name(const Vec3& v) {
  if (v == Vec3{1, 0, 0}) return "+x";
  if (v == Vec3{-1, 0, 0}) return "-x";
  if (v == Vec3{0, 1, 0}) return "+y";
  if (v == Vec3{0, -1, 0}) return "-y";
  if (v == Vec3{0, 0, 1}) return "+z";
  if (v == Vec3{0, 0, -1}) return "-z";
  return nullptr;
}

inline Vec3 parse_axis(std::string_view s) {
  if (s == "+x" || s == "x") return {1, 0, 0};
  if (s == "-x") return {-1, 0, 0};
  if (s == "+y" || s == "y") return {0, 1, 0};
  if (s == "-y") return {0, -1, 0};
  if (s == "+z" || s == "z") return {0, 0, 1};
  if (s == "-z") return {0, 0, -1};
  throw ParseError("polarization_axis must be one of +-x, +-y, +-z");
}

}  // namespace detail

// Key-value device file. Keys carry their unit; '#' starts a comment.
inline DeviceParams parse_device_params(const std::string& text) {
  DeviceParams p;
  std::map<std::string, bool> seen;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    line_no++;
    std::string_view line = trim(raw);
    if (auto pos = line.find('#'); pos != std::string_view::npos)
      line = trim(line.substr(0, pos));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("device params line " + std::to_string(line_no) +
                       ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ParseError("device params line " + std::to_string(line_no) +
                       ": empty key or value");
    if (seen[key])
      throw ParseError("device params: duplicate key '" + key + "'");
    seen[key] = true;

    try {
      if (key == "axis_long_nm") p.axis_long = parse_scaled(val, 1e9);
      else if (key == "axis_short_nm") p.axis_short = parse_scaled(val, 1e9);
      else if (key == "t_free_nm") p.t_free = parse_scaled(val, 1e9);
      else if (key == "t_hm_nm") p.t_hm = parse_scaled(val, 1e9);
      else if (key == "w_mtj_nm") p.w_mtj = parse_scaled(val, 1e9);
      else if (key == "theta_sh") p.theta_sh = parse_double(val);
      else if (key == "rho_hm_uohm_cm") p.rho_hm = parse_scaled(val, 1e8);
      else if (key == "ms_emu_cm3") p.Ms = parse_scaled(val, 1e-3);
      else if (key == "alpha") p.alpha = parse_double(val);
      else if (key == "barrier_kT") p.barrier_kT = parse_double(val);
      else if (key == "temperature_K") p.temperature = parse_double(val);
      else if (key == "t_mgo_nm") p.t_mgo = parse_scaled(val, 1e9);
      else if (key == "r_p_kohm") p.R_p = parse_scaled(val, 1e-3);
      else if (key == "r_ap_kohm") p.R_ap = parse_scaled(val, 1e-3);
      else if (key == "t_write_ns") p.t_write = parse_scaled(val, 1e9);
      else if (key == "t_relax_ns") p.t_relax = parse_scaled(val, 1e9);
      else if (key == "t_read_ns") p.t_read = parse_scaled(val, 1e9);
      else if (key == "v_dd_V") p.V_dd = parse_double(val);
      else if (key == "i_read_uA") p.I_read = parse_scaled(val, 1e6);
      else if (key == "overhead_pJ") p.overhead_energy = parse_scaled(val, 1e12);
      else if (key == "torque_scale") p.torque_scale = parse_double(val);
      else if (key == "polarization_axis") p.polarization_axis = detail::parse_axis(val);
      else if (key == "dt_ps") p.dt = parse_scaled(val, 1e12);
      else if (key == "burn_in_ns") p.burn_in = parse_scaled(val, 1e9);
      else if (key == "demag") {
        if (val != "auto") {
          std::istringstream vs{std::string(val)};
          double nx, ny, nz;
          if (!(vs >> nx >> ny >> nz))
            throw ParseError("demag needs 'auto' or three factors");
          p.demag_override_set = true;
          p.demag_override = {nx, ny, nz};
        }
      } else {
        throw ParseError("unknown key '" + key + "'");
      }
    } catch (const ParseError& e) {
      throw ParseError("device params line " + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  p.validate();
  return p;
}

inline DeviceParams load_device_params(const std::string& path) {
  return parse_device_params(read_text_file(path));
}

inline std::string serialize_device_params(const DeviceParams& p) {
  std::ostringstream out;
  out << "# SHE-MTJ device parameters\n";
  out << "axis_long_nm = " << fmt_scaled(p.axis_long, 1e9) << "\n";
  out << "axis_short_nm = " << fmt_scaled(p.axis_short, 1e9) << "\n";
  out << "t_free_nm = " << fmt_scaled(p.t_free, 1e9) << "\n";
  out << "t_hm_nm = " << fmt_scaled(p.t_hm, 1e9) << "\n";
  out << "w_mtj_nm = " << fmt_scaled(p.w_mtj, 1e9) << "\n";
  out << "theta_sh = " << fmt_double(p.theta_sh) << "\n";
  out << "rho_hm_uohm_cm = " << fmt_scaled(p.rho_hm, 1e8) << "\n";
  out << "ms_emu_cm3 = " << fmt_scaled(p.Ms, 1e-3) << "\n";
  out << "alpha = " << fmt_double(p.alpha) << "\n";
  out << "barrier_kT = " << fmt_double(p.barrier_kT) << "\n";
  out << "temperature_K = " << fmt_double(p.temperature) << "\n";
  out << "t_mgo_nm = " << fmt_scaled(p.t_mgo, 1e9) << "\n";
  out << "r_p_kohm = " << fmt_scaled(p.R_p, 1e-3) << "\n";
  out << "r_ap_kohm = " << fmt_scaled(p.R_ap, 1e-3) << "\n";
  out << "t_write_ns = " << fmt_scaled(p.t_write, 1e9) << "\n";
  out << "t_relax_ns = " << fmt_scaled(p.t_relax, 1e9) << "\n";
  out << "t_read_ns = " << fmt_scaled(p.t_read, 1e9) << "\n";
  out << "v_dd_V = " << fmt_double(p.V_dd) << "\n";
  out << "i_read_uA = " << fmt_scaled(p.I_read, 1e6) << "\n";
  out << "overhead_pJ = " << fmt_scaled(p.overhead_energy, 1e12) << "\n";
  out << "torque_scale = " << fmt_double(p.torque_scale) << "\n";
  if (const char* ax = detail::axis_name(p.polarization_axis))
    out << "polarization_axis = " << ax << "\n";
  out << "dt_ps = " << fmt_scaled(p.dt, 1e12) << "\n";
  out << "burn_in_ns = " << fmt_scaled(p.burn_in, 1e9) << "\n";
  if (p.demag_override_set)
    out << "demag = " << fmt_double(p.demag_override.x) << " "
        << fmt_double(p.demag_override.y) << " " << fmt_double(p.demag_override.z)
        << "\n";
  else
    out << "demag = auto\n";
  return out.str();
}

inline void save_device_params(const DeviceParams& p, const std::string& path) {
  write_text_file(path, serialize_device_params(p));
}

inline std::string device_digest(const DeviceParams& p) {
  return content_digest(serialize_device_params(p));
}

// ---- read path ----------------------------------------------------------

// Midpoint reference resistance for the read divider.
inline double reference_resistance(const DeviceParams& p) {
  return std::sqrt(p.R_p * p.R_ap);
}

// Sense the stored spin from the junction resistance: the divider voltage
// V_dd R / (R + R_ref) is compared against V_dd / 2. Parallel (low R) reads
// +1, anti-parallel reads -1. The resistance must match one of the two
// configured levels.
inline int read_state(double R_mtj, const DeviceParams& p) {
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-6 * b; };
  if (!close(R_mtj, p.R_p) && !close(R_mtj, p.R_ap))
    throw std::invalid_argument("read_state: resistance matches neither R_p nor R_ap");
  const double v = p.V_dd * R_mtj / (R_mtj + reference_resistance(p));
  return v < 0.5 * p.V_dd ? +1 : -1;
}

inline double resistance_of_spin(int spin, const DeviceParams& p) {
  if (spin != 1 && spin != -1) throw std::invalid_argument("spin must be +-1");
  return spin == 1 ? p.R_p : p.R_ap;
}

// ---- energy accounting ---------------------------------------------------

struct EnergyLedger {
  double write_J = 0.0;
  double read_J = 0.0;
  double relax_J = 0.0;     // no current flows during relax; kept for reporting
  double overhead_J = 0.0;
  std::uint64_t writes = 0;
  std::uint64_t reads = 0;
  std::uint64_t updates = 0;

  double total_J() const { return write_J + read_J + relax_J + overhead_J; }

  EnergyLedger& operator+=(const EnergyLedger& o) {
    write_J += o.write_J;
    read_J += o.read_J;
    relax_J += o.relax_J;
    overhead_J += o.overhead_J;
    writes += o.writes;
    reads += o.reads;
    updates += o.updates;
    return *this;
  }
};

// Cost of one read-vote-write update at the given write current.
inline EnergyLedger account_update(const DeviceParams& p, double I_write) {
  EnergyLedger e;
  e.write_J = p.V_dd * std::abs(I_write) * p.t_write;
  e.read_J = p.V_dd * p.I_read * p.t_read;
  e.relax_J = 0.0;
  e.overhead_J = p.overhead_energy;
  e.writes = 1;
  e.reads = 1;
  e.updates = 1;
  return e;
}

}  // namespace shemtj
