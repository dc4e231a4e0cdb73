#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "shemtj/fields.hpp"
#include "shemtj/magnetics.hpp"
#include "shemtj/rng.hpp"
#include "shemtj/vec3.hpp"

namespace shemtj {

struct MagnetizationState {
  Vec3 m{1, 0, 0};
  double t = 0.0;  // [s]
};

struct IntegratorConfig {
  double dt = 1e-13;  // step [s], must stay at or below 1 ps

  void validate() const {
    if (!(dt > 0) || dt > 1e-12)
      throw std::invalid_argument("integrator: dt must lie in (0, 1 ps]");
  }
};

struct NonFiniteStateError : std::runtime_error {
  explicit NonFiniteStateError(double t_s)
      : std::runtime_error("magnetization became non-finite at t = " +
                           std::to_string(t_s) + " s (dt too large?)") {}
};

struct TrajectorySample {
  double t;    // [s]
  Vec3 m;
  double I_q;  // charge current applied during this step [A]
};

struct TrajectoryRecorder {
  unsigned stride = 1;  // record every stride-th step
  std::vector<TrajectorySample> samples;
};

// One macrospin with fixed material, shape and torque geometry. Holds the
// precomputed coefficients of the explicit (Gilbert-resolved) equation of
// motion so the stepper stays allocation- and branch-free:
//   dm/dt = 1/(1+a^2) [ -g m x H - a g m x (m x H)
//                       + 1/(q Ns) ( m x (Is x m) + a m x Is ) ]
class LlgSystem {
 public:
  LlgSystem(const MaterialParams& mat, const Geometry& geom,
            const AnisotropyModel& aniso, const Vec3& polarization_axis,
            double current_gain, double torque_scale = 1.0)
      : mat_(mat), geom_(geom), aniso_(aniso) {
    mat.validate();
    geom.validate();
    aniso.validate();
    if (std::abs(polarization_axis.norm() - 1.0) > 1e-9)
      throw std::invalid_argument("llg: polarization axis must be a unit vector");
    if (!(current_gain > 0) || !(torque_scale > 0))
      throw std::invalid_argument("llg: gain and torque scale must be positive");

    const double a = mat.alpha;
    inv1a2_ = 1.0 / (1.0 + a * a);
    c_prec_ = -constants::gamma_llg * inv1a2_;
    c_damp_ = a * c_prec_;
    pol_ = polarization_axis;
    // spin current per unit charge current, folded with 1/(q Ns) [1/(s A)]
    torque_per_amp_ =
        torque_scale * current_gain / (constants::q_e * spin_count(mat, geom));
  }

  const MaterialParams& material() const { return mat_; }
  const Geometry& geometry() const { return geom_; }
  const AnisotropyModel& anisotropy() const { return aniso_; }
  const Vec3& polarization_axis() const { return pol_; }
  double torque_per_amp() const { return torque_per_amp_; }

  Vec3 field(const Vec3& m) const { return deterministic_field(m, mat_, aniso_); }

  double energy(const Vec3& m) const { return magnetic_energy(m, mat_, geom_, aniso_); }

  // Equation of motion for a total field H (thermal included by the caller)
  // and a torque vector tau = torque_per_amp * I_q * pol [1/s]. The double
  // cross products are expanded exactly:
  //   m x (m x H) = m (m.H) - H (m.m),  m x (tau x m) = tau (m.m) - m (m.tau)
  Vec3 rhs(const Vec3& m, const Vec3& H, const Vec3& tau) const {
    const double mm = dot(m, m);
    const double mH = dot(m, H);
    const Vec3 mxH = cross(m, H);
    Vec3 out = c_prec_ * mxH + c_damp_ * (m * mH - H * mm);
    if (tau.x != 0 || tau.y != 0 || tau.z != 0) {
      const Vec3 stt = (tau * mm - m * dot(m, tau)) + mat_.alpha * cross(m, tau);
      out += inv1a2_ * stt;
    }
    return out;
  }

  // One Heun step. The thermal sample h_th is frozen across both stages; the
  // deterministic field is re-evaluated at the predictor point and the result
  // is renormalized to the unit sphere after the corrector.
  MagnetizationState step(const MagnetizationState& s, const Vec3& h_th, double I_q,
                          double dt) const {
    const Vec3 tau = pol_ * (torque_per_amp_ * I_q);

    const Vec3 k1 = rhs(s.m, field(s.m) + h_th, tau);
    const Vec3 mp = s.m + dt * k1;

    const Vec3 k2 = rhs(mp, field(mp) + h_th, tau);
    Vec3 mn = s.m + (0.5 * dt) * (k1 + k2);
    mn = mn * (1.0 / mn.norm());

    if (!mn.finite()) throw NonFiniteStateError(s.t);
    return {mn, s.t + dt};
  }

  // Integrate a constant-current segment of the given duration, drawing one
  // thermal sample per step. Coefficients are cached in locals so the loop
  // stays free of indirection; the arithmetic is identical to step().
  MagnetizationState run_segment(MagnetizationState s, double I_q, double duration,
                                 const IntegratorConfig& cfg, RngStream& rng,
                                 TrajectoryRecorder* rec = nullptr) const {
    cfg.validate();
    const auto n_steps = static_cast<long long>(std::llround(duration / cfg.dt));
    const double dt = cfg.dt;
    const double sigma =
        mat_.temperature > 0 ? thermal_field_sigma(mat_, geom_.volume(), dt) : 0.0;

    const Vec3 dcoef{-mat_.Ms * aniso_.demag.x, -mat_.Ms * aniso_.demag.y,
                     -mat_.Ms * aniso_.demag.z};
    const Vec3 easy = aniso_.easy_axis;
    const double hk = aniso_.H_k;
    const Vec3 tau = pol_ * (torque_per_amp_ * I_q);
    const bool has_tau = tau.x != 0 || tau.y != 0 || tau.z != 0;
    const double alpha = mat_.alpha;
    const double cp = c_prec_, cd = c_damp_, ci = inv1a2_;

    auto rhs_local = [&](const Vec3& m, const Vec3& H) {
      const double mm = dot(m, m);
      const double mH = dot(m, H);
      const Vec3 mxH = cross(m, H);
      Vec3 out = cp * mxH + cd * (m * mH - H * mm);
      if (has_tau) {
        const Vec3 stt = (tau * mm - m * dot(m, tau)) + alpha * cross(m, tau);
        out += ci * stt;
      }
      return out;
    };
    auto field_local = [&](const Vec3& m) {
      const double me = hk * dot(m, easy);
      return Vec3{dcoef.x * m.x + me * easy.x, dcoef.y * m.y + me * easy.y,
                  dcoef.z * m.z + me * easy.z};
    };

    Vec3 m = s.m;
    for (long long i = 0; i < n_steps; i++) {
      Vec3 h_th{};
      if (sigma > 0)
        h_th = {sigma * rng.gaussian(), sigma * rng.gaussian(), sigma * rng.gaussian()};

      const Vec3 k1 = rhs_local(m, field_local(m) + h_th);
      const Vec3 mp = m + dt * k1;

      const Vec3 k2 = rhs_local(mp, field_local(mp) + h_th);
      Vec3 mn = m + (0.5 * dt) * (k1 + k2);
      m = mn * (1.0 / mn.norm());

      if (rec && rec->stride && (i + 1) % rec->stride == 0)
        rec->samples.push_back({s.t + (i + 1) * dt, m, I_q});
    }
    if (!m.finite()) throw NonFiniteStateError(s.t);
    return {m, s.t + n_steps * dt};
  }

 private:
  MaterialParams mat_;
  Geometry geom_;
  AnisotropyModel aniso_;
  Vec3 pol_;
  double inv1a2_ = 0.0;
  double c_prec_ = 0.0;
  double c_damp_ = 0.0;
  double torque_per_amp_ = 0.0;
};

struct PulseTiming {
  double t_write = 3e-9;  // [s]
  double t_relax = 6e-9;  // [s]

  void validate() const {
    if (!(t_write > 0) || t_relax < 0)
      throw std::invalid_argument("pulse: t_write must be positive, t_relax >= 0");
  }
};

struct WriteEventResult {
  MagnetizationState final_state;
  bool flipped = false;  // easy-axis sign changed vs the initial state
};

// Apply I_q for t_write, then relax at zero current for t_relax. The flip
// verdict compares the easy-axis sign of the final state to the initial one.
inline WriteEventResult simulate_write_event(const LlgSystem& sys,
                                             const MagnetizationState& initial,
                                             double I_q, const PulseTiming& timing,
                                             const IntegratorConfig& cfg,
                                             RngStream& rng,
                                             TrajectoryRecorder* rec = nullptr) {
  timing.validate();
  const double sign0 = dot(initial.m, sys.anisotropy().easy_axis) >= 0 ? 1.0 : -1.0;
  MagnetizationState s = sys.run_segment(initial, I_q, timing.t_write, cfg, rng, rec);
  s = sys.run_segment(s, 0.0, timing.t_relax, cfg, rng, rec);
  const double sign1 = dot(s.m, sys.anisotropy().easy_axis) >= 0 ? 1.0 : -1.0;
  return {s, sign0 != sign1};
}

}  // namespace shemtj
