#include "agisim/verifier.hpp"

#include "agisim/errors.hpp"
#include "agisim/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace agisim {

namespace {

constexpr std::uint64_t kAidingStream = 3;

bool finite(const NavState& s) {
  return s.p.allFinite() && s.v.allFinite() && s.c_b_e.matrix().allFinite();
}

}  // namespace

NavState nav_state_from_pose(const FramePose& pose) {
  const EcefState s = to_ecef_state(pose);
  return NavState{s.p_e, s.v_e, s.c_b_e};
}

NavState strapdown_step(const NavState& state, const ImuSample& imu, std::size_t epoch) {
  if (!(imu.dt > 0.0)) throw DomainError("strapdown step needs dt > 0");
  if (!finite(state) || !imu.dv.allFinite() || !imu.dtheta.allFinite()) {
    throw DivergenceError("navigation state is not finite", epoch);
  }
  const double dt = imu.dt;
  const RotationVector alpha(imu.dtheta);
  const Mat3& c_prev = state.c_b_e.matrix();

  const Mat3 c_new = earth_delta_dcm(dt).matrix() * c_prev * rodrigues(alpha);

  Mat3 c_avg;
  Mat3 r_avg;
  try {
    c_avg = average_body_dcm(state.c_b_e, alpha, dt);
    r_avg = specific_force_rotation(c_avg);
  } catch (const NumericError& e) {
    throw DivergenceError(e.what(), epoch);
  }
  const Vec3 f_e = r_avg * (imu.dv / dt);
  const EcefVector v_new =
      state.v + dt * (f_e + gravity_ecef(state.p) - 2.0 * earth_rate_skew() * state.v);
  const EcefVector p_new = state.p + dt * (v_new + state.v) / 2.0;

  if (!c_new.allFinite() || !v_new.allFinite() || !p_new.allFinite()) {
    throw DivergenceError("navigation state became non-finite", epoch);
  }
  return NavState{p_new, v_new, Dcm(orthonormalize(c_new), state.c_b_e.from(), Frame::kEcef)};
}

AidingSample make_aiding(const PoseSample& truth_b1, double sigma_pos, double sigma_vel,
                         NoiseRng& rng) {
  if (!(sigma_pos >= 0.0) || !(sigma_vel >= 0.0)) {
    throw DomainError("aiding noise sigma must be >= 0");
  }
  Vec3 dp, dv;
  for (int k = 0; k < 3; ++k) dp[k] = sigma_pos * rng.normal();
  for (int k = 0; k < 3; ++k) dv[k] = sigma_vel * rng.normal();

  AidingSample a;
  a.t = truth_b1.t;
  a.sigma_pos = sigma_pos;
  a.sigma_vel = sigma_vel;
  a.vel_n = truth_b1.vel_n + dv;
  if (sigma_pos == 0.0) {
    a.pos = truth_b1.pos;
  } else {
    const Vec3 d = pos_transform_jacobian(truth_b1.pos.lat, truth_b1.pos.alt) * dp;
    a.pos = {truth_b1.pos.lat + d.x(), wrap_pi(truth_b1.pos.lon + d.y()),
             truth_b1.pos.alt + d.z()};
  }
  return a;
}

ResetOutcome reset_step(const NavState& state, const AidingSample& aiding, double epoch_t,
                        double dt, ResetMode mode, double blend) {
  if (mode == ResetMode::kNone) return {state, false};
  if (!(std::abs(aiding.t - epoch_t) <= dt / 2.0)) return {state, false};

  const double lambda = mode == ResetMode::kHard ? 1.0 : blend;
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("blend fraction must be in [0, 1]");

  const EcefVector p_aid = lla_to_ecef(aiding.pos);
  const EcefVector v_aid = dcm_n_to_e(aiding.pos.lat, aiding.pos.lon) * aiding.vel_n;

  NavState out = state;
  if (lambda == 1.0) {
    out.p = p_aid;
    out.v = v_aid;
  } else {
    out.p = state.p + lambda * (p_aid - state.p);
    out.v = state.v + lambda * (v_aid - state.v);
  }
  return {out, true};
}

void AidingConfig::validate() const {
  if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) throw ConfigError("aiding rate must be > 0");
  if (!(sigma_pos >= 0.0) || !(sigma_vel >= 0.0) || !std::isfinite(sigma_pos) ||
      !std::isfinite(sigma_vel)) {
    throw ConfigError("aiding sigmas must be finite and >= 0");
  }
  if (!(blend >= 0.0 && blend <= 1.0)) throw ConfigError("aiding blend must be in [0, 1]");
}

EpochError epoch_error(const NavState& est, const FramePose& truth) {
  const PoseSample& t = truth.pose;
  const Dcm c_n_e = dcm_n_to_e(t.pos.lat, t.pos.lon);
  const Mat3 c_e_n = c_n_e.matrix().transpose();

  EpochError e;
  e.t = t.t;
  e.pos_ned = c_e_n * (est.p - lla_to_ecef(t.pos));
  e.vel_ned = c_e_n * est.v - t.vel_n;

  const Dcm c_b_n_est(c_e_n * est.c_b_e.matrix(), est.c_b_e.from(), Frame::kNed);
  e.heading = wrap_pi(dcm_to_euler(c_b_n_est).yaw - dcm_to_euler(truth.c_b_n).yaw);

  const Mat3 d = truth.c_b_n.matrix().transpose() * c_b_n_est.matrix();
  e.attitude = std::acos(std::clamp((d.trace() - 1.0) / 2.0, -1.0, 1.0));
  return e;
}

void summarize(ErrorReport& r) {
  r.rmse_samples = 0;
  r.pos_rmse = r.vel_rmse = r.pos_max = r.vel_max = Vec3::Zero();
  r.heading_rmse = r.heading_max = r.attitude_max = 0.0;
  if (r.epochs.empty()) throw DomainError("error report has no epochs");

  const double t0 = r.epochs.front().t + r.settle_s;
  Vec3 sp = Vec3::Zero(), sv = Vec3::Zero();
  double sh = 0.0;
  for (const EpochError& e : r.epochs) {
    if (e.t < t0 - 1e-9) continue;
    ++r.rmse_samples;
    sp += e.pos_ned.cwiseAbs2();
    sv += e.vel_ned.cwiseAbs2();
    sh += e.heading * e.heading;
    r.pos_max = r.pos_max.cwiseMax(e.pos_ned.cwiseAbs());
    r.vel_max = r.vel_max.cwiseMax(e.vel_ned.cwiseAbs());
    r.heading_max = std::max(r.heading_max, std::abs(e.heading));
    r.attitude_max = std::max(r.attitude_max, e.attitude);
  }
  if (r.rmse_samples == 0) {
    throw DomainError("run is shorter than the settling period");
  }
  const double n = static_cast<double>(r.rmse_samples);
  r.pos_rmse = (sp / n).cwiseSqrt();
  r.vel_rmse = (sv / n).cwiseSqrt();
  r.heading_rmse = std::sqrt(sh / n);
}

ErrorReport verify_simulation(const SimulationResult& sim, const AidingConfig& aiding,
                              double settle_s) {
  aiding.validate();
  if (sim.imu_truth.size() < 2 || sim.imu.size() + 1 != sim.imu_truth.size()) {
    throw ContractError("simulation needs N-1 truth poses for N-2 imu samples, N >= 3");
  }
  ErrorReport report;
  report.settle_s = settle_s;
  report.epochs.reserve(sim.imu.size());

  NoiseRng rng(aiding.seed, kAidingStream);
  NavState state = nav_state_from_pose(sim.imu_truth.front());
  const double aid_period = 1.0 / aiding.rate_hz;
  double last_aid_t = sim.imu_truth.front().pose.t;

  for (std::size_t k = 0; k < sim.imu.size(); ++k) {
    const ImuSample& imu = sim.imu[k];
    const FramePose& truth = sim.imu_truth[k + 1];
    state = strapdown_step(state, imu, k);

    if (aiding.mode != ResetMode::kNone && imu.t - last_aid_t >= aid_period - imu.dt / 2.0) {
      const AidingSample a = make_aiding(truth.pose, aiding.sigma_pos, aiding.sigma_vel, rng);
      const ResetOutcome r = reset_step(state, a, imu.t, imu.dt, aiding.mode, aiding.blend);
      if (r.applied) {
        state = r.state;
        ++report.resets_applied;
      } else {
        ++report.resets_skipped;
      }
      last_aid_t += aid_period;
    }
    report.epochs.push_back(epoch_error(state, truth));
  }
  summarize(report);
  return report;
}

ClosedLoopResult run_closed_loop(const std::vector<PoseSample>& trajectory,
                                 const GimbalConfig& gimbal, const ImuErrorParams& params,
                                 const AidingConfig& aiding, double settle_s) {
  ClosedLoopResult out;
  out.simulation = simulate(trajectory, gimbal, params);
  out.report = verify_simulation(out.simulation, aiding, settle_s);
  return out;
}

}  // namespace agisim
