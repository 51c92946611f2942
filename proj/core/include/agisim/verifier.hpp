// End-to-end verification: re-integrate simulated IMU output with an ECEF
// strapdown mechanization, reset it periodically from a virtual aiding
// sensor co-located with the IMU, and compare against the IMU-frame truth.
#pragma once

#include "agisim/geodesy.hpp"
#include "agisim/gimbal.hpp"
#include "agisim/imu_error.hpp"
#include "agisim/simulator.hpp"

#include <cstddef>
#include <vector>

namespace agisim {

struct NavState {
  EcefVector p = EcefVector::Zero();
  EcefVector v = EcefVector::Zero();
  Dcm c_b_e = Dcm::identity(Frame::kImu, Frame::kEcef);
};

NavState nav_state_from_pose(const FramePose& pose);

/// Inverse of the truth kinematics:
///   C <- dC_earth * C * exp([dtheta x]),
///   v <- v + dt (R(C_avg) f + g(p) - 2 Omega_ie v),
///   p <- p + dt (v_new + v_old) / 2,
/// then C is re-orthonormalized. Throws DivergenceError (with `epoch`) when
/// the state becomes non-finite.
NavState strapdown_step(const NavState& state, const ImuSample& imu, std::size_t epoch = 0);

struct AidingSample {
  double t = 0.0;
  GeodeticPosition pos;
  Vec3 vel_n = Vec3::Zero();
  double sigma_pos = 0.0;  // [m]
  double sigma_vel = 0.0;  // [m/s]
};

/// Truth plus white noise: position noise drawn in NED metres and mapped to
/// latitude/longitude/altitude, velocity noise in NED. Draws six normals.
AidingSample make_aiding(const PoseSample& truth_b1, double sigma_pos, double sigma_vel,
                         NoiseRng& rng);

enum class ResetMode { kNone, kHard, kBlend };

struct ResetOutcome {
  NavState state;
  bool applied = false;
};

/// Hard: position and velocity replaced by the aiding values (attitude kept).
/// Blend: both move a fraction `blend` toward the aiding values.
/// Aiding older or newer than dt/2 relative to `epoch_t` is skipped.
ResetOutcome reset_step(const NavState& state, const AidingSample& aiding, double epoch_t,
                        double dt, ResetMode mode, double blend = 1.0);

struct AidingConfig {
  ResetMode mode = ResetMode::kHard;
  double rate_hz = 1.0;
  double sigma_pos = 2.0;
  double sigma_vel = 0.1;
  double blend = 0.5;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
};

struct EpochError {
  double t = 0.0;
  Vec3 pos_ned = Vec3::Zero();  // estimate - truth [m]
  Vec3 vel_ned = Vec3::Zero();  // [m/s]
  double heading = 0.0;         // wrapped yaw difference [rad]
  double attitude = 0.0;        // total attitude error angle [rad]
};

EpochError epoch_error(const NavState& est, const FramePose& truth);

struct ErrorReport {
  std::vector<EpochError> epochs;
  double settle_s = 5.0;
  std::size_t rmse_samples = 0;
  Vec3 pos_rmse = Vec3::Zero();
  Vec3 vel_rmse = Vec3::Zero();
  double heading_rmse = 0.0;
  Vec3 pos_max = Vec3::Zero();
  Vec3 vel_max = Vec3::Zero();
  double heading_max = 0.0;
  double attitude_max = 0.0;
  std::size_t resets_applied = 0;
  std::size_t resets_skipped = 0;
};

/// Fills the RMSE and max fields from `epochs`, using epochs with
/// t >= t_first + settle_s. Throws DomainError when no epoch qualifies.
void summarize(ErrorReport& report);

struct ClosedLoopResult {
  SimulationResult simulation;
  ErrorReport report;
};

/// Simulates the trajectory, initializes the navigation state from the first
/// IMU-frame truth pose and runs strapdown plus resets over every IMU sample.
ClosedLoopResult run_closed_loop(const std::vector<PoseSample>& trajectory,
                                 const GimbalConfig& gimbal, const ImuErrorParams& params,
                                 const AidingConfig& aiding, double settle_s = 5.0);

/// Verification over an existing simulation.
ErrorReport verify_simulation(const SimulationResult& sim, const AidingConfig& aiding,
                              double settle_s = 5.0);

}  // namespace agisim
