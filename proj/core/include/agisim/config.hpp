// Run configuration: a line-based `section.key = value` text format.
//
//   # comment
//   trajectory.profile = maneuvering
//   trajectory.origin  = [35.7, 51.4, 1200]   # lat deg, lon deg, alt m
//   gimbal.l_pt        = 0.1
//   imu.model          = ideal
//
// Values are numbers, booleans (true/false), strings (bare words or
// "quoted") or bracketed numeric triples. Unknown keys, duplicate keys and
// type mismatches are errors reported with their line number.
#pragma once

#include "agisim/gimbal.hpp"
#include "agisim/imu_error.hpp"
#include "agisim/trajectory.hpp"
#include "agisim/udp_source.hpp"
#include "agisim/verifier.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace agisim {

enum class SyntheticProfile { kStationary, kStraight, kClimb, kTurn, kManeuvering, kTakeoff };

struct TrajectoryConfig {
  SourceKind source = SourceKind::kSynthetic;
  SyntheticProfile profile = SyntheticProfile::kStationary;
  std::string path;  // file source
  std::uint16_t port = kDefaultUdpPort;
  double rate_hz = 50.0;
  double dt_tolerance = 0.1;
  double duration_s = 60.0;
  Vec3 origin_deg{45.0, 7.0, 300.0};  // lat [deg], lon [deg], alt [m]
  Vec3 attitude_deg = Vec3::Zero();   // roll, pitch, yaw [deg], stationary profile
  double speed_mps = 50.0;
  double heading_deg = 0.0;
  double turn_radius_m = 500.0;
  double climb_rate_mps = 5.0;
  std::string columns{kDefaultColumnMapping};
  double alt_offset_m = 0.0;
  double idle_timeout_s = 5.0;
  double max_speed_mps = kDefaultMaxSpeed;
};

enum class ImuModel { kDefault, kIdeal };

struct ImuConfig {
  ImuModel model = ImuModel::kDefault;
  std::optional<Vec3> accel_bias;
  std::optional<Vec3> gyro_bias;
  std::optional<double> accel_noise_psd;
  std::optional<double> gyro_noise_psd;
  double accel_scale_factor = 1.0;  // multiplies the drawn M_a
  double gyro_scale_factor = 1.0;   // multiplies the drawn M_g
  double gyro_g_factor = 1.0;       // multiplies the drawn G_g
};

struct VerifyThresholds {
  double max_pos_rmse = 5.0;       // [m], every NED channel
  double max_vel_rmse = 0.5;       // [m/s]
  double max_heading_rmse = 0.01;  // [rad]
  double settle_s = 5.0;
};

struct RunConfig {
  TrajectoryConfig trajectory;
  GimbalConfig gimbal;            // mount / alignment matrices derived from the angles below
  Vec3 mount_deg = Vec3::Zero();  // roll, pitch, yaw of the pan base on the platform
  Vec3 imu_alignment_deg = Vec3::Zero();
  ImuConfig imu;
  AidingConfig aiding;
  VerifyThresholds verify;
  std::uint64_t seed = 1;
  std::string run_id = "run";
  std::string out_dir = "out";

  StreamConfig stream_config() const;
  GimbalConfig gimbal_config() const;
  ImuErrorParams imu_params() const;
  AidingConfig aiding_config() const;
  GeodeticPosition origin() const;

  /// Cross-field checks; throws ConfigError.
  void validate() const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const RunConfig& cfg);

/// Poses of a synthetic or file trajectory (UDP sources are live and
/// handled by the caller). The stream is validated for ordering.
std::vector<PoseSample> build_trajectory(const RunConfig& cfg);

/// Built-in gimbal unit scenarios: "pan", "tilt" and "ptr-takeoff".
/// Throws ConfigError for other names.
RunConfig scenario_config(std::string_view name);
std::vector<std::string> scenario_names();

}  // namespace agisim
