// Platform trajectory ingestion: telemetry records, pull-based pose sources,
// stream validation and synthetic generators.
#pragma once

#include "agisim/geodesy.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace agisim {

/// Pose of a frame relative to local NED at time t.
struct PoseSample {
  double t = 0.0;  // [s]
  GeodeticPosition pos;
  Vec3 vel_n = Vec3::Zero();  // [m/s] NED
  EulerAngles att;            // body -> NED, ZYX
};

inline constexpr double kDefaultMaxSpeed = 400.0;

/// Throws RecordError(kValidation) with field_index pointing at the offending quantity.
void validate(const PoseSample& sample, double max_speed = kDefaultMaxSpeed);

enum class SourceKind { kUdp, kFile, kSynthetic };

enum class Quantity { kTime, kLat, kLon, kAlt, kVelN, kVelE, kVelD, kRoll, kPitch, kYaw, kSkip };

/// One CSV column: which quantity it carries and the factor to SI units.
struct ColumnSpec {
  Quantity quantity = Quantity::kSkip;
  double to_si = 1.0;
};

/// Parse a column token such as "lat_deg", "alt_ft", "vN_mps", "yaw_rad" or "skip".
ColumnSpec parse_column_token(std::string_view token);

/// Parse a comma-separated column mapping. Each quantity except kSkip must
/// appear exactly once. Throws ConfigError.
std::vector<ColumnSpec> parse_column_mapping(std::string_view mapping);

inline constexpr std::string_view kDefaultColumnMapping =
    "time_s,lat_deg,lon_deg,alt_m,vN_mps,vE_mps,vD_mps,roll_rad,pitch_rad,yaw_rad";

inline constexpr std::uint16_t kDefaultUdpPort = 5138;

struct StreamConfig {
  SourceKind source = SourceKind::kSynthetic;
  double rate_hz = 50.0;
  double dt_tolerance = 0.1;  // fraction of the nominal step
  std::vector<ColumnSpec> columns = parse_column_mapping(kDefaultColumnMapping);
  double alt_offset_m = 0.0;  // added to altitude, e.g. MSL -> ellipsoid
  double max_speed = kDefaultMaxSpeed;

  /// Throws ConfigError when rate <= 0 or tolerance outside [0, 0.5].
  void validate() const;
};

/// Parse one ASCII CSV record (optionally newline-terminated) into a
/// PoseSample in SI units. Errors carry byte offset and field index.
PoseSample parse_fdm_datagram(std::string_view payload, const StreamConfig& cfg);

/// Pull-based pose stream. next() returns std::nullopt at end of stream.
class PoseSource {
 public:
  virtual ~PoseSource() = default;
  virtual std::optional<PoseSample> next() = 0;
};

class VectorPoseSource final : public PoseSource {
 public:
  explicit VectorPoseSource(std::vector<PoseSample> samples);
  std::optional<PoseSample> next() override;

 private:
  std::vector<PoseSample> samples_;
  std::size_t index_ = 0;
};

/// Lazily reads a trajectory file: one record per line, '#' comments and
/// blank lines skipped. RecordErrors carry 1-based line numbers.
class FilePoseSource final : public PoseSource {
 public:
  FilePoseSource(const std::filesystem::path& path, StreamConfig cfg);
  std::optional<PoseSample> next() override;

 private:
  std::ifstream in_;
  StreamConfig cfg_;
  std::size_t line_ = 0;
};

std::vector<PoseSample> read_trajectory_file(const std::filesystem::path& path,
                                             const StreamConfig& cfg);

/// Enforces strictly increasing time and |dt - 1/rate| <= tolerance/rate
/// while pulling from an upstream source. Throws StreamError.
class ValidatingPoseSource final : public PoseSource {
 public:
  ValidatingPoseSource(PoseSource& upstream, const StreamConfig& cfg);
  std::optional<PoseSample> next() override;

 private:
  PoseSource& upstream_;
  double nominal_dt_;
  double tolerance_;
  std::optional<double> last_t_;
  std::size_t index_ = 0;
};

/// Validates a whole sequence; returns it unchanged on success.
std::vector<PoseSample> validate_stream(std::span<const PoseSample> samples,
                                        const StreamConfig& cfg);

std::vector<PoseSample> drain(PoseSource& source);

// --- synthetic generators -------------------------------------------------

/// Constant pose, zero velocity, timestamps k/rate for k = 0..floor(duration*rate).
std::vector<PoseSample> synth_stationary(const GeodeticPosition& location,
                                         const EulerAngles& attitude, double duration,
                                         double rate);

enum class ManeuverProfile { kStraight, kClimb, kCoordinatedTurn };

struct ManeuverParams {
  GeodeticPosition start{0.0, 0.0, 1000.0};
  double speed = 50.0;         // [m/s] airspeed along the flight path
  double heading = 0.0;        // [rad] initial track
  double climb_rate = 5.0;     // [m/s] for kClimb
  double turn_radius = 500.0;  // [m] for kCoordinatedTurn, positive = right turn
};

/// One leg of a composite flight plan. Commanded rates blend smoothly
/// (raised cosine over `blend` seconds) from the previous leg.
struct FlightSegment {
  double duration = 10.0;   // [s]
  double turn_rate = 0.0;   // [rad/s] heading rate, positive = right
  double climb_rate = 0.0;  // [m/s] vertical speed, positive = up
  double accel = 0.0;       // [m/s^2] along-track speed change
};

struct FlightPlan {
  GeodeticPosition start{0.0, 0.0, 1000.0};
  double speed = 50.0;
  double heading = 0.0;
  double blend = 4.0;  // [s]
  std::vector<FlightSegment> segments;
};

/// Coordinated flight: yaw follows the track, pitch equals the flight-path
/// angle, roll is the coordinated bank atan(V*psi_dot/g). Positions are
/// integrated from the emitted velocity with RK4 sub-steps.
std::vector<PoseSample> synth_flight_plan(const FlightPlan& plan, double rate);

/// Single constant-command profile. Throws ConfigError on inconsistent params.
std::vector<PoseSample> synth_maneuver(ManeuverProfile profile, const ManeuverParams& params,
                                       double duration, double rate);

/// 200 s maneuvering flight: acceleration, climb, level-off and two turns.
FlightPlan default_maneuvering_plan(const GeodeticPosition& start);

/// Ground roll then rotation into a steady climb.
FlightPlan takeoff_climb_plan(const GeodeticPosition& start, double duration);

}  // namespace agisim
