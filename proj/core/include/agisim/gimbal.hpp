// Pan -> tilt -> roll gimbal chain carrying the platform pose to the IMU.
//
// Frame layout (each junction rotates its frame relative to the previous one):
//
//   platform --mount--> pan base --pan--> g_P --tilt--> g_T --roll--> g_R --imu--> b_1
//
// The pan junction sits at the platform origin. Lever arms run g_P -> g_T,
// g_T -> g_R and g_R -> b_1, each resolved in its source frame, so every
// lever swings with the junction rotations upstream of it.
#pragma once

#include "agisim/geodesy.hpp"
#include "agisim/trajectory.hpp"

#include <array>
#include <optional>

namespace agisim {

enum class Axis { kX, kY, kZ };

/// angle(t) = offset + amplitude * sin(2*pi*t/period)
struct JunctionProfile {
  double period = 1.0;     // [s]
  double amplitude = 0.0;  // [rad]
  double offset = 0.0;     // [rad]
};

struct GimbalConfig {
  bool enabled = true;

  Vec3 lever_pt{0.0, 0.0, 0.1};   // g_P -> g_T, resolved in g_P [m]
  Vec3 lever_tr{0.0, 0.0, 0.1};   // g_T -> g_R, resolved in g_T [m]
  Vec3 lever_imu{0.0, 0.0, 0.0};  // g_R -> b_1, resolved in g_R [m]

  Axis pan_axis = Axis::kZ;
  Axis tilt_axis = Axis::kY;
  Axis roll_axis = Axis::kX;

  JunctionProfile pan{4.0, kPi / 6.0, 0.0};
  JunctionProfile tilt{6.0, kPi / 6.0, 0.0};
  JunctionProfile roll{10.0, kPi / 12.0, 0.0};

  Mat3 mount = Mat3::Identity();  // C_panbase^platform
  Mat3 imu_alignment = Mat3::Identity();  // C_b1^gR

  /// Default gimbal geometry with periodic motion on every junction.
  static GimbalConfig reference_motion();
  /// No rotation, zero lever arms: the chain is the identity.
  static GimbalConfig rigid();

  /// Throws ConfigError (periods > 0 when amplitude != 0, |lever| < 2 m, finite values,
  /// orthonormal mount / alignment).
  void validate() const;
};

struct GimbalAngles {
  double pan = 0.0;
  double tilt = 0.0;
  double roll = 0.0;
};

GimbalAngles gimbal_angles_at(double t, const GimbalConfig& cfg);

/// Single-axis rotation C_child^parent.
Dcm junction_dcm(double angle, Axis axis, Frame child, Frame parent);

/// C_child^n = C_parent^n * C_child^parent (labels checked).
Dcm transpose_attitude(const Dcm& c_parent_n, const Dcm& c_child_parent);

/// p_child = p_parent + M_p(p_parent) * C_parent^n * lever
GeodeticPosition transpose_position(const GeodeticPosition& p_parent, const Dcm& c_parent_n,
                                    const Vec3& lever);

/// v_child = v_parent + C_parent^n * (omega_e,parent^parent x lever)
Vec3 transpose_velocity(const Vec3& v_parent_n, const Dcm& c_parent_n,
                        const Vec3& omega_e_parent, const Vec3& lever);

/// Pose of a frame together with its exact attitude matrix.
struct FramePose {
  PoseSample pose;
  Dcm c_b_n;  // body -> NED
};

FramePose make_frame_pose(const PoseSample& pose, Frame body = Frame::kPlatform);

/// C^e of each lever stage's source frame (g_P, g_T, g_R) from the previous step.
struct ChainMemory {
  bool warm = false;
  double t = 0.0;
  std::array<Mat3, 3> c_e{Mat3::Identity(), Mat3::Identity(), Mat3::Identity()};
};

/// Applies the attitude/position/velocity transposition for every stage.
/// Returns std::nullopt on the first call (memory warm-up).
std::optional<FramePose> chain_step(const PoseSample& pose_bc, const GimbalAngles& angles,
                                    const GimbalConfig& cfg, ChainMemory& mem);

class GimbalChain {
 public:
  explicit GimbalChain(GimbalConfig cfg);

  std::optional<FramePose> step(const PoseSample& pose_bc);
  const GimbalConfig& config() const noexcept { return cfg_; }

 private:
  GimbalConfig cfg_;
  ChainMemory mem_;
};

}  // namespace agisim
