// Ground-truth average specific force and angular rate of the IMU body from
// consecutive IMU-frame poses, mechanized in ECEF.
#pragma once

#include "agisim/geodesy.hpp"
#include "agisim/gimbal.hpp"

#include <optional>

namespace agisim {

/// Average specific force and rotation rate over [t - dt, t], resolved in b_1.
struct TruthInertial {
  double t = 0.0;
  double dt = 0.0;
  Vec3 f = Vec3::Zero();      // [m/s^2]
  Vec3 omega = Vec3::Zero();  // [rad/s]
};

/// Earth rotation over dt as a (passive) rotation about the polar axis.
Dcm earth_delta_dcm(double dt);

/// dC_b^i = C_now^T * dC_e^i * C_prev, both body DCMs being C_b1^e.
Dcm body_delta_dcm_inertial(const Dcm& c_now, const Dcm& c_prev, const Dcm& delta_earth);

/// Shares its implementation with dcm_delta_to_rotrate.
Vec3 truth_rotation_rate(const Dcm& delta_ib, double dt);

/// f^e = (v_now - v_prev)/dt - g(p_prev) + 2 Omega_ie v_prev
EcefVector truth_specific_force_ecef(const EcefVector& v_now, const EcefVector& v_prev,
                                     const EcefVector& p_prev, double dt);

/// Attitude averaged over the interval:
///   C_prev * (I + (1-cos a)/a^2 A + (1 - sin a / a)/a^2 A^2) - dt/2 Omega_ie C_prev
/// with a = |alpha|; the bracket collapses to I for a <= 1e-8.
Mat3 average_body_dcm(const Dcm& c_prev, const RotationVector& alpha, double dt);

/// f^b = orthonormalize(C_avg)^T f^e. Throws NumericError when C_avg's singular
/// values leave [0.9, 1 + 1e-6] (not an average of nearby rotations).
Vec3 truth_specific_force_body(const EcefVector& f_e, const Mat3& c_avg);

/// Rotation that maps body-resolved average specific force into ECEF; shared
/// with the strapdown integrator so both directions use the same matrix.
Mat3 specific_force_rotation(const Mat3& c_avg);

struct KinematicsMemory {
  bool warm = false;
  double t = 0.0;
  Mat3 c_b_e = Mat3::Identity();
  EcefVector v_e = EcefVector::Zero();
  EcefVector p_e = EcefVector::Zero();
  GeodeticPosition p_lla;
};

/// ECEF-resolved state of a frame pose.
struct EcefState {
  EcefVector p_e;
  EcefVector v_e;
  Dcm c_b_e;
};

EcefState to_ecef_state(const FramePose& pose);

/// Returns std::nullopt on the first call (memory warm-up).
std::optional<TruthInertial> kinematics_step(const FramePose& pose_b1, KinematicsMemory& mem);

class KinematicsEngine {
 public:
  std::optional<TruthInertial> step(const FramePose& pose_b1) {
    return kinematics_step(pose_b1, mem_);
  }

 private:
  KinematicsMemory mem_;
};

}  // namespace agisim
