#include "agisim/kinematics.hpp"

#include "agisim/errors.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace agisim {

namespace {

constexpr double kMaxBodyRate = 50.0;  // [rad/s]
constexpr double kMaxSingularValue = 1.0 + 1e-6;
constexpr double kMinSingularValue = 0.9;

}  // namespace

Dcm earth_delta_dcm(double dt) {
  if (!(dt >= 0.0)) throw DomainError("earth rotation step needs dt >= 0");
  const double a = wgs84::kEarthRate * dt;
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << c, s, 0.0,
       -s, c, 0.0,
       0.0, 0.0, 1.0;
  return Dcm(m, Frame::kEcef, Frame::kEcef);
}

Dcm body_delta_dcm_inertial(const Dcm& c_now, const Dcm& c_prev, const Dcm& delta_earth) {
  return c_now.transpose() * delta_earth * c_prev;
}

Vec3 truth_rotation_rate(const Dcm& delta_ib, double dt) {
  return dcm_delta_to_rotrate(delta_ib, dt);
}

EcefVector truth_specific_force_ecef(const EcefVector& v_now, const EcefVector& v_prev,
                                     const EcefVector& p_prev, double dt) {
  if (!(dt > 0.0)) throw DomainError("specific force needs dt > 0");
  return (v_now - v_prev) / dt - gravity_ecef(p_prev) + 2.0 * earth_rate_skew() * v_prev;
}

Mat3 average_body_dcm(const Dcm& c_prev, const RotationVector& alpha, double dt) {
  const Mat3& c = c_prev.matrix();
  const Mat3 earth_term = (dt / 2.0) * earth_rate_skew() * c;
  const double mag = alpha.norm();
  if (mag <= kAngleEpsilon) return c - earth_term;
  const Mat3 a = alpha.skew();
  const double mag2 = mag * mag;
  const Mat3 average = Mat3::Identity() + ((1.0 - std::cos(mag)) / mag2) * a +
                       ((1.0 - std::sin(mag) / mag) / mag2) * a * a;
  return c * average - earth_term;
}

Mat3 specific_force_rotation(const Mat3& c_avg) {
  if (!c_avg.allFinite()) throw NumericError("average attitude matrix is not finite");
  Eigen::JacobiSVD<Mat3> svd(c_avg, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3 sv = svd.singularValues();
  if (sv.maxCoeff() > kMaxSingularValue || sv.minCoeff() < kMinSingularValue) {
    std::ostringstream os;
    os << "average attitude matrix is not a rotation average (singular values "
       << sv.transpose() << ")";
    throw NumericError(os.str());
  }
  const Mat3 r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) throw NumericError("average attitude matrix is a reflection");
  return r;
}

Vec3 truth_specific_force_body(const EcefVector& f_e, const Mat3& c_avg) {
  return specific_force_rotation(c_avg).transpose() * f_e;
}

EcefState to_ecef_state(const FramePose& pose) {
  const Dcm c_n_e = dcm_n_to_e(pose.pose.pos.lat, pose.pose.pos.lon);
  return EcefState{lla_to_ecef(pose.pose.pos), c_n_e * pose.pose.vel_n, c_n_e * pose.c_b_n};
}

std::optional<TruthInertial> kinematics_step(const FramePose& pose_b1, KinematicsMemory& mem) {
  const EcefState now = to_ecef_state(pose_b1);
  if (!mem.warm) {
    mem.warm = true;
    mem.t = pose_b1.pose.t;
    mem.c_b_e = now.c_b_e.matrix();
    mem.v_e = now.v_e;
    mem.p_e = now.p_e;
    mem.p_lla = pose_b1.pose.pos;
    return std::nullopt;
  }
  const double dt = pose_b1.pose.t - mem.t;
  if (!(dt > 0.0)) throw ContractError("kinematics needs strictly increasing time");

  const Dcm c_prev(mem.c_b_e, now.c_b_e.from(), Frame::kEcef);
  const Dcm delta_ib = body_delta_dcm_inertial(now.c_b_e, c_prev, earth_delta_dcm(dt));

  TruthInertial out;
  out.t = pose_b1.pose.t;
  out.dt = dt;
  out.omega = truth_rotation_rate(delta_ib, dt);
  if (!(out.omega.norm() < kMaxBodyRate)) {
    std::ostringstream os;
    os << "body rate " << out.omega.norm() << " rad/s exceeds the 50 rad/s bound at t="
       << out.t;
    throw NumericError(os.str());
  }
  const EcefVector f_e = truth_specific_force_ecef(now.v_e, mem.v_e, mem.p_e, dt);
  const Mat3 c_avg = average_body_dcm(c_prev, RotationVector(out.omega * dt), dt);
  out.f = truth_specific_force_body(f_e, c_avg);

  mem.t = out.t;
  mem.c_b_e = now.c_b_e.matrix();
  mem.v_e = now.v_e;
  mem.p_e = now.p_e;
  mem.p_lla = pose_b1.pose.pos;
  return out;
}

}  // namespace agisim
