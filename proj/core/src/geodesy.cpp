#include "agisim/geodesy.hpp"

#include "agisim/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace agisim {

namespace {

constexpr double kOrthoTolerance = 1e-9;
constexpr double kAcosSlack = 1e-9;
constexpr double kMinGeocentricRadius = 6e6;
constexpr double kPoleMargin = 1e-6;

std::string fmt_angle(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

std::string_view frame_name(Frame frame) {
  switch (frame) {
    case Frame::kPlatform: return "platform";
    case Frame::kMount: return "mount";
    case Frame::kPan: return "pan";
    case Frame::kTilt: return "tilt";
    case Frame::kRoll: return "roll";
    case Frame::kImu: return "imu";
    case Frame::kNed: return "ned";
    case Frame::kEcef: return "ecef";
    case Frame::kInertial: return "inertial";
  }
  return "?";
}

Dcm::Dcm(const Mat3& m, Frame from, Frame to) : m_(m), from_(from), to_(to) {
  if (!m.allFinite()) throw NumericError("DCM has non-finite entries");
  const double err = orthonormality_error(m);
  const double det = m.determinant();
  if (err >= kOrthoTolerance || std::abs(det - 1.0) > kOrthoTolerance) {
    std::ostringstream os;
    os << "DCM " << frame_name(from) << "->" << frame_name(to)
       << " is not orthonormal (|CC^T-I|=" << err << ", det=" << det << ")";
    throw NumericError(os.str());
  }
}

Dcm Dcm::identity(Frame from, Frame to) { return Dcm(Mat3::Identity(), from, to); }

Dcm Dcm::transpose() const { return Dcm(m_.transpose(), to_, from_); }

Dcm Dcm::relabel(Frame from, Frame to) const { return Dcm(m_, from, to); }

Dcm operator*(const Dcm& lhs, const Dcm& rhs) {
  if (lhs.from() != rhs.to()) {
    std::ostringstream os;
    os << "frame mismatch composing (" << frame_name(lhs.from()) << "->"
       << frame_name(lhs.to()) << ") * (" << frame_name(rhs.from()) << "->"
       << frame_name(rhs.to()) << ")";
    throw ContractError(os.str());
  }
  return Dcm(lhs.matrix() * rhs.matrix(), rhs.from(), lhs.to());
}

double orthonormality_error(const Mat3& m) {
  return (m * m.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff();
}

Mat3 orthonormalize(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

void validate(const GeodeticPosition& pos) {
  if (!std::isfinite(pos.lat) || !std::isfinite(pos.lon) || !std::isfinite(pos.alt)) {
    throw DomainError("geodetic position has non-finite components");
  }
  if (std::abs(pos.lat) > kPi / 2) {
    throw DomainError("latitude out of range: " + fmt_angle(pos.lat));
  }
  if (pos.alt < -5000.0 || pos.alt > 100000.0) {
    throw DomainError("altitude out of range [-5000, 100000] m: " + fmt_angle(pos.alt));
  }
}

double wrap_pi(double angle) {
  double a = std::remainder(angle, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

Radii radii_of_curvature(double lat) {
  if (!(std::abs(lat) <= kPi / 2)) {
    throw DomainError("latitude out of range: " + fmt_angle(lat));
  }
  const double s = std::sin(lat);
  const double denom = 1.0 - wgs84::kEccentricitySq * s * s;
  const double sq = std::sqrt(denom);
  return Radii{
      wgs84::kSemiMajorAxis * (1.0 - wgs84::kEccentricitySq) / (denom * sq),
      wgs84::kSemiMajorAxis / sq,
  };
}

Mat3 pos_transform_jacobian(double lat, double alt) {
  if (std::abs(lat) > kPi / 2 - kPoleMargin) {
    throw DomainError("position Jacobian is singular near the pole (lat=" +
                      fmt_angle(lat) + ")");
  }
  const Radii r = radii_of_curvature(lat);
  Mat3 mp = Mat3::Zero();
  mp(0, 0) = 1.0 / (r.meridian + alt);
  mp(1, 1) = 1.0 / ((r.transverse + alt) * std::cos(lat));
  mp(2, 2) = -1.0;
  return mp;
}

Dcm euler_to_dcm(const EulerAngles& att, Frame body) {
  const double cr = std::cos(att.roll), sr = std::sin(att.roll);
  const double cp = std::cos(att.pitch), sp = std::sin(att.pitch);
  const double cy = std::cos(att.yaw), sy = std::sin(att.yaw);
  Mat3 c;
  c << cp * cy, -cr * sy + sr * sp * cy, sr * sy + cr * sp * cy,
       cp * sy, cr * cy + sr * sp * sy, -sr * cy + cr * sp * sy,
       -sp, sr * cp, cr * cp;
  return Dcm(c, body, Frame::kNed);
}

EulerAngles dcm_to_euler(const Dcm& c_b_n) {
  if (c_b_n.to() != Frame::kNed) {
    throw ContractError("dcm_to_euler expects a body->ned DCM, got target " +
                        std::string(frame_name(c_b_n.to())));
  }
  const Mat3& c = c_b_n.matrix();
  EulerAngles e;
  e.roll = std::atan2(c(2, 1), c(2, 2));
  e.pitch = std::atan2(-c(2, 0), std::hypot(c(2, 1), c(2, 2)));
  e.yaw = std::atan2(c(1, 0), c(0, 0));
  return e;
}

Dcm dcm_n_to_e(double lat, double lon) {
  const double sl = std::sin(lat), cl = std::cos(lat);
  const double so = std::sin(lon), co = std::cos(lon);
  Mat3 c;
  // columns: N, E, D axes resolved in ECEF
  c << -sl * co, -so, -cl * co,
       -sl * so, co, -cl * so,
       cl, 0.0, -sl;
  return Dcm(c, Frame::kNed, Frame::kEcef);
}

EcefVector lla_to_ecef(const GeodeticPosition& pos) {
  const double sl = std::sin(pos.lat), cl = std::cos(pos.lat);
  const double rn = wgs84::kSemiMajorAxis / std::sqrt(1.0 - wgs84::kEccentricitySq * sl * sl);
  return {(rn + pos.alt) * cl * std::cos(pos.lon), (rn + pos.alt) * cl * std::sin(pos.lon),
          (rn * (1.0 - wgs84::kEccentricitySq) + pos.alt) * sl};
}

GeodeticPosition ecef_to_lla(const EcefVector& p) {
  if (!p.allFinite() || p.norm() < kMinGeocentricRadius) {
    throw DomainError("ECEF position too close to the geocenter for conversion");
  }
  constexpr double a = wgs84::kSemiMajorAxis;
  constexpr double e2 = wgs84::kEccentricitySq;
  const double rho = std::hypot(p.x(), p.y());

  GeodeticPosition out;
  out.lon = std::atan2(p.y(), p.x());
  double lat = std::atan2(p.z(), rho * (1.0 - e2));
  double alt = 0.0;
  for (int iter = 0; iter < 64; ++iter) {
    const double s = std::sin(lat), c = std::cos(lat);
    const double rn = a / std::sqrt(1.0 - e2 * s * s);
    // height from whichever coordinate is better conditioned
    alt = (std::abs(lat) < kPi / 4) ? rho / c - rn : p.z() / s - rn * (1.0 - e2);
    const double next = std::atan2(p.z(), rho * (1.0 - e2 * rn / (rn + alt)));
    const double delta = std::abs(next - lat);
    lat = next;
    if (delta < 1e-13) break;
  }
  const double s = std::sin(lat), c = std::cos(lat);
  const double rn = a / std::sqrt(1.0 - e2 * s * s);
  alt = (std::abs(lat) < kPi / 4) ? rho / c - rn : p.z() / s - rn * (1.0 - e2);
  out.lat = lat;
  out.alt = alt;
  return out;
}

EcefVector gravity_ecef(const EcefVector& p) {
  const double r = p.norm();
  if (!std::isfinite(r) || r < kMinGeocentricRadius) {
    throw DomainError("gravity model undefined near the geocenter");
  }
  constexpr double a = wgs84::kSemiMajorAxis;
  const double zr2 = 5.0 * (p.z() / r) * (p.z() / r);
  const double k = 1.5 * wgs84::kJ2 * (a / r) * (a / r);
  const Vec3 j2(p.x() * (1.0 - zr2), p.y() * (1.0 - zr2), p.z() * (3.0 - zr2));
  const Vec3 gravitation = -wgs84::kGravitationalConstant / (r * r * r) * (p + k * j2);
  constexpr double w2 = wgs84::kEarthRate * wgs84::kEarthRate;
  return gravitation + w2 * Vec3(p.x(), p.y(), 0.0);
}

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Mat3 earth_rate_skew() { return skew(Vec3(0.0, 0.0, wgs84::kEarthRate)); }

Mat3 rodrigues(const RotationVector& alpha) {
  const double mag = alpha.norm();
  const Mat3 a = alpha.skew();
  if (mag <= kAngleEpsilon) return Mat3::Identity() + a;
  return Mat3::Identity() + (std::sin(mag) / mag) * a +
         ((1.0 - std::cos(mag)) / (mag * mag)) * a * a;
}

Vec3 rotation_rate_uncompensated(const Mat3& d, double dt) {
  if (!(dt > 0.0)) throw DomainError("rotation rate extraction needs dt > 0");
  return Vec3(d(1, 2) - d(2, 1), d(2, 0) - d(0, 2), d(0, 1) - d(1, 0)) / (2.0 * dt);
}

Vec3 rotation_rate_from_delta(const Mat3& d, double dt) {
  Vec3 w = rotation_rate_uncompensated(d, dt);
  double arg = (d.trace() - 1.0) / 2.0;
  if (!std::isfinite(arg) || arg > 1.0 + kAcosSlack || arg < -1.0 - kAcosSlack) {
    throw NumericError("delta DCM trace gives acos argument " + fmt_angle(arg) +
                       " outside [-1, 1]");
  }
  arg = std::clamp(arg, -1.0, 1.0);
  const double sc = std::acos(arg);
  if (std::abs(sc) >= kAngleEpsilon) {
    const double s = std::sin(sc);
    // a half-turn per step has no unique axis from the antisymmetric part
    if (s < 1e-12) throw NumericError("delta DCM is a half-turn; rate is ambiguous");
    w *= sc / s;
  }
  return w;
}

Vec3 dcm_delta_to_rotrate(const Dcm& delta, double dt) {
  return rotation_rate_from_delta(delta.matrix(), dt);
}

}  // namespace agisim
