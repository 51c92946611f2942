// WGS-84 Earth model, frame conversions and rotation-matrix utilities.
//
// Conventions used throughout agisim:
//   - A Dcm labelled (from -> to) maps a vector resolved in `from` into `to`,
//     i.e. it is C_from^to in the usual navigation notation.
//   - NED local-level frame, ECEF earth frame, body Euler angles in the
//     aerospace ZYX (yaw, pitch, roll) order, body -> NED.
#pragma once

#include <Eigen/Dense>

#include <string_view>

namespace agisim {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Vector resolved in the earth-centered earth-fixed frame [m, m/s or m/s^2].
using EcefVector = Vec3;

namespace wgs84 {
inline constexpr double kSemiMajorAxis = 6378137.0;             // a [m]
inline constexpr double kEccentricitySq = 6.69437999014e-3;     // e^2
inline constexpr double kEarthRate = 7.292115e-5;               // omega_ie [rad/s]
inline constexpr double kGravitationalConstant = 3.986004418e14;  // mu [m^3/s^2]
inline constexpr double kJ2 = 1.082627e-3;
}  // namespace wgs84

inline constexpr double kPi = 3.14159265358979323846;

/// Small-angle threshold below which sc/sin(sc) and similar ratios take their limit.
inline constexpr double kAngleEpsilon = 1e-8;

enum class Frame {
  kPlatform,  // b_c, airframe body
  kMount,     // pan base, rigidly attached to the airframe
  kPan,       // g_P
  kTilt,      // g_T
  kRoll,      // g_R
  kImu,       // b_1
  kNed,
  kEcef,
  kInertial,
};

std::string_view frame_name(Frame frame);

/// Orthonormal rotation matrix with source/target frame labels.
///
/// Construction checks orthonormality (max |C C^T - I| < 1e-9 and det within
/// 1e-9 of one); composition checks that the labels chain.
class Dcm {
 public:
  Dcm(const Mat3& m, Frame from, Frame to);

  static Dcm identity(Frame from, Frame to);

  const Mat3& matrix() const noexcept { return m_; }
  Frame from() const noexcept { return from_; }
  Frame to() const noexcept { return to_; }

  Dcm transpose() const;
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

  /// Same matrix, different labels (e.g. reuse a rotation for another pair).
  Dcm relabel(Frame from, Frame to) const;

 private:
  Mat3 m_;
  Frame from_;
  Frame to_;
};

/// C_b^c * C_a^b = C_a^c. Throws ContractError if lhs.from() != rhs.to().
Dcm operator*(const Dcm& lhs, const Dcm& rhs);

/// max_ij |(M M^T - I)_ij|
double orthonormality_error(const Mat3& m);

/// Nearest rotation in the Frobenius sense (symmetric / polar correction).
Mat3 orthonormalize(const Mat3& m);

struct GeodeticPosition {
  double lat = 0.0;  // [rad]
  double lon = 0.0;  // [rad], (-pi, pi]
  double alt = 0.0;  // height above ellipsoid [m], up positive
};

/// Throws DomainError unless |lat| <= pi/2, lon finite and alt in [-5000, 100000] m.
void validate(const GeodeticPosition& pos);

/// Wrap an angle into (-pi, pi].
double wrap_pi(double angle);

struct Radii {
  double meridian;    // R_N
  double transverse;  // R_E
};

Radii radii_of_curvature(double lat);

/// Jacobian mapping a small NED displacement [m] into (dlat, dlon, dalt).
/// Throws DomainError within 1e-6 rad of a pole.
Mat3 pos_transform_jacobian(double lat, double alt);

struct EulerAngles {
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;
};

/// ZYX Euler angles -> C_body^NED.
Dcm euler_to_dcm(const EulerAngles& att, Frame body = Frame::kPlatform);

/// Inverse of euler_to_dcm; requires a (body -> NED) Dcm.
EulerAngles dcm_to_euler(const Dcm& c_b_n);

/// C_n^e at the given geodetic latitude / longitude.
Dcm dcm_n_to_e(double lat, double lon);

EcefVector lla_to_ecef(const GeodeticPosition& pos);

/// Iterative inverse (|dlat| < 1e-13 rad). Throws DomainError for |p| < 6e6 m.
GeodeticPosition ecef_to_lla(const EcefVector& p);

/// Plumb-bob gravity (J2 gravitation plus centrifugal) resolved in ECEF.
EcefVector gravity_ecef(const EcefVector& p);

Mat3 skew(const Vec3& v);

/// Omega_ie^e, the skew matrix of the earth rotation vector.
Mat3 earth_rate_skew();

/// Rotation accumulated over one step together with its skew matrix.
struct RotationVector {
  Vec3 angle = Vec3::Zero();  // [rad]

  RotationVector() = default;
  explicit RotationVector(const Vec3& a) : angle(a) {}

  Mat3 skew() const { return agisim::skew(angle); }
  double norm() const { return angle.norm(); }
};

/// Exact rotation matrix exp([alpha x]) (Rodrigues).
Mat3 rodrigues(const RotationVector& alpha);

/// Rotation rate from a delta DCM  dC = C(t)^T C(t - dt):
/// antisymmetric differences scaled by 1/(2 dt), then the sc/sin(sc)
/// large-angle compensation. Throws NumericError when the trace-derived
/// acos argument leaves [-1, 1] by more than 1e-9, DomainError for dt <= 0.
Vec3 rotation_rate_from_delta(const Mat3& delta, double dt);
Vec3 dcm_delta_to_rotrate(const Dcm& delta, double dt);

/// Same extraction without the sc/sin(sc) factor (reference only).
Vec3 rotation_rate_uncompensated(const Mat3& delta, double dt);

}  // namespace agisim
