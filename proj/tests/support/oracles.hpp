// Independent reference computations used only by the tests. None of these
// call into the library's own math, so agreement is meaningful.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace oracle {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kA = 6378137.0;
inline constexpr double kF = 1.0 / 298.257223563;
inline constexpr double kE2 = 6.69437999014e-3;
inline constexpr double kOmega = 7.292115e-5;
inline constexpr double kGM = 3.986004418e14;

inline double deg(double d) { return d * kPi / 180.0; }

/// Normal gravity magnitude on and above the ellipsoid (closed form with
/// second-order height correction).
inline double somigliana(double lat, double h = 0.0) {
  const double ge = 9.7803253359;
  const double k = 0.00193185265241;
  const double s2 = std::sin(lat) * std::sin(lat);
  const double g0 = ge * (1.0 + k * s2) / std::sqrt(1.0 - kE2 * s2);
  const double b = kA * (1.0 - kF);
  const double m = kOmega * kOmega * kA * kA * b / kGM;
  return g0 * (1.0 - 2.0 / kA * (1.0 + kF + m - 2.0 * kF * s2) * h + 3.0 * h * h / (kA * kA));
}

/// Hamilton quaternion (w, x, y, z).
struct Quat {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  static Quat from_rotation_vector(const Vec3& r) {
    const double a = r.norm();
    if (a == 0.0) return {};
    const Vec3 n = r / a;
    const double s = std::sin(a / 2.0);
    return {std::cos(a / 2.0), s * n.x(), s * n.y(), s * n.z()};
  }

  Quat operator*(const Quat& q) const {
    return {w * q.w - x * q.x - y * q.y - z * q.z, w * q.x + x * q.w + y * q.z - z * q.y,
            w * q.y - x * q.z + y * q.w + z * q.x, w * q.z + x * q.y - y * q.x + z * q.w};
  }

  /// Active rotation matrix.
  Mat3 matrix() const {
    Mat3 m;
    m << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
         2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
         2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return m;
  }
};

inline Mat3 rotation(const Vec3& r) { return Quat::from_rotation_vector(r).matrix(); }

/// Gauss-Legendre nodes and weights on [0, 1] (Newton on P_n).
inline std::vector<std::array<double, 2>> gauss_legendre(int n) {
  std::vector<std::array<double, 2>> out;
  for (int i = 1; i <= n; ++i) {
    double x = std::cos(kPi * (i - 0.25) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out.push_back({0.5 * (x + 1.0), 0.5 * w});
  }
  return out;
}

/// C_prev * integral_0^1 rot(s * alpha) ds by quadrature of quaternion rotations.
inline Mat3 averaged_rotation(const Mat3& c_prev, const Vec3& alpha, int nodes = 24) {
  Mat3 sum = Mat3::Zero();
  for (const auto& [s, w] : gauss_legendre(nodes)) sum += w * rotation(s * alpha);
  return c_prev * sum;
}

/// Geodetic -> ECEF (textbook form, written independently of the library).
inline Vec3 ecef(double lat, double lon, double h) {
  const double rn = kA / std::sqrt(1.0 - kE2 * std::sin(lat) * std::sin(lat));
  return {(rn + h) * std::cos(lat) * std::cos(lon), (rn + h) * std::cos(lat) * std::sin(lon),
          (rn * (1.0 - kE2) + h) * std::sin(lat)};
}

/// NED -> ECEF rotation (columns are the N, E, D unit vectors).
inline Mat3 ned_to_ecef(double lat, double lon) {
  const double sl = std::sin(lat), cl = std::cos(lat), so = std::sin(lon), co = std::cos(lon);
  Mat3 m;
  m << -sl * co, -so, -cl * co,
       -sl * so, co, -cl * so,
       cl, 0.0, -sl;
  return m;
}

/// ZYX Euler -> body-to-NED, as a product of elementary active rotations.
inline Mat3 body_to_ned(double roll, double pitch, double yaw) {
  return rotation(Vec3(0, 0, yaw)) * rotation(Vec3(0, pitch, 0)) * rotation(Vec3(roll, 0, 0));
}

/// Meridian and transverse radii by finite differences of the ECEF surface.
inline std::array<double, 2> numeric_radii(double lat) {
  const double h = 1e-6;
  const double rm = (ecef(lat + h, 0.3, 0.0) - ecef(lat - h, 0.3, 0.0)).norm() / (2.0 * h);
  const double re =
      (ecef(lat, 0.3 + h, 0.0) - ecef(lat, 0.3 - h, 0.0)).norm() / (2.0 * h) / std::cos(lat);
  return {rm, re};
}

/// Rotation angle of a matrix.
inline double angle_of(const Mat3& r) {
  return std::acos(std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0));
}

}  // namespace oracle
