// IMU error model: biases, scale/cross-coupling, g-dependent gyro bias and
// white noise on the ground-truth average signals, plus dv/dtheta increments.
#pragma once

#include "agisim/geodesy.hpp"
#include "agisim/kinematics.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace agisim {

/// Portable random source: mt19937_64 raw output with hand-written uniform
/// and Box-Muller normal transforms, so streams are identical on every platform.
class NoiseRng {
 public:
  explicit NoiseRng(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform();            // [0, 1)
  double uniform_symmetric();  // [-1, 1)
  double normal();             // N(0, 1), one variate per call

  std::uint64_t draws() const noexcept { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

struct ImuErrorParams {
  Vec3 accel_bias = Vec3::Zero();         // b_a [m/s^2]
  Vec3 gyro_bias = Vec3::Zero();          // b_g [rad/s]
  Mat3 accel_scale = Mat3::Zero();        // M_a
  Mat3 gyro_scale = Mat3::Zero();         // M_g, upper triangular
  Mat3 gyro_g_sensitivity = Mat3::Zero(); // G_g [rad s/m]
  double accel_noise_psd = 0.0;           // w_a root-PSD [m/s^1.5]
  double gyro_noise_psd = 0.0;            // w_g root-PSD [rad/s^0.5]
  std::uint64_t seed = 0;

  /// Error-free sensor.
  static ImuErrorParams ideal(std::uint64_t seed = 0);

  /// Throws ConfigError: M_g must be upper triangular, every magnitude within
  /// 10x its default-model scale, all values finite and PSDs >= 0.
  void validate() const;
};

/// Table values for biases and noise; M_a, M_g, G_g drawn uniform on [-1, 1]
/// times their scales (5e-3, 3e-3, 1e-5) from the seeded generator.
ImuErrorParams default_params(std::uint64_t seed);

/// Simulated IMU output. dv = f * dt and dtheta = omega * dt.
struct ImuSample {
  double t = 0.0;
  double dt = 0.0;
  Vec3 f = Vec3::Zero();
  Vec3 omega = Vec3::Zero();
  Vec3 dv = Vec3::Zero();
  Vec3 dtheta = Vec3::Zero();
};

/// Draws exactly six normal variates (accel x,y,z then gyro x,y,z) per call.
ImuSample corrupt(const TruthInertial& truth, const ImuErrorParams& params, NoiseRng& rng);

/// Noise generator for a parameter set; independent of the matrix draws.
NoiseRng make_noise_rng(const ImuErrorParams& params);

struct AllanPoint {
  double tau = 0.0;   // [s]
  double adev = 0.0;  // Allan deviation, same unit as the input
  std::size_t clusters = 0;
};

inline constexpr std::size_t kMinAllanSamples = std::size_t{1} << 14;

/// Overlapped Allan deviation of a rate series sampled every dt, evaluated
/// at octave-spaced cluster sizes m = 1, 2, 4, ... up to N/4.
/// Throws DomainError for fewer than 2^14 samples.
std::vector<AllanPoint> allan_deviation(std::span<const double> rate, double dt);

/// Log-log interpolation of an Allan curve at tau.
double allan_at(const std::vector<AllanPoint>& curve, double tau);

}  // namespace agisim
