#include "agisim/imu_error.hpp"

#include "agisim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace agisim {

namespace {

constexpr double kScaleAccelCoupling = 5e-3;
constexpr double kScaleGyroCoupling = 3e-3;
constexpr double kScaleGyroG = 1e-5;
constexpr double kSanityFactor = 10.0;

const Vec3 kDefaultAccelBias{0.009, -0.013, 0.008};
const Vec3 kDefaultGyroBias{-0.175e-3, 0.252e-3, 0.155e-3};
constexpr double kDefaultAccelPsd = 7.845e-4;
constexpr double kDefaultGyroPsd = 2.327e-6;

// Streams derived from one user seed.
constexpr std::uint64_t kMatrixStream = 1;
constexpr std::uint64_t kNoiseStream = 2;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_magnitude(const Mat3& m, double scale, const char* name) {
  if (!m.allFinite() || m.cwiseAbs().maxCoeff() > kSanityFactor * scale) {
    std::ostringstream os;
    os << "imu " << name << " entries must be finite and within " << kSanityFactor * scale;
    throw ConfigError(os.str());
  }
}

void check_magnitude(const Vec3& v, const Vec3& scale, const char* name) {
  if (!v.allFinite() ||
      (v.cwiseAbs().array() > kSanityFactor * scale.cwiseAbs().array()).any()) {
    std::ostringstream os;
    os << "imu " << name << " entries must be finite and within 10x of the default model";
    throw ConfigError(os.str());
  }
}

void check_psd(double w, double scale, const char* name) {
  if (!std::isfinite(w) || w < 0.0 || w > kSanityFactor * scale) {
    std::ostringstream os;
    os << "imu " << name << " must be in [0, " << kSanityFactor * scale << "]";
    throw ConfigError(os.str());
  }
}

}  // namespace

NoiseRng::NoiseRng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed ^ splitmix64(stream))) {}

double NoiseRng::uniform() {
  ++draws_;
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NoiseRng::uniform_symmetric() { return 2.0 * uniform() - 1.0; }

double NoiseRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

ImuErrorParams ImuErrorParams::ideal(std::uint64_t seed) {
  ImuErrorParams p;
  p.seed = seed;
  return p;
}

void ImuErrorParams::validate() const {
  check_magnitude(accel_bias, kDefaultAccelBias, "b_a");
  check_magnitude(gyro_bias, kDefaultGyroBias, "b_g");
  check_magnitude(accel_scale, kScaleAccelCoupling, "M_a");
  check_magnitude(gyro_scale, kScaleGyroCoupling, "M_g");
  check_magnitude(gyro_g_sensitivity, kScaleGyroG, "G_g");
  if (gyro_scale(1, 0) != 0.0 || gyro_scale(2, 0) != 0.0 || gyro_scale(2, 1) != 0.0) {
    throw ConfigError("imu M_g must be upper triangular");
  }
  check_psd(accel_noise_psd, kDefaultAccelPsd, "w_a");
  check_psd(gyro_noise_psd, kDefaultGyroPsd, "w_g");
}

ImuErrorParams default_params(std::uint64_t seed) {
  ImuErrorParams p;
  p.seed = seed;
  p.accel_bias = kDefaultAccelBias;
  p.gyro_bias = kDefaultGyroBias;
  p.accel_noise_psd = kDefaultAccelPsd;
  p.gyro_noise_psd = kDefaultGyroPsd;

  NoiseRng rng(seed, kMatrixStream);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) p.accel_scale(r, c) = kScaleAccelCoupling * rng.uniform_symmetric();
  for (int r = 0; r < 3; ++r)
    for (int c = r; c < 3; ++c) p.gyro_scale(r, c) = kScaleGyroCoupling * rng.uniform_symmetric();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) p.gyro_g_sensitivity(r, c) = kScaleGyroG * rng.uniform_symmetric();
  return p;
}

NoiseRng make_noise_rng(const ImuErrorParams& params) { return NoiseRng(params.seed, kNoiseStream); }

ImuSample corrupt(const TruthInertial& truth, const ImuErrorParams& params, NoiseRng& rng) {
  if (!(truth.dt > 0.0)) throw DomainError("imu corruption needs dt > 0");
  const double inv_sqrt_dt = 1.0 / std::sqrt(truth.dt);
  const double sigma_a = params.accel_noise_psd * inv_sqrt_dt;
  const double sigma_g = params.gyro_noise_psd * inv_sqrt_dt;

  Vec3 n_a, n_g;
  for (int k = 0; k < 3; ++k) n_a[k] = sigma_a * rng.normal();
  for (int k = 0; k < 3; ++k) n_g[k] = sigma_g * rng.normal();

  ImuSample out;
  out.t = truth.t;
  out.dt = truth.dt;
  out.f = params.accel_bias + truth.f + params.accel_scale * truth.f + n_a;
  out.omega = params.gyro_bias + truth.omega + params.gyro_scale * truth.omega +
              params.gyro_g_sensitivity * truth.f + n_g;
  out.dv = out.f * out.dt;
  out.dtheta = out.omega * out.dt;
  return out;
}

std::vector<AllanPoint> allan_deviation(std::span<const double> rate, double dt) {
  const std::size_t n = rate.size();
  if (n < kMinAllanSamples) {
    std::ostringstream os;
    os << "allan deviation needs at least " << kMinAllanSamples << " samples, got " << n;
    throw DomainError(os.str());
  }
  if (!(dt > 0.0)) throw DomainError("allan deviation needs dt > 0");

  // Integrated signal: theta_k = dt * sum_{j<k} rate_j
  std::vector<double> theta(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) theta[k + 1] = theta[k] + rate[k] * dt;

  std::vector<AllanPoint> curve;
  for (std::size_t m = 1; m <= n / 4; m *= 2) {
    const double tau = static_cast<double>(m) * dt;
    const std::size_t terms = n + 1 - 2 * m;
    double sum = 0.0;
    for (std::size_t k = 0; k < terms; ++k) {
      const double d = theta[k + 2 * m] - 2.0 * theta[k + m] + theta[k];
      sum += d * d;
    }
    const double avar = sum / (2.0 * tau * tau * static_cast<double>(terms));
    curve.push_back({tau, std::sqrt(avar), terms});
  }
  return curve;
}

double allan_at(const std::vector<AllanPoint>& curve, double tau) {
  if (curve.empty()) throw DomainError("empty allan curve");
  if (tau <= curve.front().tau) return curve.front().adev;
  if (tau >= curve.back().tau) return curve.back().adev;
  const auto hi = std::lower_bound(curve.begin(), curve.end(), tau,
                                   [](const AllanPoint& p, double t) { return p.tau < t; });
  const auto lo = hi - 1;
  if (hi->tau == tau) return hi->adev;
  if (lo->adev <= 0.0 || hi->adev <= 0.0) {
    const double w = (tau - lo->tau) / (hi->tau - lo->tau);
    return lo->adev + w * (hi->adev - lo->adev);
  }
  const double w = std::log(tau / lo->tau) / std::log(hi->tau / lo->tau);
  return std::exp(std::log(lo->adev) + w * (std::log(hi->adev) - std::log(lo->adev)));
}

}  // namespace agisim
