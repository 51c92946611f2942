#include "agisim/errors.hpp"
#include "agisim/kinematics.hpp"
#include "agisim/simulator.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace agisim;

namespace {

std::vector<TruthInertial> truth_of(const std::vector<PoseSample>& poses, GimbalConfig gimbal) {
  return simulate(poses, gimbal, ImuErrorParams::ideal()).inertial;
}

GimbalConfig off() {
  GimbalConfig g = GimbalConfig::reference_motion();
  g.enabled = false;
  return g;
}

}  // namespace

TEST(Stationary, SensesEarthRateAndNormalGravity) {
  for (double lat_deg : {0.0, 30.0, 52.0, 75.0}) {
    for (const EulerAngles att : {EulerAngles{0, 0, 0}, EulerAngles{0.3, -0.4, 2.0}}) {
      const double lat = oracle::deg(lat_deg);
      const auto poses = synth_stationary({lat, 0.3, 500.0}, att, 4.0, 50.0);
      const auto truth = truth_of(poses, off());
      ASSERT_EQ(truth.size(), poses.size() - 2);
      for (const auto& s : truth) {
        EXPECT_NEAR(s.omega.norm(), 7.292115e-5, 1e-12);
        EXPECT_NEAR(s.f.norm(), oracle::somigliana(lat, 500.0), 1e-4);
      }
    }
  }
}

TEST(Stationary, LevelSensorReadsUpwardForceAndEarthRateComponents) {
  const double lat = oracle::deg(40.0);
  const auto truth = truth_of(synth_stationary({lat, 0.0, 0.0}, {}, 1.0, 50.0), off());
  const TruthInertial& s = truth.front();
  EXPECT_NEAR(s.f.z(), -oracle::somigliana(lat), 1e-4);
  EXPECT_LT(std::hypot(s.f.x(), s.f.y()), 1e-4);
  EXPECT_NEAR(s.omega.x(), 7.292115e-5 * std::cos(lat), 1e-13);
  EXPECT_NEAR(s.omega.y(), 0.0, 1e-13);
  EXPECT_NEAR(s.omega.z(), -7.292115e-5 * std::sin(lat), 1e-13);
}

TEST(AverageDcm, BodyPartMatchesQuadratureOfInterpolatedRotations) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Mat3 c_prev = oracle::rotation(Vec3(c(gen), c(gen), c(gen)) * 2.0);
    const Vec3 alpha = Vec3(c(gen), c(gen), c(gen)) * 0.5;
    const double dt = 0.02;
    const Dcm prev(c_prev, Frame::kImu, Frame::kEcef);
    const Mat3 body = average_body_dcm(prev, RotationVector(alpha), dt) +
                      (dt / 2.0) * earth_rate_skew() * c_prev;
    EXPECT_LT((body - oracle::averaged_rotation(c_prev, alpha)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(AverageDcm, EarthTermMatchesRotatingFrameAverageToFirstOrder) {
  const Mat3 c_prev = oracle::rotation(Vec3(0.2, -0.5, 1.1));
  const Vec3 alpha(1e-3, -2e-3, 5e-4);
  const double dt = 0.02;
  Mat3 ref = Mat3::Zero();
  for (const auto& [s, w] : oracle::gauss_legendre(16)) {
    // ECEF axes rotate by -w_ie * s * dt about z relative to inertial space.
    ref += w * oracle::rotation(Vec3(0, 0, -oracle::kOmega * s * dt)) * c_prev *
           oracle::rotation(s * alpha);
  }
  const Mat3 got = average_body_dcm(Dcm(c_prev, Frame::kImu, Frame::kEcef), RotationVector(alpha), dt);
  EXPECT_LT((got - ref).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(AverageDcm, SmallAngleLimit) {
  const Mat3 c_prev = oracle::rotation(Vec3(0.1, 0.2, 0.3));
  const Mat3 got = average_body_dcm(Dcm(c_prev, Frame::kImu, Frame::kEcef),
                                    RotationVector(Vec3(1e-9, 0, 0)), 0.0);
  EXPECT_LT((got - c_prev).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(SpecificForceRotation, RejectsMatricesThatAreNotRotationAverages) {
  EXPECT_THROW(specific_force_rotation(2.0 * Mat3::Identity()), NumericError);
  EXPECT_THROW(specific_force_rotation(0.5 * Mat3::Identity()), NumericError);
  Mat3 reflect = Mat3::Identity();
  reflect(2, 2) = -1.0;
  EXPECT_THROW(specific_force_rotation(reflect), NumericError);
  Mat3 nan = Mat3::Identity();
  nan(0, 0) = std::nan("");
  EXPECT_THROW(specific_force_rotation(nan), NumericError);
}

TEST(LevelFlight, MatchesNedMechanizationOracle) {
  // Constant-velocity flight due north: dv/dt = 0 in NED, so
  //   f^n = -g^n + (2 w_ie^n + w_en^n) x v^n  and  w_ib = w_ie + w_en.
  ManeuverParams mp;
  mp.start = {oracle::deg(35.0), 0.4, 3000.0};
  mp.speed = 80.0;
  mp.heading = 0.0;
  const auto poses = synth_maneuver(ManeuverProfile::kStraight, mp, 20.0, 50.0);
  const auto truth = truth_of(poses, off());
  for (std::size_t k = 100; k < truth.size(); k += 150) {
    const PoseSample& p = poses[k + 2];
    const double lat = p.pos.lat, h = p.pos.alt;
    const auto [rm, re] = oracle::numeric_radii(lat);
    const Vec3 w_ie(oracle::kOmega * std::cos(lat), 0.0, -oracle::kOmega * std::sin(lat));
    const Vec3 w_en(p.vel_n.y() / (re + h), -p.vel_n.x() / (rm + h),
                    -p.vel_n.y() * std::tan(lat) / (re + h));
    const Mat3 c_bn = oracle::body_to_ned(p.att.roll, p.att.pitch, p.att.yaw);
    const Vec3 g_n(0.0, 0.0, oracle::somigliana(lat, h));
    const Vec3 f_n = -g_n + (2.0 * w_ie + w_en).cross(p.vel_n);
    EXPECT_LT((truth[k].omega - c_bn.transpose() * (w_ie + w_en)).norm(), 1e-9);
    EXPECT_LT((truth[k].f - c_bn.transpose() * f_n).norm(), 2e-4);
  }
}

TEST(CoordinatedTurn, LateralForceBalancesCentripetalAcceleration) {
  ManeuverParams mp;
  mp.start = {oracle::deg(20.0), 0.0, 1000.0};
  mp.speed = 70.0;
  mp.turn_radius = 1200.0;
  const auto poses = synth_maneuver(ManeuverProfile::kCoordinatedTurn, mp, 60.0, 50.0);
  const auto truth = truth_of(poses, off());
  const double centripetal = 70.0 * 70.0 / 1200.0;
  for (std::size_t k = 1500; k < truth.size(); k += 200) {
    const EulerAngles& a = poses[k + 2].att;
    // Banked body: the turn is coordinated, so no side force.
    EXPECT_LT(std::abs(truth[k].f.y()), 0.02);
    // Level heading frame: sideways component equals V^2 / r.
    const Vec3 f_level = oracle::rotation(Vec3(a.roll, 0, 0)) * truth[k].f;
    EXPECT_NEAR(f_level.y(), centripetal, 0.01 * centripetal);
    EXPECT_NEAR(truth[k].omega.norm(), 70.0 / 1200.0, 1e-3);
  }
}

TEST(Kinematics, WarmUpAccountingIsExact) {
  const auto poses = synth_stationary({0.3, 0.3, 0.0}, {}, 10.0, 50.0);
  const SimulationResult r = simulate(poses, GimbalConfig::reference_motion(), ImuErrorParams::ideal());
  EXPECT_EQ(r.platform.size(), 501u);
  EXPECT_EQ(r.imu_truth.size(), 500u);
  EXPECT_EQ(r.inertial.size(), 499u);
  EXPECT_EQ(r.imu.size(), 499u);
  EXPECT_DOUBLE_EQ(r.imu.front().t, 0.04);
}

TEST(Kinematics, RejectsExcessiveBodyRate) {
  std::vector<PoseSample> poses;
  for (int k = 0; k < 3; ++k) {
    PoseSample p;
    p.t = 0.02 * k;
    p.pos = {0.5, 0.0, 0.0};
    p.att.yaw = wrap_pi(1.2 * k);  // 60 rad/s
    poses.push_back(p);
  }
  EXPECT_THROW(simulate(poses, off(), ImuErrorParams::ideal()), NumericError);
}

TEST(Kinematics, EarthDeltaNeedsNonNegativeStep) {
  EXPECT_THROW(earth_delta_dcm(-1.0), DomainError);
  EXPECT_EQ(earth_delta_dcm(0.0).matrix(), Mat3::Identity());
}
