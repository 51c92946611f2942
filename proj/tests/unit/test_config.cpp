#include "agisim/config.hpp"
#include "agisim/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace agisim;

namespace {

std::size_t error_line(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(ParseConfig, EmptyTextGivesDefaults) {
  const RunConfig c = parse_config("");
  const ImuErrorParams p = c.imu_params();
  EXPECT_EQ(p.accel_bias, Vec3(0.009, -0.013, 0.008));
  EXPECT_EQ(p.gyro_bias, Vec3(-0.175e-3, 0.252e-3, 0.155e-3));
  EXPECT_EQ(p.accel_noise_psd, 7.845e-4);
  EXPECT_EQ(p.gyro_noise_psd, 2.327e-6);
  EXPECT_EQ(p.accel_scale, default_params(c.seed).accel_scale);

  const GimbalConfig g = c.gimbal_config();
  const GimbalConfig ref = GimbalConfig::reference_motion();
  EXPECT_EQ(g.pan.period, ref.pan.period);
  EXPECT_EQ(g.tilt.amplitude, ref.tilt.amplitude);
  EXPECT_EQ(g.lever_pt, ref.lever_pt);
  EXPECT_EQ(g.lever_tr, ref.lever_tr);
  EXPECT_TRUE(g.enabled);

  EXPECT_EQ(c.aiding.mode, ResetMode::kHard);
  EXPECT_EQ(c.aiding.sigma_pos, 2.0);
  EXPECT_EQ(c.aiding.sigma_vel, 0.1);
  EXPECT_EQ(c.verify.max_pos_rmse, 5.0);
}

TEST(ParseConfig, ScalarLeverIsVertical) {
  const RunConfig c = parse_config("gimbal.l_pt = 0.1\n");
  EXPECT_EQ(c.gimbal.lever_pt, Vec3(0.0, 0.0, 0.1));
  EXPECT_DOUBLE_EQ(c.gimbal.lever_pt.norm(), 0.1);
}

TEST(ParseConfig, ValuesOfEveryShape) {
  const RunConfig c = parse_config(
      "# header\n"
      "trajectory.profile = turn   # inline comment\n"
      "trajectory.origin = [35.5, -120.25, 1200]\n"
      "trajectory.path = \"dir with # hash/track.csv\"\n"
      "gimbal.enabled = false\n"
      "imu.model = ideal\n"
      "aiding.mode = blend\n"
      "aiding.blend = 0.25\n"
      "run.seed = 77\n"
      "run.id = flight-3\n");
  EXPECT_EQ(c.trajectory.profile, SyntheticProfile::kTurn);
  EXPECT_EQ(c.trajectory.origin_deg, Vec3(35.5, -120.25, 1200.0));
  EXPECT_EQ(c.trajectory.path, "dir with # hash/track.csv");
  EXPECT_FALSE(c.gimbal.enabled);
  EXPECT_EQ(c.imu.model, ImuModel::kIdeal);
  EXPECT_EQ(c.aiding.mode, ResetMode::kBlend);
  EXPECT_EQ(c.aiding.blend, 0.25);
  EXPECT_EQ(c.seed, 77u);
  EXPECT_EQ(c.run_id, "flight-3");
  EXPECT_EQ(c.aiding_config().seed, 77u);
  EXPECT_NEAR(c.origin().lat, 35.5 * M_PI / 180.0, 1e-15);
}

TEST(ParseConfig, TypeErrorNamesTheLine) {
  EXPECT_EQ(error_line("\n# x\ngimbal.l_pt = banana\n"), 3u);
  EXPECT_EQ(error_line("trajectory.origin = [1, 2]\n"), 1u);
  EXPECT_EQ(error_line("gimbal.enabled = maybe\n"), 1u);
  EXPECT_EQ(error_line("run.seed = -4\n"), 1u);
}

TEST(ParseConfig, UnknownAndDuplicateKeysAreRejected) {
  EXPECT_EQ(error_line("gimbal.l_pt = 0.1\ngimbal.lpt = 0.1\n"), 2u);
  EXPECT_EQ(error_line("aiding.rate_hz = 1\naiding.rate_hz = 2\n"), 2u);
  EXPECT_EQ(error_line("no_equals_sign\n"), 1u);
  EXPECT_EQ(error_line("trajectory.profile = spiral\n"), 1u);
}

TEST(ParseConfig, InvariantViolationsAreRejected) {
  EXPECT_THROW(parse_config("aiding.rate_hz = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("gimbal.pan_period = -1\n"), ConfigError);
  EXPECT_THROW(parse_config("trajectory.origin = [95, 0, 0]\n"), ConfigError);
  EXPECT_THROW(parse_config("trajectory.duration_s = 0\n"), ConfigError);
}

TEST(ParseConfig, CanonicalTextRoundTrips) {
  const RunConfig a = parse_config(
      "trajectory.profile = maneuvering\n"
      "trajectory.origin = [35.7, 51.4, 1200]\n"
      "gimbal.lever_pt = [0.1, 0.02, 0.1]\n"
      "gimbal.pan_amplitude = 0.3\n"
      "imu.b_a = [0.01, 0.02, 0.03]\n"
      "imu.m_a_factor = 0.5\n"
      "aiding.sigma_pos = 3.5\n"
      "verify.max_heading_rmse = 0.02\n"
      "run.seed = 12\n");
  const std::string text = to_config_text(a);
  const RunConfig b = parse_config(text);
  EXPECT_EQ(to_config_text(b), text);
  EXPECT_EQ(b.gimbal.lever_pt, a.gimbal.lever_pt);
  EXPECT_EQ(b.imu_params().accel_scale, a.imu_params().accel_scale);
  EXPECT_EQ(b.imu_params().accel_bias, Vec3(0.01, 0.02, 0.03));
  EXPECT_EQ(b.aiding.sigma_pos, 3.5);
}

TEST(ImuConfig, FactorsScaleTheDrawnMatrices) {
  const RunConfig c = parse_config("imu.m_a_factor = 0\nimu.g_g_factor = 2\nrun.seed = 4\n");
  const ImuErrorParams p = c.imu_params();
  EXPECT_EQ(p.accel_scale, Mat3::Zero());
  EXPECT_EQ(p.gyro_g_sensitivity, 2.0 * default_params(4).gyro_g_sensitivity);
  EXPECT_EQ(p.gyro_scale, default_params(4).gyro_scale);
}

TEST(BuildTrajectory, SyntheticProfilesHaveTheConfiguredLength) {
  RunConfig c = parse_config("trajectory.duration_s = 10\ntrajectory.rate_hz = 50\n");
  EXPECT_EQ(build_trajectory(c).size(), 501u);
  c = parse_config("trajectory.profile = maneuvering\n");
  EXPECT_EQ(build_trajectory(c).size(), 200u * 50u + 1u);
  c = parse_config("trajectory.source = udp\n");
  EXPECT_THROW(build_trajectory(c), ConfigError);
}

TEST(Scenarios, NamesAndErrors) {
  EXPECT_EQ(scenario_names(), (std::vector<std::string>{"pan", "tilt", "ptr-takeoff"}));
  const RunConfig pan = scenario_config("pan");
  EXPECT_EQ(pan.imu.model, ImuModel::kIdeal);
  EXPECT_EQ(pan.gimbal.tilt.amplitude, 0.0);
  EXPECT_EQ(pan.gimbal.roll.amplitude, 0.0);
  EXPECT_GT(pan.gimbal.pan.amplitude, 0.0);
  const RunConfig tilt = scenario_config("tilt");
  EXPECT_EQ(tilt.gimbal.pan.amplitude, 0.0);
  EXPECT_GT(tilt.gimbal.tilt.amplitude, 0.0);
  EXPECT_EQ(scenario_config("ptr-takeoff").trajectory.profile, SyntheticProfile::kTakeoff);
  try {
    scenario_config("yaw");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("ptr-takeoff"), std::string::npos);
  }
}
