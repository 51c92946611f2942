#include "agisim/commands.hpp"
#include "agisim/errors.hpp"
#include "agisim/output.hpp"
#include "agisim/udp_source.hpp"
#include "records.hpp"

#include <gtest/gtest.h>

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <sys/wait.h>
#include <unistd.h>

using namespace agisim;
using namespace std::chrono_literals;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("agisim_cli_") + info->name() + "_" +
                                        std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
  std::ostringstream log_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

RunConfig stationary(double seconds) {
  return parse_config("trajectory.duration_s = " + std::to_string(seconds) + "\n");
}

// Drops the fixed-width row label of the summary table.
std::string unlabel(const std::string& summary) {
  std::istringstream in(summary);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("ON ", 0) == 0 || line.rfind("OFF ", 0) == 0) line.erase(0, 8);
    out += line + "\n";
  }
  return out;
}

std::uint16_t pick_port() {
  std::random_device rd;
  return static_cast<std::uint16_t>(40000 + rd() % 20000);
}

}  // namespace

TEST(Formatting, SeventeenSignificantDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(-2.5), "-2.5");
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(1e-5), "1.0000000000000001e-05");
  for (double v : {kPi, 1.0 / 3.0, 6378137.0, -7.292115e-5}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(Formatting, Fnv1aKnownVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}

TEST_F(CliTest, SimulateWritesWarmUpAccountedRows) {
  ASSERT_EQ(cmd_simulate(stationary(10.0), dir_, log_), kExitOk);
  const std::string imu = slurp(dir_ / "imu.csv");
  EXPECT_EQ(imu.substr(0, imu.find('\n')), kImuHeader);
  EXPECT_EQ(read_csv(dir_ / "imu.csv").size(), 499u);
  EXPECT_EQ(read_csv(dir_ / "truth.csv").size(), 500u);
  EXPECT_EQ(read_csv(dir_ / "platform.csv").size(), 501u);
  EXPECT_EQ(imu.find('\r'), std::string::npos);
  EXPECT_EQ(imu.back(), '\n');

  const auto m = nlohmann::json::parse(slurp(dir_ / "manifest.json"));
  EXPECT_EQ(m["command"], "simulate");
  EXPECT_EQ(m["seed"], 1);
  EXPECT_EQ(m["counts"]["imu_samples"], 499);
  EXPECT_EQ(m["counts"]["platform_poses"], 501);
  EXPECT_EQ(m["imu_params"]["M_a"].size(), 3u);
}

TEST_F(CliTest, SameSeedRunsAreByteIdentical) {
  RunConfig c = parse_config("trajectory.profile = turn\ntrajectory.duration_s = 20\nrun.seed = 9\n");
  ASSERT_EQ(cmd_simulate(c, dir_ / "a", log_), kExitOk);
  ASSERT_EQ(cmd_simulate(c, dir_ / "b", log_), kExitOk);
  for (const char* f : {"imu.csv", "truth.csv", "platform.csv", "manifest.json"}) {
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
  }
  c.seed = 10;
  ASSERT_EQ(cmd_simulate(c, dir_ / "c", log_), kExitOk);
  EXPECT_NE(slurp(dir_ / "a" / "imu.csv"), slurp(dir_ / "c" / "imu.csv"));
}

TEST_F(CliTest, ZeroErrorVerifyPasses) {
  RunConfig c = parse_config(
      "trajectory.duration_s = 60\nimu.model = ideal\naiding.mode = none\nverify.max_pos_rmse = 1\n"
      "verify.max_vel_rmse = 0.1\n");
  EXPECT_EQ(cmd_verify(c, dir_, log_), kExitOk);
  const auto m = nlohmann::json::parse(slurp(dir_ / "manifest.json"));
  EXPECT_TRUE(m["pass"].get<bool>());
  EXPECT_LT(m["report"]["pos_rmse_ned"][0].get<double>(), 1.0);
  EXPECT_EQ(read_csv(dir_ / "errors.csv").size(), 60u * 50u - 1u);
  EXPECT_NE(slurp(dir_ / "summary.txt").find("rmse"), std::string::npos);
}

TEST_F(CliTest, UnaidedDefaultErrorsViolateThresholds) {
  RunConfig c = parse_config("trajectory.duration_s = 200\naiding.mode = none\n");
  EXPECT_EQ(cmd_verify(c, dir_, log_), kExitThreshold);
  const auto m = nlohmann::json::parse(slurp(dir_ / "manifest.json"));
  EXPECT_FALSE(m["pass"].get<bool>());
  // Horizontal drift is dominated by the doubly integrated accelerometer bias.
  const double pos_max = std::max(m["report"]["pos_max_ned"][0].get<double>(),
                                  m["report"]["pos_max_ned"][1].get<double>());
  EXPECT_GT(pos_max, 50.0);
}

TEST_F(CliTest, GimbalOnWithZeroAnglesSummarizesLikeOff) {
  const std::string base =
      "trajectory.profile = climb\ntrajectory.duration_s = 30\nrun.seed = 3\n";
  RunConfig on = parse_config(base +
                              "gimbal.pan_amplitude = 0\ngimbal.tilt_amplitude = 0\n"
                              "gimbal.roll_amplitude = 0\ngimbal.lever_pt = [0, 0, 0]\n"
                              "gimbal.lever_tr = [0, 0, 0]\n");
  RunConfig off = parse_config(base + "gimbal.enabled = false\n");
  cmd_verify(on, dir_ / "on", log_);
  cmd_verify(off, dir_ / "off", log_);
  EXPECT_EQ(slurp(dir_ / "on" / "errors.csv"), slurp(dir_ / "off" / "errors.csv"));
  std::string s_on = slurp(dir_ / "on" / "summary.txt");
  std::string s_off = slurp(dir_ / "off" / "summary.txt");
  // Only the row labels differ.
  EXPECT_EQ(unlabel(s_on), unlabel(s_off));
  EXPECT_NE(s_on.find("ON rmse"), std::string::npos);
}

TEST_F(CliTest, PanScenarioRateAndLeverForces) {
  ASSERT_EQ(cmd_scenario(scenario_config("pan"), dir_, log_), kExitOk);
  const auto rows = read_csv(dir_ / "imu.csv");
  const double amp = kPi / 6.0, w = 2.0 * kPi / 4.0, r = 0.1;
  // The lever acceleration is a second difference of positions over
  // [t - 2dt, t], centred at t - dt, and the body axes turn by up to
  // w_max * dt across that span.
  const double dt = 0.02;
  const double tol = amp * w * dt * amp * w * w * r;
  double peak = 0.0;
  for (const auto& row : rows) {
    peak = std::max(peak, std::abs(row[7]));
    const double tc = row[0] - dt;
    const double rate = amp * w * std::cos(w * tc);
    const double accel = -amp * w * w * std::sin(w * tc);
    // Radial along x (toward the pan axis), tangential along y.
    EXPECT_NEAR(row[2], -rate * rate * r, tol) << "t=" << row[0];
    EXPECT_NEAR(row[3], accel * r, tol) << "t=" << row[0];
    EXPECT_NEAR(row[4], -9.8066, 0.01);
  }
  EXPECT_NEAR(peak / 0.8225, 1.0, 0.01);
}

TEST_F(CliTest, TiltScenarioRotatesOnlyTheTiltAxis) {
  ASSERT_EQ(cmd_scenario(scenario_config("tilt"), dir_, log_), kExitOk);
  const auto rows = read_csv(dir_ / "imu.csv");
  double peak_y = 0.0;
  for (const auto& row : rows) {
    EXPECT_LT(std::abs(row[5]), 7.292115e-5 + 1e-6);
    EXPECT_LT(std::abs(row[7]), 7.292115e-5 + 1e-6);
    peak_y = std::max(peak_y, std::abs(row[6]));
  }
  EXPECT_GT(peak_y, 0.1);
}

TEST_F(CliTest, IngestCaptureReplaysLikeTheLiveRun) {
  const auto poses = synth_stationary({0.7, 0.2, 80.0}, {0.0, 0.0, 0.5}, 4.0, 50.0);
  std::vector<std::string> datagrams;
  for (const auto& p : poses) datagrams.push_back(testing_records::record(p));
  datagrams.insert(datagrams.begin() + 60, "corrupted,record");

  const std::uint16_t port = pick_port();
  const std::string udp = "trajectory.source = udp\ntrajectory.port = " + std::to_string(port) +
                          "\ntrajectory.idle_timeout_s = 0.5\nrun.seed = 4\n";

  auto feed = [&] {
    std::this_thread::sleep_for(300ms);
    send_udp_datagrams(port, datagrams, 300us);
  };

  IngestOptions opts;
  opts.duration_s = 20.0;
  opts.max_samples = poses.size();
  int ingest_status = -1;
  {
    std::thread feeder(feed);
    ingest_status = cmd_ingest(parse_config(udp), opts, dir_ / "capture", log_);
    feeder.join();
  }
  ASSERT_EQ(ingest_status, kExitOk);
  const auto m = nlohmann::json::parse(slurp(dir_ / "capture" / "manifest.json"));
  EXPECT_EQ(m["capture"]["received"], poses.size());
  EXPECT_EQ(m["capture"]["dropped"], 1);

  int live_status = -1;
  {
    std::thread feeder(feed);
    live_status = cmd_simulate(parse_config(udp), dir_ / "live", log_);
    feeder.join();
  }
  ASSERT_EQ(live_status, kExitOk);

  const RunConfig replay = parse_config("trajectory.source = file\ntrajectory.path = \"" +
                                        (dir_ / "capture" / "capture.csv").string() +
                                        "\"\nrun.seed = 4\n");
  ASSERT_EQ(cmd_simulate(replay, dir_ / "replay", log_), kExitOk);
  EXPECT_EQ(slurp(dir_ / "live" / "imu.csv"), slurp(dir_ / "replay" / "imu.csv"));
  EXPECT_EQ(slurp(dir_ / "live" / "truth.csv"), slurp(dir_ / "replay" / "truth.csv"));
  EXPECT_EQ(read_csv(dir_ / "replay" / "imu.csv").size(), poses.size() - 2);
}

TEST_F(CliTest, ExecutableExitCodes) {
  const std::string exe = AGISIM_EXE;
  const fs::path cfg = dir_ / "run.cfg";
  write_text_file(cfg, "trajectory.duration_s = 5\nimu.model = ideal\n");
  auto run = [&](const std::string& args) {
    const std::string cmd = "\"" + exe + "\" " + args + " > \"" + (dir_ / "log.txt").string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  EXPECT_EQ(run("simulate --config \"" + cfg.string() + "\" --seed 2 --out \"" + (dir_ / "s").string() + "\""), 0);
  EXPECT_EQ(read_csv(dir_ / "s" / "imu.csv").size(), 249u);
  EXPECT_EQ(run("scenario bogus --out \"" + (dir_ / "x").string() + "\""), 1);
  EXPECT_NE(slurp(dir_ / "log.txt").find("pan"), std::string::npos);

  write_text_file(cfg, "gimbal.l_pt = banana\n");
  EXPECT_EQ(run("simulate --config \"" + cfg.string() + "\" --out \"" + (dir_ / "s").string() + "\""), 1);
  EXPECT_NE(slurp(dir_ / "log.txt").find("line 1"), std::string::npos);

  write_text_file(cfg, "trajectory.duration_s = 200\naiding.mode = none\n");
  EXPECT_EQ(run("verify --config \"" + cfg.string() + "\" --out \"" + (dir_ / "v").string() + "\""), 3);
}
