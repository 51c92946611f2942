// Command implementations behind the agisim CLI. Each writes its files into
// `out_dir` (created if needed) and returns the process exit status.
#pragma once

#include "agisim/config.hpp"

#include <filesystem>
#include <ostream>
#include <string_view>

namespace agisim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitThreshold = 3;

std::string_view version();

/// imu.csv, truth.csv (IMU frame), platform.csv, manifest.json.
int cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// Same files as cmd_simulate for one of the built-in gimbal scenarios.
int cmd_scenario(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// errors.csv, summary.txt, manifest.json. Returns kExitThreshold when an
/// RMSE exceeds the configured limits.
int cmd_verify(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

struct IngestOptions {
  double duration_s = 10.0;  // wall-clock capture length
  std::size_t max_samples = 0;
};

/// Listens on the configured UDP port; writes capture.csv (raw records, one
/// per line, replayable as a file trajectory), samples.csv and manifest.json.
int cmd_ingest(const RunConfig& cfg, const IngestOptions& opts,
               const std::filesystem::path& out_dir, std::ostream& log);

/// True when every RMSE channel is within the thresholds.
bool within_thresholds(const ErrorReport& report, const VerifyThresholds& limits);

}  // namespace agisim
