#include "agisim/commands.hpp"

#include "agisim/errors.hpp"
#include "agisim/output.hpp"
#include "agisim/simulator.hpp"
#include "agisim/udp_source.hpp"

#include "json.hpp"

#include <chrono>
#include <condition_variable>
#include <mutex>
#include <thread>

namespace agisim {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json base_manifest(std::string_view command, const RunConfig& cfg) {
  const std::string config_text = to_config_text(cfg);
  json m;
  m["tool"] = "agisim";
  m["version"] = std::string(version());
  m["command"] = std::string(command);
  m["run_id"] = cfg.run_id;
  m["seed"] = cfg.seed;
  m["config"] = config_text;
  m["imu_params"] = json::parse(imu_params_json(cfg.imu_params()));
  m["inputs"]["config_fnv1a64"] = hex64(fnv1a64(config_text));
  if (cfg.trajectory.source == SourceKind::kFile) {
    m["inputs"]["trajectory_path"] = cfg.trajectory.path;
    m["inputs"]["trajectory_fnv1a64"] = hex64(file_fnv1a64(cfg.trajectory.path));
  }
  return m;
}

void write_manifest(const fs::path& dir, const json& manifest) {
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

UdpOptions udp_options(const RunConfig& cfg) {
  UdpOptions opts;
  opts.idle_timeout = std::chrono::milliseconds(
      static_cast<long long>(cfg.trajectory.idle_timeout_s * 1000.0));
  return opts;
}

SimulationResult run_simulation(const RunConfig& cfg, std::ostream& log) {
  if (cfg.trajectory.source == SourceKind::kUdp) {
    const StreamConfig stream = cfg.stream_config();
    UdpListener listener(cfg.trajectory.port, stream, udp_options(cfg));
    log << "listening on udp port " << listener.port() << "\n";
    ValidatingPoseSource validated(listener, stream);
    SimulationResult r = simulate(validated, cfg.gimbal_config(), cfg.imu_params());
    const UdpStats stats = listener.stats();
    log << "udp: " << stats.received << " samples, " << stats.dropped << " dropped\n";
    return r;
  }
  return simulate(build_trajectory(cfg), cfg.gimbal_config(), cfg.imu_params());
}

int write_simulation(std::string_view command, const RunConfig& cfg, const fs::path& out_dir,
                     std::ostream& log) {
  prepare_dir(out_dir);
  const SimulationResult sim = run_simulation(cfg, log);
  {
    std::ofstream f = open_output(out_dir / "imu.csv");
    write_imu_csv(f, sim.imu);
  }
  {
    std::ofstream f = open_output(out_dir / "truth.csv");
    write_pose_csv(f, std::span<const FramePose>(sim.imu_truth));
  }
  {
    std::ofstream f = open_output(out_dir / "platform.csv");
    write_pose_csv(f, std::span<const PoseSample>(sim.platform));
  }
  json m = base_manifest(command, cfg);
  m["counts"] = {{"platform_poses", sim.platform.size()},
                 {"imu_frame_poses", sim.imu_truth.size()},
                 {"imu_samples", sim.imu.size()}};
  m["files"] = {"imu.csv", "truth.csv", "platform.csv"};
  write_manifest(out_dir, m);
  log << command << " '" << cfg.run_id << "': " << sim.platform.size() << " poses -> "
      << sim.imu.size() << " imu samples written to " << out_dir.string() << "\n";
  return kExitOk;
}

json report_json(const ErrorReport& r) {
  auto vec = [](const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); };
  return {{"epochs", r.epochs.size()},
          {"settle_s", r.settle_s},
          {"rmse_epochs", r.rmse_samples},
          {"pos_rmse_ned", vec(r.pos_rmse)},
          {"vel_rmse_ned", vec(r.vel_rmse)},
          {"heading_rmse", r.heading_rmse},
          {"pos_max_ned", vec(r.pos_max)},
          {"vel_max_ned", vec(r.vel_max)},
          {"heading_max", r.heading_max},
          {"attitude_max", r.attitude_max},
          {"resets_applied", r.resets_applied},
          {"resets_skipped", r.resets_skipped}};
}

}  // namespace

std::string_view version() {
#ifdef AGISIM_VERSION
  return AGISIM_VERSION;
#else
  return "unknown";
#endif
}

bool within_thresholds(const ErrorReport& r, const VerifyThresholds& limits) {
  return r.pos_rmse.maxCoeff() < limits.max_pos_rmse && r.vel_rmse.maxCoeff() < limits.max_vel_rmse &&
         r.heading_rmse < limits.max_heading_rmse;
}

int cmd_simulate(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  return write_simulation("simulate", cfg, out_dir, log);
}

int cmd_scenario(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  return write_simulation("scenario", cfg, out_dir, log);
}

int cmd_verify(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  if (cfg.trajectory.source == SourceKind::kUdp) {
    throw ConfigError("verify needs a replayable trajectory (synthetic or file)");
  }
  prepare_dir(out_dir);
  const ClosedLoopResult result =
      run_closed_loop(build_trajectory(cfg), cfg.gimbal_config(), cfg.imu_params(),
                      cfg.aiding_config(), cfg.verify.settle_s);
  const ErrorReport& report = result.report;
  {
    std::ofstream f = open_output(out_dir / "errors.csv");
    write_errors_csv(f, report);
  }
  const std::string summary = format_summary(report, cfg.gimbal.enabled ? "ON" : "OFF");
  write_text_file(out_dir / "summary.txt", summary);

  const bool ok = within_thresholds(report, cfg.verify);
  json m = base_manifest("verify", cfg);
  m["report"] = report_json(report);
  m["thresholds"] = {{"max_pos_rmse", cfg.verify.max_pos_rmse},
                     {"max_vel_rmse", cfg.verify.max_vel_rmse},
                     {"max_heading_rmse", cfg.verify.max_heading_rmse}};
  m["pass"] = ok;
  m["files"] = {"errors.csv", "summary.txt"};
  write_manifest(out_dir, m);

  log << summary;
  log << (ok ? "verify: within thresholds\n" : "verify: THRESHOLD EXCEEDED\n");
  return ok ? kExitOk : kExitThreshold;
}

int cmd_ingest(const RunConfig& cfg, const IngestOptions& opts, const fs::path& out_dir,
               std::ostream& log) {
  if (!(opts.duration_s > 0.0)) throw ConfigError("ingest duration must be > 0");
  prepare_dir(out_dir);
  const StreamConfig stream = cfg.stream_config();
  UdpOptions udp = udp_options(cfg);
  udp.max_samples = opts.max_samples;
  UdpListener listener(cfg.trajectory.port, stream, udp);
  log << "listening on udp port " << listener.port() << " for " << opts.duration_s << " s\n";

  std::mutex mutex;
  std::condition_variable cv;
  bool done = false;
  const auto start = std::chrono::steady_clock::now();
  const auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                    std::chrono::duration<double>(opts.duration_s));
  std::thread timer([&] {
    std::unique_lock lock(mutex);
    if (!cv.wait_until(lock, deadline, [&] { return done; })) listener.stop();
  });

  std::ofstream capture = open_output(out_dir / "capture.csv");
  std::vector<PoseSample> samples;
  auto last_report = start;
  try {
    while (auto rec = listener.next_record()) {
      capture << rec->raw << '\n';
      samples.push_back(rec->sample);
      const auto now = std::chrono::steady_clock::now();
      if (now - last_report >= std::chrono::seconds(1)) {
        const double elapsed = std::chrono::duration<double>(now - start).count();
        const UdpStats s = listener.stats();
        log << "  " << s.received << " samples (" << static_cast<double>(s.received) / elapsed
            << " Hz), " << s.dropped << " dropped\n";
        last_report = now;
      }
    }
  } catch (...) {
    {
      std::lock_guard lock(mutex);
      done = true;
    }
    cv.notify_all();
    timer.join();
    throw;
  }
  {
    std::lock_guard lock(mutex);
    done = true;
  }
  cv.notify_all();
  timer.join();
  capture.close();

  {
    std::ofstream f = open_output(out_dir / "samples.csv");
    write_pose_csv(f, std::span<const PoseSample>(samples));
  }
  const UdpStats stats = listener.stats();
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json m = base_manifest("ingest", cfg);
  m["capture"] = {{"port", listener.port()},
                  {"received", stats.received},
                  {"dropped", stats.dropped},
                  {"capture_fnv1a64", hex64(file_fnv1a64(out_dir / "capture.csv"))}};
  m["files"] = {"capture.csv", "samples.csv"};
  write_manifest(out_dir, m);
  log << "ingest: " << stats.received << " samples, " << stats.dropped << " dropped, "
      << static_cast<double>(stats.received) / elapsed << " Hz average\n";
  return kExitOk;
}

}  // namespace agisim
