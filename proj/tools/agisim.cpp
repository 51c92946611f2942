// agisim command line: simulate | scenario | verify | ingest
#include "agisim/commands.hpp"
#include "agisim/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_config = true) {
  if (with_config) {
    cmd->add_option("--config", opts.config_path, "Run configuration file")->check(CLI::ExistingFile);
  }
  cmd->add_option("--seed", opts.seed, "Random seed (overrides run.seed)");
  cmd->add_option("--out", opts.out_dir, "Output directory (overrides run.out)");
}

agisim::RunConfig resolve(agisim::RunConfig cfg, const CommonOptions& opts) {
  if (opts.seed) cfg.seed = *opts.seed;
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  cfg.validate();
  return cfg;
}

agisim::RunConfig load(const CommonOptions& opts) {
  agisim::RunConfig cfg =
      opts.config_path.empty() ? agisim::parse_config("") : agisim::load_config(opts.config_path);
  return resolve(std::move(cfg), opts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gimbal-mounted airborne IMU signal simulator"};
  app.set_version_flag("--version", std::string(agisim::version()));
  app.require_subcommand(1);

  CommonOptions sim_opts, scen_opts, verify_opts, ingest_opts;

  auto* simulate = app.add_subcommand("simulate", "Generate IMU signals and ground truth");
  add_common(simulate, sim_opts);

  auto* scenario = app.add_subcommand("scenario", "Run a built-in gimbal scenario");
  std::string scenario_name;
  scenario->add_option("name", scenario_name, "pan | tilt | ptr-takeoff")->required();
  add_common(scenario, scen_opts, false);

  auto* verify = app.add_subcommand("verify", "Closed-loop strapdown verification");
  add_common(verify, verify_opts);

  auto* ingest = app.add_subcommand("ingest", "Capture a UDP telemetry stream");
  add_common(ingest, ingest_opts);
  std::optional<std::uint16_t> port;
  agisim::IngestOptions ingest_cfg;
  ingest->add_option("--port", port, "UDP port (overrides trajectory.port)");
  ingest->add_option("--duration", ingest_cfg.duration_s, "Capture length in seconds")
      ->check(CLI::PositiveNumber);
  ingest->add_option("--max-samples", ingest_cfg.max_samples, "Stop after this many samples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      const agisim::RunConfig cfg = load(sim_opts);
      return agisim::cmd_simulate(cfg, cfg.out_dir, std::cout);
    }
    if (*scenario) {
      const agisim::RunConfig cfg = resolve(agisim::scenario_config(scenario_name), scen_opts);
      return agisim::cmd_scenario(cfg, cfg.out_dir, std::cout);
    }
    if (*verify) {
      const agisim::RunConfig cfg = load(verify_opts);
      return agisim::cmd_verify(cfg, cfg.out_dir, std::cout);
    }
    if (*ingest) {
      agisim::RunConfig cfg = load(ingest_opts);
      if (port) cfg.trajectory.port = *port;
      return agisim::cmd_ingest(cfg, ingest_cfg, cfg.out_dir, std::cout);
    }
  } catch (const agisim::ConfigError& e) {
    std::cerr << "agisim: config error";
    if (e.line() != 0) std::cerr << " at line " << e.line();
    std::cerr << ": " << e.what() << "\n";
    return agisim::kExitError;
  } catch (const agisim::RecordError& e) {
    std::cerr << "agisim: bad trajectory record";
    if (e.line() != 0) std::cerr << " at line " << e.line();
    std::cerr << ": " << e.what() << "\n";
    return agisim::kExitError;
  } catch (const agisim::DivergenceError& e) {
    std::cerr << "agisim: navigation diverged at epoch " << e.epoch() << ": " << e.what() << "\n";
    return agisim::kExitError;
  } catch (const std::exception& e) {
    std::cerr << "agisim: " << e.what() << "\n";
    return agisim::kExitError;
  }
  return agisim::kExitError;
}
