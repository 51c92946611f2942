// Streaming pipeline: platform pose -> gimbal chain -> truth kinematics -> IMU errors.
//
// Warm-up accounting: the chain and the kinematics each consume one epoch,
// so N input poses give N-1 IMU-frame truth poses and N-2 IMU samples.
#pragma once

#include "agisim/gimbal.hpp"
#include "agisim/imu_error.hpp"
#include "agisim/kinematics.hpp"
#include "agisim/trajectory.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace agisim {

struct PipelineStep {
  PoseSample platform;
  std::optional<FramePose> imu_pose;      // truth of the IMU frame b_1
  std::optional<TruthInertial> inertial;  // error-free average signals
  std::optional<ImuSample> imu;           // corrupted output
};

class Pipeline {
 public:
  Pipeline(GimbalConfig gimbal, ImuErrorParams params);

  PipelineStep step(const PoseSample& platform_pose);

  const GimbalConfig& gimbal() const noexcept { return chain_.config(); }
  const ImuErrorParams& params() const noexcept { return params_; }

 private:
  GimbalChain chain_;
  KinematicsEngine kinematics_;
  ImuErrorParams params_;
  NoiseRng noise_;
};

struct SimulationResult {
  std::vector<PoseSample> platform;       // N rows
  std::vector<FramePose> imu_truth;       // N-1 rows
  std::vector<TruthInertial> inertial;    // N-2 rows
  std::vector<ImuSample> imu;             // N-2 rows
};

using StepObserver = std::function<void(const PipelineStep&)>;

/// Runs every pose of the source through a fresh pipeline.
SimulationResult simulate(PoseSource& source, const GimbalConfig& gimbal,
                          const ImuErrorParams& params, const StepObserver& observer = {});

SimulationResult simulate(const std::vector<PoseSample>& poses, const GimbalConfig& gimbal,
                          const ImuErrorParams& params);

}  // namespace agisim
