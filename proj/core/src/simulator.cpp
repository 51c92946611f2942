#include "agisim/simulator.hpp"

namespace agisim {

Pipeline::Pipeline(GimbalConfig gimbal, ImuErrorParams params)
    : chain_(std::move(gimbal)), params_(std::move(params)), noise_(make_noise_rng(params_)) {
  params_.validate();
}

PipelineStep Pipeline::step(const PoseSample& platform_pose) {
  PipelineStep out;
  out.platform = platform_pose;
  out.imu_pose = chain_.step(platform_pose);
  if (!out.imu_pose) return out;
  out.inertial = kinematics_.step(*out.imu_pose);
  if (!out.inertial) return out;
  out.imu = corrupt(*out.inertial, params_, noise_);
  return out;
}

SimulationResult simulate(PoseSource& source, const GimbalConfig& gimbal,
                          const ImuErrorParams& params, const StepObserver& observer) {
  Pipeline pipeline(gimbal, params);
  SimulationResult result;
  while (auto pose = source.next()) {
    PipelineStep s = pipeline.step(*pose);
    result.platform.push_back(s.platform);
    if (s.imu_pose) result.imu_truth.push_back(*s.imu_pose);
    if (s.inertial) result.inertial.push_back(*s.inertial);
    if (s.imu) result.imu.push_back(*s.imu);
    if (observer) observer(s);
  }
  return result;
}

SimulationResult simulate(const std::vector<PoseSample>& poses, const GimbalConfig& gimbal,
                          const ImuErrorParams& params) {
  VectorPoseSource source(poses);
  return simulate(source, gimbal, params);
}

}  // namespace agisim
