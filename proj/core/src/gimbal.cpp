#include "agisim/gimbal.hpp"

#include "agisim/errors.hpp"

#include <cmath>

namespace agisim {

namespace {

constexpr double kMaxLever = 2.0;

double profile_angle(const JunctionProfile& p, double t) {
  if (p.amplitude == 0.0) return p.offset;
  return p.offset + p.amplitude * std::sin(2.0 * kPi * t / p.period);
}

void check_profile(const JunctionProfile& p, const char* name) {
  if (!std::isfinite(p.amplitude) || !std::isfinite(p.offset) || !std::isfinite(p.period)) {
    throw ConfigError(std::string("gimbal ") + name + " profile has non-finite values");
  }
  if (p.amplitude != 0.0 && !(p.period > 0.0)) {
    throw ConfigError(std::string("gimbal ") + name + " period must be > 0");
  }
}

void check_lever(const Vec3& l, const char* name) {
  if (!l.allFinite() || !(l.norm() < kMaxLever)) {
    throw ConfigError(std::string("gimbal lever ") + name + " must be finite and shorter than 2 m");
  }
}

}  // namespace

GimbalConfig GimbalConfig::reference_motion() { return GimbalConfig{}; }

GimbalConfig GimbalConfig::rigid() {
  GimbalConfig cfg;
  cfg.enabled = false;
  cfg.lever_pt = Vec3::Zero();
  cfg.lever_tr = Vec3::Zero();
  cfg.lever_imu = Vec3::Zero();
  cfg.pan = cfg.tilt = cfg.roll = JunctionProfile{1.0, 0.0, 0.0};
  return cfg;
}

void GimbalConfig::validate() const {
  check_profile(pan, "pan");
  check_profile(tilt, "tilt");
  check_profile(roll, "roll");
  check_lever(lever_pt, "pan-tilt");
  check_lever(lever_tr, "tilt-roll");
  check_lever(lever_imu, "roll-imu");
  try {
    Dcm(mount, Frame::kMount, Frame::kPlatform);
    Dcm(imu_alignment, Frame::kImu, Frame::kRoll);
  } catch (const NumericError& e) {
    throw ConfigError(std::string("gimbal mount/alignment: ") + e.what());
  }
}

GimbalAngles gimbal_angles_at(double t, const GimbalConfig& cfg) {
  if (!cfg.enabled) return {};
  return {profile_angle(cfg.pan, t), profile_angle(cfg.tilt, t), profile_angle(cfg.roll, t)};
}

Dcm junction_dcm(double angle, Axis axis, Frame child, Frame parent) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 m;
  switch (axis) {
    case Axis::kX: m << 1, 0, 0, 0, c, -s, 0, s, c; break;
    case Axis::kY: m << c, 0, s, 0, 1, 0, -s, 0, c; break;
    case Axis::kZ: m << c, -s, 0, s, c, 0, 0, 0, 1; break;
  }
  return Dcm(m, child, parent);
}

Dcm transpose_attitude(const Dcm& c_parent_n, const Dcm& c_child_parent) {
  return c_parent_n * c_child_parent;
}

GeodeticPosition transpose_position(const GeodeticPosition& p_parent, const Dcm& c_parent_n,
                                    const Vec3& lever) {
  const Vec3 d = pos_transform_jacobian(p_parent.lat, p_parent.alt) * (c_parent_n * lever);
  return {p_parent.lat + d.x(), wrap_pi(p_parent.lon + d.y()), p_parent.alt + d.z()};
}

Vec3 transpose_velocity(const Vec3& v_parent_n, const Dcm& c_parent_n,
                        const Vec3& omega_e_parent, const Vec3& lever) {
  return v_parent_n + c_parent_n * omega_e_parent.cross(lever);
}

FramePose make_frame_pose(const PoseSample& pose, Frame body) {
  return FramePose{pose, euler_to_dcm(pose.att, body)};
}

std::optional<FramePose> chain_step(const PoseSample& pose_bc, const GimbalAngles& angles,
                                    const GimbalConfig& cfg, ChainMemory& mem) {
  const bool on = cfg.enabled;
  const Vec3 zero = Vec3::Zero();
  const Vec3& l_pt = on ? cfg.lever_pt : zero;
  const Vec3& l_tr = on ? cfg.lever_tr : zero;
  const Vec3& l_imu = on ? cfg.lever_imu : zero;

  const Dcm c_bc_n = euler_to_dcm(pose_bc.att, Frame::kPlatform);
  const Dcm c_base_n = transpose_attitude(
      c_bc_n, Dcm(on ? cfg.mount : Mat3::Identity(), Frame::kMount, Frame::kPlatform));
  const Dcm c_gp_n = transpose_attitude(
      c_base_n, junction_dcm(angles.pan, cfg.pan_axis, Frame::kPan, Frame::kMount));
  const Dcm c_gt_n = transpose_attitude(
      c_gp_n, junction_dcm(angles.tilt, cfg.tilt_axis, Frame::kTilt, Frame::kPan));
  const Dcm c_gr_n = transpose_attitude(
      c_gt_n, junction_dcm(angles.roll, cfg.roll_axis, Frame::kRoll, Frame::kTilt));
  const Dcm c_b1_n = transpose_attitude(
      c_gr_n, Dcm(on ? cfg.imu_alignment : Mat3::Identity(), Frame::kImu, Frame::kRoll));

  const GeodeticPosition& p_gp = pose_bc.pos;
  const GeodeticPosition p_gt = transpose_position(p_gp, c_gp_n, l_pt);
  const GeodeticPosition p_gr = transpose_position(p_gt, c_gt_n, l_tr);
  const GeodeticPosition p_b1 = transpose_position(p_gr, c_gr_n, l_imu);

  const std::array<Mat3, 3> c_e{
      dcm_n_to_e(p_gp.lat, p_gp.lon).matrix() * c_gp_n.matrix(),
      dcm_n_to_e(p_gt.lat, p_gt.lon).matrix() * c_gt_n.matrix(),
      dcm_n_to_e(p_gr.lat, p_gr.lon).matrix() * c_gr_n.matrix(),
  };

  if (!mem.warm) {
    mem.warm = true;
    mem.t = pose_bc.t;
    mem.c_e = c_e;
    return std::nullopt;
  }

  const double dt = pose_bc.t - mem.t;
  if (!(dt > 0.0)) throw ContractError("gimbal chain needs strictly increasing time");

  std::array<Vec3, 3> omega;
  for (std::size_t k = 0; k < 3; ++k) {
    omega[k] = rotation_rate_from_delta(c_e[k].transpose() * mem.c_e[k], dt);
  }
  mem.t = pose_bc.t;
  mem.c_e = c_e;

  const Vec3 v_gt = transpose_velocity(pose_bc.vel_n, c_gp_n, omega[0], l_pt);
  const Vec3 v_gr = transpose_velocity(v_gt, c_gt_n, omega[1], l_tr);
  const Vec3 v_b1 = transpose_velocity(v_gr, c_gr_n, omega[2], l_imu);

  PoseSample out;
  out.t = pose_bc.t;
  out.pos = p_b1;
  out.vel_n = v_b1;
  out.att = dcm_to_euler(c_b1_n);
  return FramePose{out, c_b1_n};
}

GimbalChain::GimbalChain(GimbalConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

std::optional<FramePose> GimbalChain::step(const PoseSample& pose_bc) {
  return chain_step(pose_bc, gimbal_angles_at(pose_bc.t, cfg_), cfg_, mem_);
}

}  // namespace agisim
