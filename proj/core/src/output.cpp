#include "agisim/output.hpp"

#include "agisim/errors.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace agisim {

namespace {

void put(std::string& line, double v) {
  if (!line.empty()) line += ',';
  line += format_double(v);
}

void put(std::string& line, const Vec3& v) {
  put(line, v.x());
  put(line, v.y());
  put(line, v.z());
}

void pose_row(std::ostream& out, const PoseSample& p) {
  std::string line;
  put(line, p.t);
  put(line, p.pos.lat);
  put(line, p.pos.lon);
  put(line, p.pos.alt);
  put(line, p.vel_n);
  put(line, p.att.roll);
  put(line, p.att.pitch);
  put(line, p.att.yaw);
  line += '\n';
  out << line;
}

nlohmann::json matrix_json(const Mat3& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < 3; ++r) rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
  return rows;
}

nlohmann::json vec_json(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

void write_imu_csv(std::ostream& out, std::span<const ImuSample> rows) {
  out << kImuHeader << '\n';
  for (const ImuSample& s : rows) {
    std::string line;
    put(line, s.t);
    put(line, s.dt);
    put(line, s.f);
    put(line, s.omega);
    put(line, s.dv);
    put(line, s.dtheta);
    line += '\n';
    out << line;
  }
}

void write_pose_csv(std::ostream& out, std::span<const PoseSample> rows) {
  out << kPoseHeader << '\n';
  for (const PoseSample& p : rows) pose_row(out, p);
}

void write_pose_csv(std::ostream& out, std::span<const FramePose> rows) {
  out << kPoseHeader << '\n';
  for (const FramePose& p : rows) pose_row(out, p.pose);
}

void write_errors_csv(std::ostream& out, const ErrorReport& report) {
  out << kErrorHeader << '\n';
  for (const EpochError& e : report.epochs) {
    std::string line;
    put(line, e.t);
    put(line, e.pos_ned);
    put(line, e.vel_ned);
    put(line, e.heading);
    put(line, e.attitude);
    line += '\n';
    out << line;
  }
}

std::string format_summary(const ErrorReport& r, std::string_view label) {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof buf, "%-8s %12s %9s %9s %9s %9s %9s %9s\n", "", "heading[mrad]",
                "pN[m]", "pE[m]", "pD[m]", "vN[m/s]", "vE[m/s]", "vD[m/s]");
  out += buf;
  const std::string rmse_label = std::string(label) + " rmse";
  std::snprintf(buf, sizeof buf, "%-8s %12.3f %9.3f %9.3f %9.3f %9.3f %9.3f %9.3f\n",
                rmse_label.c_str(), r.heading_rmse * 1e3, r.pos_rmse.x(), r.pos_rmse.y(),
                r.pos_rmse.z(), r.vel_rmse.x(), r.vel_rmse.y(), r.vel_rmse.z());
  out += buf;
  const std::string max_label = std::string(label) + " max";
  std::snprintf(buf, sizeof buf, "%-8s %12.3f %9.3f %9.3f %9.3f %9.3f %9.3f %9.3f\n",
                max_label.c_str(), r.heading_max * 1e3, r.pos_max.x(), r.pos_max.y(),
                r.pos_max.z(), r.vel_max.x(), r.vel_max.y(), r.vel_max.z());
  out += buf;
  std::snprintf(buf, sizeof buf,
                "epochs %zu, rmse window after %.1f s settling (%zu epochs), resets %zu applied / "
                "%zu skipped, max attitude error %.3e rad\n",
                r.epochs.size(), r.settle_s, r.rmse_samples, r.resets_applied, r.resets_skipped,
                r.attitude_max);
  out += buf;
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t file_fnv1a64(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return fnv1a64(ss.str());
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out = open_output(path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

std::string imu_params_json(const ImuErrorParams& p) {
  nlohmann::json j;
  j["seed"] = p.seed;
  j["b_a"] = vec_json(p.accel_bias);
  j["b_g"] = vec_json(p.gyro_bias);
  j["M_a"] = matrix_json(p.accel_scale);
  j["M_g"] = matrix_json(p.gyro_scale);
  j["G_g"] = matrix_json(p.gyro_g_sensitivity);
  j["w_a"] = p.accel_noise_psd;
  j["w_g"] = p.gyro_noise_psd;
  return j.dump();
}

}  // namespace agisim
