// Byte-stable CSV / JSON writers.
//
// Numbers are printed with 17 significant digits ("%.17g", '.' radix) and
// rows end with '\n', so identical runs produce identical files.
#pragma once

#include "agisim/gimbal.hpp"
#include "agisim/imu_error.hpp"
#include "agisim/verifier.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

namespace agisim {

std::string format_double(double v);

inline constexpr std::string_view kImuHeader = "t,dt,fx,fy,fz,wx,wy,wz,dvx,dvy,dvz,dthx,dthy,dthz";
inline constexpr std::string_view kPoseHeader = "t,lat,lon,alt,vN,vE,vD,roll,pitch,yaw";
inline constexpr std::string_view kErrorHeader = "t,pN,pE,pD,vN,vE,vD,heading,attitude";

void write_imu_csv(std::ostream& out, std::span<const ImuSample> rows);
void write_pose_csv(std::ostream& out, std::span<const PoseSample> rows);
void write_pose_csv(std::ostream& out, std::span<const FramePose> rows);
void write_errors_csv(std::ostream& out, const ErrorReport& report);

/// Table of RMSE (and max) per channel: heading [mrad], position NED [m],
/// velocity NED [m/s].
std::string format_summary(const ErrorReport& report, std::string_view label);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// Hash of a file's bytes. Throws IoError.
std::uint64_t file_fnv1a64(const std::filesystem::path& path);

/// Opens `path` for binary writing. Throws IoError.
std::ofstream open_output(const std::filesystem::path& path);

/// Writes `text` to `path`, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// JSON object with the realized error-model parameters.
std::string imu_params_json(const ImuErrorParams& params);

}  // namespace agisim
