// Helpers for building telemetry records in the default column layout.
#pragma once

#include "agisim/trajectory.hpp"

#include <cstdio>
#include <string>

namespace testing_records {

/// "t,lat_deg,lon_deg,alt_m,vN,vE,vD,roll,pitch,yaw" with round-trip precision.
inline std::string record(const agisim::PoseSample& s) {
  constexpr double kRadToDeg = 180.0 / agisim::kPi;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", s.t,
                s.pos.lat * kRadToDeg, s.pos.lon * kRadToDeg, s.pos.alt, s.vel_n.x(), s.vel_n.y(),
                s.vel_n.z(), s.att.roll, s.att.pitch, s.att.yaw);
  return buf;
}

inline agisim::PoseSample sample_at(double t) {
  agisim::PoseSample s;
  s.t = t;
  s.pos = {0.62, 0.12, 450.0};
  s.vel_n = agisim::Vec3(20.0, -3.0, 0.5);
  s.att = {0.05, 0.02, 1.2};
  return s;
}

}  // namespace testing_records
