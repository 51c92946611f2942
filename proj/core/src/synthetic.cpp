#include "agisim/errors.hpp"
#include "agisim/trajectory.hpp"

#include <array>
#include <cmath>

namespace agisim {

namespace {

constexpr double kStandardGravity = 9.80665;
constexpr int kSubsteps = 8;
constexpr double kMaxBank = 80.0 * kPi / 180.0;

std::size_t sample_count(double duration, double rate) {
  if (!(duration > 0.0) || !(rate > 0.0) || !std::isfinite(duration * rate)) {
    throw ConfigError("synthetic trajectory needs duration > 0 and rate > 0");
  }
  return static_cast<std::size_t>(std::floor(duration * rate + 1e-9)) + 1;
}

struct Commands {
  double turn_rate;
  double climb_rate;
  double accel;
};

class CommandSchedule {
 public:
  explicit CommandSchedule(const FlightPlan& plan) : plan_(plan) {
    double t = 0.0;
    for (const auto& seg : plan.segments) {
      starts_.push_back(t);
      t += seg.duration;
    }
  }

  Commands at(double t) const {
    const auto& segs = plan_.segments;
    std::size_t i = 0;
    while (i + 1 < segs.size() && t >= starts_[i + 1]) ++i;
    Commands c = of(segs[i]);
    const double since = t - starts_[i];
    if (i > 0 && plan_.blend > 0.0 && since < plan_.blend) {
      const Commands prev = of(segs[i - 1]);
      const double w = 0.5 * (1.0 - std::cos(kPi * since / plan_.blend));
      c.turn_rate = prev.turn_rate + w * (c.turn_rate - prev.turn_rate);
      c.climb_rate = prev.climb_rate + w * (c.climb_rate - prev.climb_rate);
      c.accel = prev.accel + w * (c.accel - prev.accel);
    }
    return c;
  }

 private:
  static Commands of(const FlightSegment& s) { return {s.turn_rate, s.climb_rate, s.accel}; }

  const FlightPlan& plan_;
  std::vector<double> starts_;
};

// lat, lon, alt, speed, heading
using State = std::array<double, 5>;

Vec3 ned_velocity(double speed, double heading, double climb) {
  const double horizontal = std::sqrt(std::max(speed * speed - climb * climb, 0.0));
  return {horizontal * std::cos(heading), horizontal * std::sin(heading), -climb};
}

State derivative(const State& x, const Commands& c) {
  const Vec3 v = ned_velocity(x[3], x[4], c.climb_rate);
  const Radii r = radii_of_curvature(x[0]);
  return {v.x() / (r.meridian + x[2]), v.y() / ((r.transverse + x[2]) * std::cos(x[0])),
          c.climb_rate, c.accel, c.turn_rate};
}

State axpy(const State& x, double h, const State& k) {
  State out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + h * k[i];
  return out;
}

void check_plan(const FlightPlan& plan) {
  if (plan.segments.empty()) throw ConfigError("flight plan has no segments");
  if (!(plan.speed > 0.0)) throw ConfigError("flight plan speed must be > 0");
  if (!(plan.blend >= 0.0)) throw ConfigError("blend time must be >= 0");
  validate(plan.start);
  double speed = plan.speed;
  for (const auto& s : plan.segments) {
    if (!(s.duration > 0.0)) throw ConfigError("segment duration must be > 0");
    speed += s.accel * s.duration;
    const double lowest = std::min(speed, speed - s.accel * s.duration);
    if (!(lowest > 0.0)) throw ConfigError("segment acceleration stalls the aircraft");
    if (std::abs(s.climb_rate) >= lowest) {
      throw ConfigError("climb rate must be below the flight speed");
    }
    const double highest = std::max(speed, speed - s.accel * s.duration);
    if (std::atan(highest * std::abs(s.turn_rate) / kStandardGravity) > kMaxBank) {
      throw ConfigError("turn rate needs a bank angle beyond 80 deg");
    }
  }
}

}  // namespace

std::vector<PoseSample> synth_stationary(const GeodeticPosition& location,
                                         const EulerAngles& attitude, double duration,
                                         double rate) {
  validate(location);
  const std::size_t n = sample_count(duration, rate);
  std::vector<PoseSample> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k].t = static_cast<double>(k) / rate;
    out[k].pos = location;
    out[k].att = attitude;
  }
  return out;
}

std::vector<PoseSample> synth_flight_plan(const FlightPlan& plan, double rate) {
  check_plan(plan);
  double total = 0.0;
  for (const auto& s : plan.segments) total += s.duration;
  const std::size_t n = sample_count(total, rate);
  const CommandSchedule schedule(plan);

  State x{plan.start.lat, plan.start.lon, plan.start.alt, plan.speed, plan.heading};
  std::vector<PoseSample> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / rate;
    const Commands c = schedule.at(t);
    PoseSample s;
    s.t = t;
    s.pos = GeodeticPosition{x[0], wrap_pi(x[1]), x[2]};
    s.vel_n = ned_velocity(x[3], x[4], c.climb_rate);
    s.att.yaw = wrap_pi(x[4]);
    s.att.pitch = std::asin(c.climb_rate / x[3]);
    s.att.roll = std::atan(x[3] * c.turn_rate / kStandardGravity);
    out.push_back(s);

    const double h = 1.0 / (rate * kSubsteps);
    for (int j = 0; j < kSubsteps; ++j) {
      const double ts = t + j * h;
      const State k1 = derivative(x, schedule.at(ts));
      const State k2 = derivative(axpy(x, h / 2, k1), schedule.at(ts + h / 2));
      const State k3 = derivative(axpy(x, h / 2, k2), schedule.at(ts + h / 2));
      const State k4 = derivative(axpy(x, h, k3), schedule.at(ts + h));
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
    }
  }
  return out;
}

std::vector<PoseSample> synth_maneuver(ManeuverProfile profile, const ManeuverParams& params,
                                       double duration, double rate) {
  sample_count(duration, rate);
  FlightPlan plan;
  plan.start = params.start;
  plan.speed = params.speed;
  plan.heading = params.heading;
  plan.blend = 0.0;
  FlightSegment seg;
  seg.duration = duration;
  switch (profile) {
    case ManeuverProfile::kStraight:
      break;
    case ManeuverProfile::kClimb:
      if (!std::isfinite(params.climb_rate)) throw ConfigError("climb rate must be finite");
      seg.climb_rate = params.climb_rate;
      break;
    case ManeuverProfile::kCoordinatedTurn:
      if (!(std::abs(params.turn_radius) > 0.0) || !std::isfinite(params.turn_radius)) {
        throw ConfigError("turn radius must be non-zero and finite");
      }
      seg.turn_rate = params.speed / params.turn_radius;
      break;
  }
  plan.segments.push_back(seg);
  return synth_flight_plan(plan, rate);
}

FlightPlan default_maneuvering_plan(const GeodeticPosition& start) {
  FlightPlan plan;
  plan.start = start;
  plan.speed = 55.0;
  plan.heading = 0.3;
  plan.blend = 4.0;
  plan.segments = {
      {20.0, 0.0, 0.0, 0.5},     // accelerate to 65 m/s
      {40.0, 0.0, 6.0, 0.0},     // climb
      {20.0, 0.0, 0.0, 0.0},     // level off
      {30.0, 0.08, 0.0, 0.0},    // right turn
      {30.0, 0.0, 0.0, 0.0},     // straight
      {30.0, -0.1, 2.0, 0.0},    // climbing left turn
      {30.0, 0.0, 0.0, -0.3},    // decelerate
  };
  return plan;
}

FlightPlan takeoff_climb_plan(const GeodeticPosition& start, double duration) {
  if (!(duration > 12.0)) throw ConfigError("take-off scenario needs more than 12 s");
  FlightPlan plan;
  plan.start = start;
  plan.speed = 30.0;
  plan.heading = 0.0;
  plan.blend = 4.0;
  plan.segments = {
      {10.0, 0.0, 0.0, 2.5},
      {duration - 10.0, 0.0, 5.0, 0.2},
  };
  return plan;
}

}  // namespace agisim
