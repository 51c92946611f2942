#include "agisim/config.hpp"

#include "agisim/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace agisim {

namespace {

constexpr double kDegToRad = kPi / 180.0;

// --- values ------------------------------------------------------------------

struct Value {
  enum class Kind { kScalar, kQuoted, kTriple };
  Kind kind = Kind::kScalar;
  std::string text;  // scalar / quoted text without quotes
  Vec3 triple = Vec3::Zero();
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> to_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

double as_number(const Value& v) {
  if (v.kind == Value::Kind::kScalar) {
    if (auto d = to_number(v.text)) return *d;
  }
  throw ConfigError("expected a number, got '" + v.text + "'");
}

double as_positive(const Value& v) {
  const double d = as_number(v);
  if (!(d > 0.0)) throw ConfigError("expected a positive number, got '" + v.text + "'");
  return d;
}

double as_non_negative(const Value& v) {
  const double d = as_number(v);
  if (!(d >= 0.0)) throw ConfigError("expected a number >= 0, got '" + v.text + "'");
  return d;
}

bool as_bool(const Value& v) {
  if (v.kind == Value::Kind::kScalar) {
    if (v.text == "true") return true;
    if (v.text == "false") return false;
  }
  throw ConfigError("expected true or false, got '" + v.text + "'");
}

std::string as_string(const Value& v) {
  if (v.kind == Value::Kind::kTriple) throw ConfigError("expected a string, got a triple");
  return v.text;
}

Vec3 as_triple(const Value& v) {
  if (v.kind != Value::Kind::kTriple) throw ConfigError("expected [x, y, z], got '" + v.text + "'");
  return v.triple;
}

std::uint64_t as_u64(const Value& v) {
  if (v.kind == Value::Kind::kScalar) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
    if (ec == std::errc() && ptr == v.text.data() + v.text.size()) return out;
  }
  throw ConfigError("expected a non-negative integer, got '" + v.text + "'");
}

template <typename E, std::size_t N>
E as_enum(const Value& v, const std::array<std::pair<std::string_view, E>, N>& names) {
  const std::string s = as_string(v);
  for (const auto& [name, e] : names) {
    if (name == s) return e;
  }
  std::string allowed;
  for (const auto& [name, e] : names) {
    if (!allowed.empty()) allowed += ", ";
    allowed += name;
  }
  throw ConfigError("unknown value '" + s + "' (allowed: " + allowed + ")");
}

template <typename E, std::size_t N>
std::string enum_name(E e, const std::array<std::pair<std::string_view, E>, N>& names) {
  for (const auto& [name, value] : names) {
    if (value == e) return std::string(name);
  }
  throw ContractError("enum value has no name");
}

constexpr std::array<std::pair<std::string_view, SourceKind>, 3> kSourceNames{{
    {"synthetic", SourceKind::kSynthetic}, {"file", SourceKind::kFile}, {"udp", SourceKind::kUdp}}};

constexpr std::array<std::pair<std::string_view, SyntheticProfile>, 6> kProfileNames{{
    {"stationary", SyntheticProfile::kStationary},
    {"straight", SyntheticProfile::kStraight},
    {"climb", SyntheticProfile::kClimb},
    {"turn", SyntheticProfile::kTurn},
    {"maneuvering", SyntheticProfile::kManeuvering},
    {"takeoff", SyntheticProfile::kTakeoff}}};

constexpr std::array<std::pair<std::string_view, Axis>, 3> kAxisNames{{
    {"x", Axis::kX}, {"y", Axis::kY}, {"z", Axis::kZ}}};

constexpr std::array<std::pair<std::string_view, ImuModel>, 2> kImuModelNames{{
    {"default", ImuModel::kDefault}, {"ideal", ImuModel::kIdeal}}};

constexpr std::array<std::pair<std::string_view, ResetMode>, 3> kResetModeNames{{
    {"none", ResetMode::kNone}, {"hard", ResetMode::kHard}, {"blend", ResetMode::kBlend}}};

// --- formatting -----------------------------------------------------------------

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const Vec3& v) { return "[" + fmt(v.x()) + ", " + fmt(v.y()) + ", " + fmt(v.z()) + "]"; }

std::string quote(const std::string& s) { return "\"" + s + "\""; }

// --- key table ------------------------------------------------------------------

struct Field {
  std::string_view key;
  std::function<void(RunConfig&, const Value&)> set;
  std::function<std::string(const RunConfig&)> get;  // empty for aliases
};

using Setter = std::function<void(RunConfig&, const Value&)>;
using Getter = std::function<std::string(const RunConfig&)>;

void add_profile_fields(std::vector<Field>& f, std::string_view name,
                        JunctionProfile GimbalConfig::*member) {
  static std::deque<std::string> keys;  // stable storage for the key views
  auto key = [&](const char* suffix) -> std::string_view {
    keys.push_back("gimbal." + std::string(name) + suffix);
    return keys.back();
  };
  f.push_back({key("_period"),
               [member](RunConfig& c, const Value& v) { (c.gimbal.*member).period = as_positive(v); },
               [member](const RunConfig& c) { return fmt((c.gimbal.*member).period); }});
  f.push_back({key("_amplitude"),
               [member](RunConfig& c, const Value& v) { (c.gimbal.*member).amplitude = as_number(v); },
               [member](const RunConfig& c) { return fmt((c.gimbal.*member).amplitude); }});
  f.push_back({key("_offset"),
               [member](RunConfig& c, const Value& v) { (c.gimbal.*member).offset = as_number(v); },
               [member](const RunConfig& c) { return fmt((c.gimbal.*member).offset); }});
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    // trajectory
    f.push_back({"trajectory.source",
                 [](RunConfig& c, const Value& v) { c.trajectory.source = as_enum(v, kSourceNames); },
                 [](const RunConfig& c) { return enum_name(c.trajectory.source, kSourceNames); }});
    f.push_back({"trajectory.profile",
                 [](RunConfig& c, const Value& v) { c.trajectory.profile = as_enum(v, kProfileNames); },
                 [](const RunConfig& c) { return enum_name(c.trajectory.profile, kProfileNames); }});
    f.push_back({"trajectory.path",
                 [](RunConfig& c, const Value& v) { c.trajectory.path = as_string(v); },
                 [](const RunConfig& c) { return quote(c.trajectory.path); }});
    f.push_back({"trajectory.port",
                 [](RunConfig& c, const Value& v) {
                   const std::uint64_t p = as_u64(v);
                   if (p > 65535) throw ConfigError("port must be <= 65535");
                   c.trajectory.port = static_cast<std::uint16_t>(p);
                 },
                 [](const RunConfig& c) { return std::to_string(c.trajectory.port); }});
    f.push_back({"trajectory.rate_hz",
                 [](RunConfig& c, const Value& v) { c.trajectory.rate_hz = as_positive(v); },
                 [](const RunConfig& c) { return fmt(c.trajectory.rate_hz); }});
    f.push_back({"trajectory.dt_tolerance",
                 [](RunConfig& c, const Value& v) { c.trajectory.dt_tolerance = as_non_negative(v); },
                 [](const RunConfig& c) { return fmt(c.trajectory.dt_tolerance); }});
    f.push_back({"trajectory.duration_s",
                 [](RunConfig& c, const Value& v) { c.trajectory.duration_s = as_positive(v); },
                 [](const RunConfig& c) { return fmt(c.trajectory.duration_s); }});
    f.push_back({"trajectory.origin",
                 [](RunConfig& c, const Value& v) { c.trajectory.origin_deg = as_triple(v); },
                 [](const RunConfig& c) { return fmt(c.trajectory.origin_deg); }});
    f.push_back({"trajectory.attitude",
                 [](RunConfig& c, const Value& v) { c.trajectory.attitude_deg = as_triple(v); },
                 [](const RunConfig& c) { return fmt(c.trajectory.attitude_deg); }});
    f.push_back({"trajectory.speed_mps",
                 [](RunConfig& c, const Value& v) { c.trajectory.speed_mps = as_non_negative(v); },
                 [](const RunConfig& c) { return fmt(c.trajectory.speed_mps); }});
    f.push_back({"trajectory.heading_deg",
                 [](RunConfig& c, const Value& v) { c.trajectory.heading_deg = as_number(v); },
                 [](const RunConfig& c) { return fmt(c.trajectory.heading_deg); }});
    f.push_back({"trajectory.turn_radius_m",
                 [](RunConfig& c, const Value& v) { c.trajectory.turn_radius_m = as_number(v); },
                 [](const RunConfig& c) { return fmt(c.trajectory.turn_radius_m); }});
    f.push_back({"trajectory.climb_rate_mps",
                 [](RunConfig& c, const Value& v) { c.trajectory.climb_rate_mps = as_number(v); },
                 [](const RunConfig& c) { return fmt(c.trajectory.climb_rate_mps); }});
    f.push_back({"trajectory.columns",
                 [](RunConfig& c, const Value& v) {
                   c.trajectory.columns = as_string(v);
                   parse_column_mapping(c.trajectory.columns);
                 },
                 [](const RunConfig& c) { return quote(c.trajectory.columns); }});
    f.push_back({"trajectory.alt_offset_m",
                 [](RunConfig& c, const Value& v) { c.trajectory.alt_offset_m = as_number(v); },
                 [](const RunConfig& c) { return fmt(c.trajectory.alt_offset_m); }});
    f.push_back({"trajectory.idle_timeout_s",
                 [](RunConfig& c, const Value& v) { c.trajectory.idle_timeout_s = as_positive(v); },
                 [](const RunConfig& c) { return fmt(c.trajectory.idle_timeout_s); }});
    f.push_back({"trajectory.max_speed_mps",
                 [](RunConfig& c, const Value& v) { c.trajectory.max_speed_mps = as_positive(v); },
                 [](const RunConfig& c) { return fmt(c.trajectory.max_speed_mps); }});

    // gimbal
    f.push_back({"gimbal.enabled",
                 [](RunConfig& c, const Value& v) { c.gimbal.enabled = as_bool(v); },
                 [](const RunConfig& c) { return std::string(c.gimbal.enabled ? "true" : "false"); }});
    f.push_back({"gimbal.l_pt",
                 [](RunConfig& c, const Value& v) { c.gimbal.lever_pt = Vec3(0.0, 0.0, as_number(v)); },
                 Getter{}});
    f.push_back({"gimbal.l_tr",
                 [](RunConfig& c, const Value& v) { c.gimbal.lever_tr = Vec3(0.0, 0.0, as_number(v)); },
                 Getter{}});
    f.push_back({"gimbal.lever_pt",
                 [](RunConfig& c, const Value& v) { c.gimbal.lever_pt = as_triple(v); },
                 [](const RunConfig& c) { return fmt(c.gimbal.lever_pt); }});
    f.push_back({"gimbal.lever_tr",
                 [](RunConfig& c, const Value& v) { c.gimbal.lever_tr = as_triple(v); },
                 [](const RunConfig& c) { return fmt(c.gimbal.lever_tr); }});
    f.push_back({"gimbal.lever_imu",
                 [](RunConfig& c, const Value& v) { c.gimbal.lever_imu = as_triple(v); },
                 [](const RunConfig& c) { return fmt(c.gimbal.lever_imu); }});
    add_profile_fields(f, "pan", &GimbalConfig::pan);
    add_profile_fields(f, "tilt", &GimbalConfig::tilt);
    add_profile_fields(f, "roll", &GimbalConfig::roll);
    f.push_back({"gimbal.pan_axis",
                 [](RunConfig& c, const Value& v) { c.gimbal.pan_axis = as_enum(v, kAxisNames); },
                 [](const RunConfig& c) { return enum_name(c.gimbal.pan_axis, kAxisNames); }});
    f.push_back({"gimbal.tilt_axis",
                 [](RunConfig& c, const Value& v) { c.gimbal.tilt_axis = as_enum(v, kAxisNames); },
                 [](const RunConfig& c) { return enum_name(c.gimbal.tilt_axis, kAxisNames); }});
    f.push_back({"gimbal.roll_axis",
                 [](RunConfig& c, const Value& v) { c.gimbal.roll_axis = as_enum(v, kAxisNames); },
                 [](const RunConfig& c) { return enum_name(c.gimbal.roll_axis, kAxisNames); }});
    f.push_back({"gimbal.mount_deg",
                 [](RunConfig& c, const Value& v) { c.mount_deg = as_triple(v); },
                 [](const RunConfig& c) { return fmt(c.mount_deg); }});
    f.push_back({"gimbal.imu_alignment_deg",
                 [](RunConfig& c, const Value& v) { c.imu_alignment_deg = as_triple(v); },
                 [](const RunConfig& c) { return fmt(c.imu_alignment_deg); }});

    // imu
    f.push_back({"imu.model",
                 [](RunConfig& c, const Value& v) { c.imu.model = as_enum(v, kImuModelNames); },
                 [](const RunConfig& c) { return enum_name(c.imu.model, kImuModelNames); }});
    f.push_back({"imu.b_a",
                 [](RunConfig& c, const Value& v) { c.imu.accel_bias = as_triple(v); },
                 [](const RunConfig& c) { return fmt(c.imu_params().accel_bias); }});
    f.push_back({"imu.b_g",
                 [](RunConfig& c, const Value& v) { c.imu.gyro_bias = as_triple(v); },
                 [](const RunConfig& c) { return fmt(c.imu_params().gyro_bias); }});
    f.push_back({"imu.w_a",
                 [](RunConfig& c, const Value& v) { c.imu.accel_noise_psd = as_non_negative(v); },
                 [](const RunConfig& c) { return fmt(c.imu_params().accel_noise_psd); }});
    f.push_back({"imu.w_g",
                 [](RunConfig& c, const Value& v) { c.imu.gyro_noise_psd = as_non_negative(v); },
                 [](const RunConfig& c) { return fmt(c.imu_params().gyro_noise_psd); }});
    f.push_back({"imu.m_a_factor",
                 [](RunConfig& c, const Value& v) { c.imu.accel_scale_factor = as_non_negative(v); },
                 [](const RunConfig& c) { return fmt(c.imu.accel_scale_factor); }});
    f.push_back({"imu.m_g_factor",
                 [](RunConfig& c, const Value& v) { c.imu.gyro_scale_factor = as_non_negative(v); },
                 [](const RunConfig& c) { return fmt(c.imu.gyro_scale_factor); }});
    f.push_back({"imu.g_g_factor",
                 [](RunConfig& c, const Value& v) { c.imu.gyro_g_factor = as_non_negative(v); },
                 [](const RunConfig& c) { return fmt(c.imu.gyro_g_factor); }});

    // aiding
    f.push_back({"aiding.mode",
                 [](RunConfig& c, const Value& v) { c.aiding.mode = as_enum(v, kResetModeNames); },
                 [](const RunConfig& c) { return enum_name(c.aiding.mode, kResetModeNames); }});
    f.push_back({"aiding.rate_hz",
                 [](RunConfig& c, const Value& v) { c.aiding.rate_hz = as_positive(v); },
                 [](const RunConfig& c) { return fmt(c.aiding.rate_hz); }});
    f.push_back({"aiding.sigma_pos",
                 [](RunConfig& c, const Value& v) { c.aiding.sigma_pos = as_non_negative(v); },
                 [](const RunConfig& c) { return fmt(c.aiding.sigma_pos); }});
    f.push_back({"aiding.sigma_vel",
                 [](RunConfig& c, const Value& v) { c.aiding.sigma_vel = as_non_negative(v); },
                 [](const RunConfig& c) { return fmt(c.aiding.sigma_vel); }});
    f.push_back({"aiding.blend",
                 [](RunConfig& c, const Value& v) { c.aiding.blend = as_non_negative(v); },
                 [](const RunConfig& c) { return fmt(c.aiding.blend); }});

    // verify
    f.push_back({"verify.max_pos_rmse",
                 [](RunConfig& c, const Value& v) { c.verify.max_pos_rmse = as_positive(v); },
                 [](const RunConfig& c) { return fmt(c.verify.max_pos_rmse); }});
    f.push_back({"verify.max_vel_rmse",
                 [](RunConfig& c, const Value& v) { c.verify.max_vel_rmse = as_positive(v); },
                 [](const RunConfig& c) { return fmt(c.verify.max_vel_rmse); }});
    f.push_back({"verify.max_heading_rmse",
                 [](RunConfig& c, const Value& v) { c.verify.max_heading_rmse = as_positive(v); },
                 [](const RunConfig& c) { return fmt(c.verify.max_heading_rmse); }});
    f.push_back({"verify.settle_s",
                 [](RunConfig& c, const Value& v) { c.verify.settle_s = as_non_negative(v); },
                 [](const RunConfig& c) { return fmt(c.verify.settle_s); }});

    // run
    f.push_back({"run.id",
                 [](RunConfig& c, const Value& v) { c.run_id = as_string(v); },
                 [](const RunConfig& c) { return quote(c.run_id); }});
    f.push_back({"run.out",
                 [](RunConfig& c, const Value& v) { c.out_dir = as_string(v); },
                 [](const RunConfig& c) { return quote(c.out_dir); }});
    f.push_back({"run.seed",
                 [](RunConfig& c, const Value& v) { c.seed = as_u64(v); },
                 [](const RunConfig& c) { return std::to_string(c.seed); }});
    return f;
  }();
  return table;
}

const Field* find_field(std::string_view key) {
  for (const Field& f : fields()) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

// Strip a trailing comment outside double quotes.
std::string_view strip_comment(std::string_view line) {
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_quotes = !in_quotes;
    if (line[i] == '#' && !in_quotes) return line.substr(0, i);
  }
  return line;
}

Value parse_value(std::string_view text) {
  Value v;
  text = trim(text);
  if (text.empty()) throw ConfigError("missing value");
  if (text.front() == '[') {
    if (text.back() != ']') throw ConfigError("unterminated '['");
    v.kind = Value::Kind::kTriple;
    v.text = std::string(text);
    std::string_view body = text.substr(1, text.size() - 2);
    std::array<double, 3> xs{};
    std::size_t count = 0;
    while (true) {
      const auto comma = body.find(',');
      const std::string_view item = body.substr(0, comma);
      const auto d = to_number(item);
      if (!d) throw ConfigError("triple element '" + std::string(trim(item)) + "' is not a number");
      if (count == 3) throw ConfigError("triple has more than 3 elements");
      xs[count++] = *d;
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    if (count != 3) throw ConfigError("triple needs exactly 3 elements");
    v.triple = Vec3(xs[0], xs[1], xs[2]);
    return v;
  }
  if (text.front() == '"') {
    if (text.size() < 2 || text.back() != '"') throw ConfigError("unterminated string");
    v.kind = Value::Kind::kQuoted;
    v.text = std::string(text.substr(1, text.size() - 2));
    if (v.text.find('"') != std::string::npos) throw ConfigError("stray '\"' in string");
    return v;
  }
  v.kind = Value::Kind::kScalar;
  v.text = std::string(text);
  return v;
}

std::string format_bad_line(std::string_view line) {
  return "expected 'section.key = value', got '" + std::string(trim(line)) + "'";
}

}  // namespace

// --- RunConfig ------------------------------------------------------------------

StreamConfig RunConfig::stream_config() const {
  StreamConfig s;
  s.source = trajectory.source;
  s.rate_hz = trajectory.rate_hz;
  s.dt_tolerance = trajectory.dt_tolerance;
  s.columns = parse_column_mapping(trajectory.columns);
  s.alt_offset_m = trajectory.alt_offset_m;
  s.max_speed = trajectory.max_speed_mps;
  return s;
}

GimbalConfig RunConfig::gimbal_config() const {
  GimbalConfig g = gimbal;
  const auto to_rad = [](const Vec3& d) {
    return EulerAngles{d.x() * kDegToRad, d.y() * kDegToRad, d.z() * kDegToRad};
  };
  g.mount = euler_to_dcm(to_rad(mount_deg)).matrix();
  g.imu_alignment = euler_to_dcm(to_rad(imu_alignment_deg)).matrix();
  return g;
}

ImuErrorParams RunConfig::imu_params() const {
  ImuErrorParams p = imu.model == ImuModel::kIdeal ? ImuErrorParams::ideal(seed) : default_params(seed);
  p.accel_scale *= imu.accel_scale_factor;
  p.gyro_scale *= imu.gyro_scale_factor;
  p.gyro_g_sensitivity *= imu.gyro_g_factor;
  if (imu.accel_bias) p.accel_bias = *imu.accel_bias;
  if (imu.gyro_bias) p.gyro_bias = *imu.gyro_bias;
  if (imu.accel_noise_psd) p.accel_noise_psd = *imu.accel_noise_psd;
  if (imu.gyro_noise_psd) p.gyro_noise_psd = *imu.gyro_noise_psd;
  return p;
}

AidingConfig RunConfig::aiding_config() const {
  AidingConfig a = aiding;
  a.seed = seed;
  return a;
}

GeodeticPosition RunConfig::origin() const {
  return {trajectory.origin_deg.x() * kDegToRad, wrap_pi(trajectory.origin_deg.y() * kDegToRad),
          trajectory.origin_deg.z()};
}

void RunConfig::validate() const {
  stream_config().validate();
  try {
    agisim::validate(origin());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("trajectory.origin: ") + e.what());
  }
  if (trajectory.source == SourceKind::kFile && trajectory.path.empty()) {
    throw ConfigError("trajectory.path is required for a file source");
  }
  gimbal_config().validate();
  imu_params().validate();
  aiding_config().validate();
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(format_bad_line(line), line_no);
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty() || key.find('.') == std::string_view::npos) {
      throw ConfigError(format_bad_line(line), line_no);
    }
    const Field* field = find_field(key);
    if (!field) throw ConfigError("unknown key '" + std::string(key) + "'", line_no);
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError("key '" + std::string(key) + "' set twice", line_no);
    }
    try {
      field->set(cfg, parse_value(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(key) + ": " + e.what(), line_no);
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_config_text(const RunConfig& cfg) {
  std::string out;
  for (const Field& f : fields()) {
    if (!f.get) continue;
    out += f.key;
    out += " = ";
    out += f.get(cfg);
    out += '\n';
  }
  return out;
}

std::vector<PoseSample> build_trajectory(const RunConfig& cfg) {
  const TrajectoryConfig& t = cfg.trajectory;
  const StreamConfig stream = cfg.stream_config();
  const GeodeticPosition start = cfg.origin();
  std::vector<PoseSample> poses;

  ManeuverParams mp;
  mp.start = start;
  mp.speed = t.speed_mps;
  mp.heading = t.heading_deg * kDegToRad;
  mp.climb_rate = t.climb_rate_mps;
  mp.turn_radius = t.turn_radius_m;

  switch (t.source) {
    case SourceKind::kUdp:
      throw ConfigError("udp trajectories are live streams; use the ingest command");
    case SourceKind::kFile:
      poses = read_trajectory_file(t.path, stream);
      break;
    case SourceKind::kSynthetic:
      switch (t.profile) {
        case SyntheticProfile::kStationary: {
          const EulerAngles att{t.attitude_deg.x() * kDegToRad, t.attitude_deg.y() * kDegToRad,
                                t.attitude_deg.z() * kDegToRad};
          poses = synth_stationary(start, att, t.duration_s, t.rate_hz);
          break;
        }
        case SyntheticProfile::kStraight:
          poses = synth_maneuver(ManeuverProfile::kStraight, mp, t.duration_s, t.rate_hz);
          break;
        case SyntheticProfile::kClimb:
          poses = synth_maneuver(ManeuverProfile::kClimb, mp, t.duration_s, t.rate_hz);
          break;
        case SyntheticProfile::kTurn:
          poses = synth_maneuver(ManeuverProfile::kCoordinatedTurn, mp, t.duration_s, t.rate_hz);
          break;
        case SyntheticProfile::kManeuvering:
          poses = synth_flight_plan(default_maneuvering_plan(start), t.rate_hz);
          break;
        case SyntheticProfile::kTakeoff:
          poses = synth_flight_plan(takeoff_climb_plan(start, t.duration_s), t.rate_hz);
          break;
      }
      break;
  }
  return validate_stream(poses, stream);
}

std::vector<std::string> scenario_names() { return {"pan", "tilt", "ptr-takeoff"}; }

RunConfig scenario_config(std::string_view name) {
  RunConfig cfg;
  cfg.run_id = std::string(name);
  cfg.imu.model = ImuModel::kIdeal;
  cfg.gimbal = GimbalConfig::reference_motion();
  cfg.trajectory.source = SourceKind::kSynthetic;
  if (name == "pan") {
    cfg.trajectory.profile = SyntheticProfile::kStationary;
    cfg.trajectory.duration_s = 20.0;
    cfg.gimbal.tilt.amplitude = 0.0;
    cfg.gimbal.roll.amplitude = 0.0;
    // Off-axis lever so the IMU circles the pan axis.
    cfg.gimbal.lever_pt = Vec3(0.1, 0.0, 0.1);
  } else if (name == "tilt") {
    cfg.trajectory.profile = SyntheticProfile::kStationary;
    cfg.trajectory.duration_s = 24.0;
    cfg.gimbal.pan.amplitude = 0.0;
    cfg.gimbal.roll.amplitude = 0.0;
  } else if (name == "ptr-takeoff") {
    cfg.trajectory.profile = SyntheticProfile::kTakeoff;
    cfg.trajectory.duration_s = 60.0;
  } else {
    std::string names;
    for (const auto& n : scenario_names()) names += (names.empty() ? "" : ", ") + n;
    throw ConfigError("unknown scenario '" + std::string(name) + "' (available: " + names + ")");
  }
  cfg.validate();
  return cfg;
}

}  // namespace agisim
