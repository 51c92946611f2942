#include "agisim/trajectory.hpp"

#include "agisim/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace agisim {

namespace {

constexpr double kDegToRad = kPi / 180.0;
constexpr double kFeetToMeters = 0.3048;
constexpr std::size_t kQuantityCount = 10;

std::size_t quantity_index(Quantity q) { return static_cast<std::size_t>(q); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void invalid(Quantity q, const std::string& what) {
  throw RecordError(RecordError::Kind::kValidation, what, 0, quantity_index(q));
}

}  // namespace

void validate(const PoseSample& s, double max_speed) {
  if (!std::isfinite(s.t)) invalid(Quantity::kTime, "non-finite time");
  if (!std::isfinite(s.pos.lat)) invalid(Quantity::kLat, "non-finite latitude");
  if (!std::isfinite(s.pos.lon)) invalid(Quantity::kLon, "non-finite longitude");
  if (!std::isfinite(s.pos.alt)) invalid(Quantity::kAlt, "non-finite altitude");
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(s.vel_n[i])) {
      invalid(static_cast<Quantity>(quantity_index(Quantity::kVelN) + i), "non-finite velocity");
    }
  }
  if (!std::isfinite(s.att.roll)) invalid(Quantity::kRoll, "non-finite roll");
  if (!std::isfinite(s.att.pitch)) invalid(Quantity::kPitch, "non-finite pitch");
  if (!std::isfinite(s.att.yaw)) invalid(Quantity::kYaw, "non-finite yaw");

  if (std::abs(s.pos.lat) > kPi / 2) invalid(Quantity::kLat, "latitude beyond +-90 deg");
  if (s.pos.alt < -5000.0 || s.pos.alt > 100000.0) {
    invalid(Quantity::kAlt, "altitude outside [-5000, 100000] m");
  }
  if (std::abs(s.att.pitch) > kPi / 2) invalid(Quantity::kPitch, "pitch beyond +-90 deg");
  if (!(s.vel_n.norm() < max_speed)) {
    std::ostringstream os;
    os << "speed " << s.vel_n.norm() << " m/s exceeds bound " << max_speed << " m/s";
    invalid(Quantity::kVelN, os.str());
  }
}

ColumnSpec parse_column_token(std::string_view token) {
  token = trim(token);
  if (token == "skip") return {};
  const auto us = token.rfind('_');
  if (us == std::string_view::npos) {
    throw ConfigError("column token '" + std::string(token) + "' lacks a unit suffix");
  }
  const std::string_view name = token.substr(0, us);
  const std::string_view unit = token.substr(us + 1);

  struct Entry {
    std::string_view name;
    Quantity q;
    char kind;  // t = time, a = angle, l = length, v = velocity
  };
  static constexpr std::array<Entry, 10> kNames{{
      {"time", Quantity::kTime, 't'},  {"lat", Quantity::kLat, 'a'},
      {"lon", Quantity::kLon, 'a'},    {"alt", Quantity::kAlt, 'l'},
      {"vN", Quantity::kVelN, 'v'},    {"vE", Quantity::kVelE, 'v'},
      {"vD", Quantity::kVelD, 'v'},    {"roll", Quantity::kRoll, 'a'},
      {"pitch", Quantity::kPitch, 'a'}, {"yaw", Quantity::kYaw, 'a'},
  }};
  for (const auto& e : kNames) {
    if (e.name != name) continue;
    double scale = 0.0;
    switch (e.kind) {
      case 't': scale = unit == "s" ? 1.0 : unit == "ms" ? 1e-3 : 0.0; break;
      case 'a': scale = unit == "rad" ? 1.0 : unit == "deg" ? kDegToRad : 0.0; break;
      case 'l': scale = unit == "m" ? 1.0 : unit == "ft" ? kFeetToMeters : 0.0; break;
      case 'v': scale = unit == "mps" ? 1.0 : unit == "fps" ? kFeetToMeters : 0.0; break;
    }
    if (scale == 0.0) {
      throw ConfigError("unsupported unit '" + std::string(unit) + "' for column '" +
                        std::string(name) + "'");
    }
    return {e.q, scale};
  }
  throw ConfigError("unknown column '" + std::string(name) + "'");
}

std::vector<ColumnSpec> parse_column_mapping(std::string_view mapping) {
  std::vector<ColumnSpec> cols;
  std::array<int, kQuantityCount> seen{};
  std::size_t start = 0;
  while (true) {
    const auto comma = mapping.find(',', start);
    const auto token = mapping.substr(start, comma == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : comma - start);
    ColumnSpec c = parse_column_token(token);
    if (c.quantity != Quantity::kSkip) {
      if (seen[quantity_index(c.quantity)]++ > 0) {
        throw ConfigError("column '" + std::string(trim(token)) + "' mapped twice");
      }
    }
    cols.push_back(c);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  for (std::size_t i = 0; i < kQuantityCount; ++i) {
    if (seen[i] == 0) throw ConfigError("column mapping is missing a required quantity");
  }
  return cols;
}

void StreamConfig::validate() const {
  if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) {
    throw ConfigError("stream rate must be > 0 Hz");
  }
  if (!(dt_tolerance >= 0.0 && dt_tolerance <= 0.5)) {
    throw ConfigError("dt tolerance must lie in [0, 0.5]");
  }
  if (!(max_speed > 0.0)) throw ConfigError("max speed must be > 0");
  if (!std::isfinite(alt_offset_m)) throw ConfigError("altitude offset must be finite");
}

PoseSample parse_fdm_datagram(std::string_view payload, const StreamConfig& cfg) {
  std::string_view body = payload;
  if (!body.empty() && body.back() == '\n') body.remove_suffix(1);
  if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
  if (const auto nl = body.find_first_of("\r\n"); nl != std::string_view::npos) {
    throw RecordError(RecordError::Kind::kMalformed, "embedded line break", nl, 0);
  }

  const std::size_t expected = cfg.columns.size();
  std::array<double, kQuantityCount> value{};
  std::array<std::size_t, kQuantityCount> column_of{};
  std::array<std::size_t, kQuantityCount> offset_of{};

  // Count fields first so a short or long record is always malformed.
  const std::size_t fields = static_cast<std::size_t>(std::count(body.begin(), body.end(), ',')) + 1;
  if (fields != expected) {
    std::size_t offset = body.size();
    if (fields > expected) {
      offset = 0;
      for (std::size_t n = 0; n < expected; ++n) offset = body.find(',', offset) + 1;
    }
    throw RecordError(RecordError::Kind::kMalformed,
                      "expected " + std::to_string(expected) + " fields, got " +
                          std::to_string(fields),
                      offset, std::min(fields, expected));
  }

  std::size_t field = 0;
  std::size_t start = 0;
  while (true) {
    const auto comma = body.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? body.size() : comma;
    if (field >= expected) {
      throw RecordError(RecordError::Kind::kMalformed,
                        "too many fields (expected " + std::to_string(expected) + ")", start,
                        field);
    }
    const std::string_view raw = body.substr(start, end - start);
    std::string_view text = trim(raw);
    const std::size_t text_offset = start + static_cast<std::size_t>(text.data() - raw.data());
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);

    const ColumnSpec& col = cfg.columns[field];
    if (col.quantity != Quantity::kSkip) {
      double v = 0.0;
      const char* first = text.data();
      const char* last = text.data() + text.size();
      const auto res = std::from_chars(first, last, v);
      if (text.empty() || res.ec != std::errc() || res.ptr != last) {
        throw RecordError(RecordError::Kind::kParse, "field is not a number", text_offset,
                          field);
      }
      if (!std::isfinite(v)) {
        throw RecordError(RecordError::Kind::kValidation, "non-finite value", text_offset,
                          field);
      }
      const std::size_t q = quantity_index(col.quantity);
      value[q] = v * col.to_si;
      column_of[q] = field;
      offset_of[q] = text_offset;
    }
    ++field;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (field != expected) {
    throw RecordError(RecordError::Kind::kMalformed,
                      "expected " + std::to_string(expected) + " fields, got " +
                          std::to_string(field),
                      body.size(), field);
  }

  PoseSample s;
  s.t = value[quantity_index(Quantity::kTime)];
  s.pos.lat = value[quantity_index(Quantity::kLat)];
  s.pos.lon = wrap_pi(value[quantity_index(Quantity::kLon)]);
  s.pos.alt = value[quantity_index(Quantity::kAlt)] + cfg.alt_offset_m;
  s.vel_n = Vec3(value[quantity_index(Quantity::kVelN)], value[quantity_index(Quantity::kVelE)],
                 value[quantity_index(Quantity::kVelD)]);
  s.att.roll = value[quantity_index(Quantity::kRoll)];
  s.att.pitch = value[quantity_index(Quantity::kPitch)];
  s.att.yaw = value[quantity_index(Quantity::kYaw)];
  try {
    validate(s, cfg.max_speed);
  } catch (const RecordError& e) {
    const std::size_t q = e.field_index();
    throw RecordError(RecordError::Kind::kValidation, e.what(), offset_of[q], column_of[q]);
  }
  return s;
}

VectorPoseSource::VectorPoseSource(std::vector<PoseSample> samples)
    : samples_(std::move(samples)) {}

std::optional<PoseSample> VectorPoseSource::next() {
  if (index_ >= samples_.size()) return std::nullopt;
  return samples_[index_++];
}

FilePoseSource::FilePoseSource(const std::filesystem::path& path, StreamConfig cfg)
    : in_(path, std::ios::binary), cfg_(std::move(cfg)) {
  if (!in_) throw IoError("cannot open trajectory file: " + path.string());
}

std::optional<PoseSample> FilePoseSource::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    const std::string_view view = trim(line);
    if (view.empty() || view == "\r" || view.front() == '#') continue;
    try {
      return parse_fdm_datagram(line, cfg_);
    } catch (const RecordError& e) {
      throw e.with_line(line_);
    }
  }
  return std::nullopt;
}

std::vector<PoseSample> read_trajectory_file(const std::filesystem::path& path,
                                             const StreamConfig& cfg) {
  FilePoseSource src(path, cfg);
  return drain(src);
}

ValidatingPoseSource::ValidatingPoseSource(PoseSource& upstream, const StreamConfig& cfg)
    : upstream_(upstream), nominal_dt_(1.0 / cfg.rate_hz), tolerance_(cfg.dt_tolerance) {
  cfg.validate();
}

std::optional<PoseSample> ValidatingPoseSource::next() {
  auto s = upstream_.next();
  if (!s) return s;
  if (last_t_) {
    const double dt = s->t - *last_t_;
    if (!(dt > 0.0)) throw StreamError(StreamError::Kind::kNonMonotonic, index_, dt);
    if (std::abs(dt - nominal_dt_) > tolerance_ * nominal_dt_ + 1e-9 * nominal_dt_) {
      throw StreamError(StreamError::Kind::kGap, index_, dt);
    }
  }
  last_t_ = s->t;
  ++index_;
  return s;
}

std::vector<PoseSample> validate_stream(std::span<const PoseSample> samples,
                                        const StreamConfig& cfg) {
  VectorPoseSource src(std::vector<PoseSample>(samples.begin(), samples.end()));
  ValidatingPoseSource checked(src, cfg);
  return drain(checked);
}

std::vector<PoseSample> drain(PoseSource& source) {
  std::vector<PoseSample> out;
  while (auto s = source.next()) out.push_back(*s);
  return out;
}

}  // namespace agisim
