#include "agisim/errors.hpp"

#include <sstream>

namespace agisim {

namespace {

std::string with_line_prefix(const std::string& what, std::size_t line) {
  if (line == 0) return what;
  return "line " + std::to_string(line) + ": " + what;
}

const char* record_kind_name(RecordError::Kind kind) {
  switch (kind) {
    case RecordError::Kind::kMalformed: return "malformed record";
    case RecordError::Kind::kParse: return "parse error";
    case RecordError::Kind::kValidation: return "validation error";
  }
  return "record error";
}

std::string record_message(RecordError::Kind kind, const std::string& what,
                           std::size_t offset, std::size_t field, std::size_t line) {
  std::ostringstream os;
  if (line != 0) os << "line " << line << ": ";
  os << record_kind_name(kind) << " at byte " << offset << ", field " << field << ": "
     << what;
  return os.str();
}

std::string stream_message(StreamError::Kind kind, std::size_t index, double dt) {
  std::ostringstream os;
  if (kind == StreamError::Kind::kNonMonotonic) {
    os << "non-monotonic timestamp at index " << index << " (dt=" << dt << " s)";
  } else {
    os << "sample gap at index " << index << ": measured dt=" << dt << " s";
  }
  return os.str();
}

}  // namespace

ConfigError::ConfigError(const std::string& what, std::size_t line)
    : Error(with_line_prefix(what, line)), line_(line) {}

RecordError::RecordError(Kind kind, const std::string& what, std::size_t byte_offset,
                         std::size_t field_index, std::size_t line)
    : Error(record_message(kind, what, byte_offset, field_index, line)),
      kind_(kind),
      detail_(what),
      byte_offset_(byte_offset),
      field_index_(field_index),
      line_(line) {}

RecordError RecordError::with_line(std::size_t line) const {
  return RecordError(kind_, detail_, byte_offset_, field_index_, line);
}

StreamError::StreamError(Kind kind, std::size_t index, double measured_dt)
    : Error(stream_message(kind, index, measured_dt)),
      kind_(kind),
      index_(index),
      measured_dt_(measured_dt) {}

DivergenceError::DivergenceError(const std::string& what, std::size_t epoch)
    : Error(what + " (epoch " + std::to_string(epoch) + ")"), epoch_(epoch) {}

}  // namespace agisim
