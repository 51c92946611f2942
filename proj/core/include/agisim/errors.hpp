#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace agisim {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (e.g. latitude > 90 deg).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical invariant was violated (corrupted DCM, acos argument far outside [-1, 1]).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Frame-label mismatch or other API misuse.
class ContractError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class SocketError : public Error {
 public:
  using Error::Error;
};

/// Configuration error. line() is 1-based, 0 when not tied to a line.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Failure to turn one telemetry record into a PoseSample.
class RecordError : public Error {
 public:
  enum class Kind { kMalformed, kParse, kValidation };

  RecordError(Kind kind, const std::string& what, std::size_t byte_offset,
              std::size_t field_index, std::size_t line = 0);

  Kind kind() const noexcept { return kind_; }
  std::size_t byte_offset() const noexcept { return byte_offset_; }
  std::size_t field_index() const noexcept { return field_index_; }
  // 1-based line number for file sources, 0 otherwise.
  std::size_t line() const noexcept { return line_; }

  RecordError with_line(std::size_t line) const;

 private:
  Kind kind_;
  std::string detail_;
  std::size_t byte_offset_;
  std::size_t field_index_;
  std::size_t line_;
};

/// Time-ordering violation in a pose stream.
class StreamError : public Error {
 public:
  enum class Kind { kNonMonotonic, kGap };

  StreamError(Kind kind, std::size_t index, double measured_dt);

  Kind kind() const noexcept { return kind_; }
  std::size_t index() const noexcept { return index_; }
  double measured_dt() const noexcept { return measured_dt_; }

 private:
  Kind kind_;
  std::size_t index_;
  double measured_dt_;
};

/// The navigation state became non-finite.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t epoch);
  std::size_t epoch() const noexcept { return epoch_; }

 private:
  std::size_t epoch_;
};

}  // namespace agisim
