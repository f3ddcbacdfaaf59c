#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seqtag {

// Error classes map 1:1 onto CLI exit codes.
enum class errc {
  internal = 1,
  config = 2,
  io = 3,
  parse = 4,
  decode = 5,
  model_format = 6,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

class config_error : public error {
 public:
  explicit config_error(const std::string& what) : error(errc::config, what) {}
};

class io_error : public error {
 public:
  explicit io_error(const std::string& what) : error(errc::io, what) {}
};

// Carries the 1-based line number of the offending input line (0 = whole document).
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t line = 0)
      : error(errc::parse, line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Carries the 0-based sentence position where decoding failed (npos if not positional).
class decode_error : public error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  explicit decode_error(const std::string& what, std::size_t position = npos)
      : error(errc::decode, what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class model_format_error : public error {
 public:
  enum class reason { version_mismatch, truncated, dimension_mismatch, bad_value };

  model_format_error(reason r, const std::string& what)
      : error(errc::model_format, what), reason_(r) {}
  reason why() const { return reason_; }

 private:
  reason reason_;
};

}  // namespace seqtag
