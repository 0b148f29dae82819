#pragma once

#include <stdexcept>
#include <string>

namespace adlab {

enum class Errc {
  invalid_argument,
  non_coprime,
  window_exceeds_caps,
  budget_exhausted,
  parse_error,
  schema_mismatch,
  verification_failed,
  io_error,
  universe_too_large,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_argument: return "INVALID_ARGUMENT";
    case Errc::non_coprime: return "NON_COPRIME";
    case Errc::window_exceeds_caps: return "WINDOW_EXCEEDS_CAPS";
    case Errc::budget_exhausted: return "BUDGET_EXHAUSTED";
    case Errc::parse_error: return "PARSE_ERROR";
    case Errc::schema_mismatch: return "SCHEMA_MISMATCH";
    case Errc::verification_failed: return "VERIFICATION_FAILED";
    case Errc::io_error: return "IO_ERROR";
    case Errc::universe_too_large: return "UNIVERSE_TOO_LARGE";
    case Errc::internal: return "INTERNAL";
  }
  return "INTERNAL";
}

}  // namespace adlab
