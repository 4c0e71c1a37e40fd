#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace planemap {

enum class Errc {
  DegenerateElimination,
  DegenerateMap,
  NumericUnstable,
  RectifyFailed,
  NotInClass,
  ShapeMismatch,
  Lemma1MiddleCoefficients,
  InvalidParams,
  Parse,
  Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string msg)
      : std::runtime_error(std::move(msg)), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

class ParseError : public Error {
public:
  ParseError(std::size_t offset, std::string expected, std::string msg)
      : Error(Errc::Parse, std::move(msg)),
        offset_(offset),
        expected_(std::move(expected)) {}
  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

private:
  std::size_t offset_;
  std::string expected_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) {
  throw Error(c, msg);
}

// Internal consistency check. These fire only on bugs or on inputs that
// violate a documented precondition in a way we could not detect earlier.
inline void check_internal(bool ok, const std::string& msg) {
  if (!ok) throw Error(Errc::Internal, msg);
}

}  // namespace planemap
