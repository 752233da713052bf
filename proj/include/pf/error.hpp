#pragma once

#include <stdexcept>
#include <string>

namespace pf {

enum class Errc {
  InvalidArgument,
  ParseError,
  InsufficientWindow,
  InsufficientDepth,
  InvalidArcCode,
  BadFirstSymbol,
  DuplicateArcCode,
  MissingRoot,
  MalformedPattern,
  ShapeViolation,
  NotMisiurewicz,
  BudgetExceeded,
  WindowTooDeep,
  OrderingAmbiguous,
  NoCandidates,
  UnstableEigenvalueMissing,
  IoError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace pf
