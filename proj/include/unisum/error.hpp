#pragma once

#include <stdexcept>
#include <string>

namespace unisum {

enum class ErrorCode {
  kInvalidGroup,
  kInvalidElement,
  kGroupMismatch,
  kInvalidDilation,
  kSizeLimit,
  kInvalidRepresentation,
  kPrecondition,
  kNotInSubgroup,
  kRectificationRequired,
  kUnsupported,
  kParse,
  kInternal,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code selects the CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace unisum
