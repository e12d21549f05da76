#pragma once

#include <stdexcept>
#include <string>

namespace bb {

// Machine-readable failure category carried by every library exception.
// The CLI maps these onto exit codes and the `error` field of its JSON.
enum class ErrorCode {
  invalid_argument,
  entanglement_breaking,
  unsupported,
  numerical,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::entanglement_breaking: return "entanglement_breaking";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::numerical: return "numerical";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::invalid_argument, what);
}

}  // namespace bb
