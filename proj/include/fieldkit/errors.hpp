#pragma once

#include <stdexcept>
#include <string>

namespace fieldkit {

// Rejected input or malformed artifact. CLI maps this to exit code 2 and a
// one-line "error: <code>: <detail>" message.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// A well-formed query with an empty answer (e.g. no occupied voxels match).
// CLI maps this to exit code 3.
class NoResultError : public std::runtime_error {
 public:
  NoResultError(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

inline void require(bool cond, const char* code, const std::string& detail) {
  if (!cond) throw ValidationError(code, detail);
}

}  // namespace fieldkit
