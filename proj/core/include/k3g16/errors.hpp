#pragma once

#include <stdexcept>
#include <string>

namespace k3g16 {

enum class ErrorCode {
  invalid_argument,
  seed_not_generic,
  non_generic_point,
  non_generic_plane,
  on_base_locus,
  line_in_x,
  point_on_peskine,
  not_on_peskine,
  degenerate_line,
  inconsistent,
  not_antisymmetric,
  sketch_disagreement,
  state_mismatch,
  corrupt_state,
  internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace k3g16
