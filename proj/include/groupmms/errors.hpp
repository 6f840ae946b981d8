#pragma once

#include <stdexcept>
#include <string>

namespace groupmms {

enum class Errc {
  negative_utility,
  length_mismatch,
  empty_group,
  last_agent,
  last_group,
  parse_error,
  too_large,
  nonpositive_threshold,
  cap_violation,
  exhausted,
  beta_too_small,
  condition_violation,
  design_too_big,
  design_invalid,
  hypothesis_violation,
  trivial_regime,
};

const char* errc_name(Errc code);

// Domain failure with a stable machine-readable tag. The CLI maps these to
// exit code 1; usage problems are reported separately.
class DomainError : public std::runtime_error {
 public:
  DomainError(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) {
  throw DomainError(code, detail);
}

}  // namespace groupmms
