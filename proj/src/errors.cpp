#include "groupmms/errors.hpp"

namespace groupmms {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::negative_utility: return "NEGATIVE_UTILITY";
    case Errc::length_mismatch: return "LENGTH_MISMATCH";
    case Errc::empty_group: return "EMPTY_GROUP";
    case Errc::last_agent: return "LAST_AGENT";
    case Errc::last_group: return "LAST_GROUP";
    case Errc::parse_error: return "PARSE_ERROR";
    case Errc::too_large: return "TOO_LARGE";
    case Errc::nonpositive_threshold: return "NONPOSITIVE_THRESHOLD";
    case Errc::cap_violation: return "CAP_VIOLATION";
    case Errc::exhausted: return "EXHAUSTED";
    case Errc::beta_too_small: return "BETA_TOO_SMALL";
    case Errc::condition_violation: return "CONDITION_VIOLATION";
    case Errc::design_too_big: return "DESIGN_TOO_BIG";
    case Errc::design_invalid: return "DESIGN_INVALID";
    case Errc::hypothesis_violation: return "HYPOTHESIS_VIOLATION";
    case Errc::trivial_regime: return "TRIVIAL_REGIME";
  }
  return "UNKNOWN";
}

}  // namespace groupmms
