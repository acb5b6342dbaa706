#include "tubehyp/error.hpp"

namespace tubehyp {

const char* errc_name(Errc code)
{
  switch (code) {
    case Errc::invalid_domain: return "InvalidDomain";
    case Errc::hull_undecidable: return "HullUndecidable";
    case Errc::unknown_builtin: return "UnknownBuiltin";
    case Errc::bad_params: return "BadParams";
    case Errc::point_not_in_domain: return "PointNotInDomain";
    case Errc::unsupported_base: return "UnsupportedBase";
    case Errc::invalid_witness: return "InvalidWitness";
    case Errc::empty_source: return "EmptySource";
    case Errc::witness_invalid: return "WitnessInvalid";
    case Errc::containment_fails: return "ContainmentFails";
    case Errc::degree_too_high: return "DegreeTooHigh";
    case Errc::zero_vector: return "ZeroVector";
    case Errc::unbounded_viewport: return "UnboundedViewport";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace tubehyp
