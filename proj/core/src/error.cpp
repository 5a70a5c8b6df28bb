#include "modcsp/error.hpp"

namespace modcsp {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::group_mismatch: return "GroupMismatch";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::multi_component_group: return "MultiComponentGroup";
    case Errc::invalid_rounds: return "InvalidRounds";
    case Errc::auto_rounds_unavailable: return "AutoRoundsUnavailable";
    case Errc::invalid_modulus: return "InvalidModulus";
    case Errc::invalid_trials: return "InvalidTrials";
    case Errc::size_limit: return "SizeLimit";
    case Errc::basis_mismatch: return "BasisMismatch";
    case Errc::not_prime: return "NotPrime";
    case Errc::even_modulus: return "EvenModulus";
    case Errc::prime_power_modulus: return "PrimePowerModulus";
    case Errc::invalid_system: return "InvalidSystem";
    case Errc::negative_coefficients: return "NegativeCoefficients";
    case Errc::not_unique_point: return "NotUniquePoint";
    case Errc::invalid_rep: return "InvalidRep";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::parse_error: return "ParseError";
    case Errc::semantic_error: return "SemanticError";
  }
  return "Unknown";
}

}  // namespace modcsp
