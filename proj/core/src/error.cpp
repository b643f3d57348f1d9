#include "sftlab/error.hpp"

namespace sftlab {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NotSquare: return "NotSquare";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::NotZeroOne: return "NotZeroOne";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::PermutationMatrix: return "PermutationMatrix";
    case Errc::TooLarge: return "TooLarge";
    case Errc::PresentationMismatch: return "PresentationMismatch";
    case Errc::Inadmissible: return "Inadmissible";
    case Errc::NotCyclicallyAdmissible: return "NotCyclicallyAdmissible";
    case Errc::RationalNotSupported: return "RationalNotSupported";
    case Errc::MismatchedInput: return "MismatchedInput";
    case Errc::Starvation: return "Starvation";
    case Errc::InadmissibleOutput: return "InadmissibleOutput";
    case Errc::IncompleteTransducer: return "IncompleteTransducer";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::InsufficientLookahead: return "InsufficientLookahead";
    case Errc::NotVertexKind: return "NotVertexKind";
    case Errc::InvalidResult: return "InvalidResult";
    case Errc::ContradictionDetected: return "ContradictionDetected";
    case Errc::Parse: return "Parse";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace sftlab
