#ifndef SFTLAB_ERROR_HPP_
#define SFTLAB_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sftlab {

enum class Errc {
  NotSquare,
  NegativeEntry,
  NotZeroOne,
  NotIrreducible,
  PermutationMatrix,
  TooLarge,
  PresentationMismatch,
  Inadmissible,
  NotCyclicallyAdmissible,
  RationalNotSupported,
  MismatchedInput,
  Starvation,
  InadmissibleOutput,
  IncompleteTransducer,
  DomainMismatch,
  InsufficientLookahead,
  NotVertexKind,
  InvalidResult,
  ContradictionDetected,
  Parse,
  InvalidArgument,
};

std::string_view errc_name(Errc code);

/// Every failure raised by the library. The code is stable and is what tests
/// and the CLI dispatch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sftlab

#endif  // SFTLAB_ERROR_HPP_
