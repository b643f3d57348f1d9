#ifndef SFTLAB_CLASSIFY_HPP_
#define SFTLAB_CLASSIFY_HPP_

// Integer invariants of a presentation and the verdicts they decide:
// flow equivalence (Bowen-Franks group plus sign of det(I - A)) and
// continuous orbit equivalence (pointed K_0 group plus the same sign).

#include <optional>
#include <string>

#include "sftlab/function.hpp"
#include "sftlab/intlat.hpp"
#include "sftlab/sft.hpp"
#include "sftlab/transducer.hpp"

namespace sftlab {

struct InvariantReport {
  intlat::FgAbelianGroup bf_group;   // coker(I - A)
  intlat::PointedGroup k0_pointed;   // coker(I - A^T) with the class of (1, ..., 1)
  Integer det;                       // det(I - A)
  int det_sign = 0;
  /// Collatz-Wielandt bounds on the spectral radius. Diagnostic only.
  Rational radius_lower;
  Rational radius_upper;
};

InvariantReport invariants(const PresentationPtr& p);

struct FlowVerdict {
  bool equivalent = false;
  InvariantReport a;
  InvariantReport b;
};

FlowVerdict flow_equivalent(const PresentationPtr& a, const PresentationPtr& b);

struct CoeVerdict {
  intlat::Verdict verdict = intlat::Verdict::undecided;
  bool det_signs_equal = false;
  intlat::PointedIso pointed;
  InvariantReport a;
  InvariantReport b;
};

CoeVerdict coe_verdict(const PresentationPtr& a, const PresentationPtr& b);

struct ConsistencyReport {
  CoeVerdict coe;
  bool witness_checked = false;
  std::optional<OrbitCheck> orbit_check;
  std::optional<Function> image_of_one;  // Psi_h(1_B)
  bool strong = false;
};

/// Cross-checks the invariant verdict against an explicit witness h: X_A -> X_B.
/// The witness must satisfy its orbit relation (InvalidArgument otherwise); a
/// verified witness together with verdict `no` throws ContradictionDetected.
ConsistencyReport consistency_check(const PresentationPtr& a, const PresentationPtr& b,
                                    const Transducer* witness = nullptr, const OrbitData* data = nullptr);

}  // namespace sftlab

#endif  // SFTLAB_CLASSIFY_HPP_
