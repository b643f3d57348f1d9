#ifndef SFTLAB_COHOMOLOGY_HPP_
#define SFTLAB_COHOMOLOGY_HPP_

// The ordered cohomology group H^A = C(X_A, Z) / {b - b o sigma_A}, handled
// through representatives: every question about classes is answered by a
// decision procedure on the depth-d potential graph, whose vertices are
// B_{d-1}, whose edges are B_d (prefix -> suffix) and whose closed walks are
// exactly the periodic orbits of X_A.

#include <cstddef>
#include <optional>
#include <vector>

#include "sftlab/function.hpp"

namespace sftlab {

/// f o sigma_A, one level deeper.
Function pullback_sigma(const Function& f);
/// f^n(x) = sum_{i<n} f(sigma^i x); f^0 = 0.
Function partial_sum(const Function& f, std::size_t n);
/// b - b o sigma_A.
Function coboundary(const Function& b);
/// Sum of f over one period of cycle^infinity. Throws NotCyclicallyAdmissible.
Rational orbit_sum(const Function& f, const Word& cycle);

struct ZeroDecision {
  bool is_zero = false;
  /// f = coboundary(*witness), re-verified; present iff is_zero.
  std::optional<Function> witness;
  /// A cyclically admissible word with nonzero orbit sum; present iff !is_zero.
  std::optional<Word> cycle;
  Rational cycle_sum = 0;
};

ZeroDecision class_is_zero(const Function& f);
ZeroDecision class_equal(const Function& f, const Function& g);

struct NonnegativeDecision {
  bool nonnegative = false;
  /// Pointwise >= 0 and cohomologous to the input; present iff nonnegative.
  std::optional<Function> representative;
  /// representative = f + coboundary(*transfer).
  std::optional<Function> transfer;
  /// A cycle with negative orbit sum; present iff !nonnegative.
  std::optional<Word> cycle;
  Rational cycle_sum = 0;
};

/// Integer-valued f only (RationalNotSupported otherwise).
NonnegativeDecision class_is_nonnegative(const Function& f);

struct OrderUnitDecision {
  bool order_unit = false;
  /// A cycle whose orbit sum is <= 0 when not an order unit.
  std::optional<Word> cycle;
  Rational cycle_sum = 0;
};

/// True iff every periodic orbit has strictly positive orbit sum.
OrderUnitDecision order_unit_check(const Function& f);

/// The potential graph at depth d >= 2 with f as edge weights. Exposed for
/// oracles and benchmarks.
struct PotentialGraph {
  struct Edge {
    std::size_t tail = 0;
    std::size_t head = 0;
    Symbol first = 0;  // first symbol of the edge word
    Rational weight;
  };
  std::size_t depth = 0;
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;  // indexed by rank in B_depth
  std::vector<std::vector<std::size_t>> out_edges;
};

PotentialGraph potential_graph(const Function& f, std::size_t depth);

}  // namespace sftlab

#endif  // SFTLAB_COHOMOLOGY_HPP_
