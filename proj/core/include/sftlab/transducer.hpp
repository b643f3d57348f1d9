#ifndef SFTLAB_TRANSDUCER_HPP_
#define SFTLAB_TRANSDUCER_HPP_

// Deterministic finite-state transducers presenting continuous maps between
// one-sided shift spaces, the transfer map Psi_h, and machine checks of the
// orbit relations sigma^{k1(x)} h(sigma x) = sigma^{l1(x)} h(x).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sftlab/cohomology.hpp"
#include "sftlab/function.hpp"
#include "sftlab/sft.hpp"

namespace sftlab {

using State = std::uint32_t;

struct Transition {
  State next = 0;
  Word output;
  bool operator==(const Transition&) const = default;
};

/// Reads domain symbols, writes codomain words. Construction checks that the
/// machine is defined on every admissible continuation, that every reachable
/// cycle emits output, and that every output stream is admissible.
class Transducer {
 public:
  /// table[q * |domain symbols| + a] is the transition on symbol a in state q.
  Transducer(PresentationPtr domain, PresentationPtr codomain, std::size_t states, State initial,
             std::vector<std::optional<Transition>> table);

  static Transducer identity(const PresentationPtr& p);
  /// Single-state machine sending symbol a to images[a].
  static Transducer substitution(const PresentationPtr& domain, const PresentationPtr& codomain,
                                 const std::vector<Word>& images);

  const PresentationPtr& domain() const { return domain_; }
  const PresentationPtr& codomain() const { return codomain_; }
  std::size_t state_count() const { return states_; }
  State initial() const { return initial_; }
  const std::optional<Transition>& transition(State q, Symbol a) const {
    return table_[q * domain_->symbol_count() + a];
  }
  std::size_t max_output_length() const;

  struct Run {
    State state = 0;
    Word output;
  };
  /// Feeds an admissible input word from state `from`.
  Run run(const Word& input, std::optional<State> from = std::nullopt) const;

 private:
  void check_invariants() const;

  PresentationPtr domain_;
  PresentationPtr codomain_;
  std::size_t states_;
  State initial_;
  std::vector<std::optional<Transition>> table_;
};

/// Exact image of an eventually periodic point. Throws Starvation or
/// InadmissibleOutput.
Point apply(const Transducer& t, const Point& x);

/// x -> second(first(x)). Throws DomainMismatch.
Transducer compose(const Transducer& second, const Transducer& first);

struct MapEquivalence {
  enum class Verdict { equal, unequal, inconclusive };
  Verdict verdict = Verdict::inconclusive;
  /// Input word after which the two outputs diverge (unequal only).
  Word counterexample;
  /// An eventually periodic point extending the counterexample.
  std::optional<Point> point;
  std::size_t configurations = 0;
  std::size_t delay_bound = 0;
};

std::string_view verdict_name(MapEquivalence::Verdict v);
std::size_t default_delay_bound(const Transducer& a, const Transducer& b);

MapEquivalence equivalent_maps(const Transducer& a, const Transducer& b,
                               std::optional<std::size_t> delay_bound = std::nullopt);

/// x -> sigma^{drop(x)}(h(sigma^{skip} x)), drop a nonnegative integer function
/// on the domain of h.
Transducer shifted_map(const Transducer& h, bool skip_first, const Function& drop);

/// The exponents in sigma_B^{k1(x)}(h(sigma_A x)) = sigma_B^{l1(x)}(h(x)).
struct OrbitData {
  Function k;
  Function l;
};

struct OrbitCheckOptions {
  std::size_t max_data_depth = 8;
  std::optional<std::size_t> delay_bound;
  std::size_t max_preperiod = 4;
  std::size_t max_period = 6;
  std::size_t max_points = 4000;
};

struct OrbitCheck {
  bool holds = false;
  MapEquivalence machine;
  std::size_t points_checked = 0;
  /// A point where the relation fails (from the machine witness or the point sweep).
  std::optional<Point> counterexample;
};

/// Throws InsufficientLookahead when the machine comparison is inconclusive
/// and no point disproves the relation.
OrbitCheck verify_orbit_relation(const Transducer& h, const OrbitData& data, const OrbitCheckOptions& options = {});

/// Psi_h(f)(x) = sum_{i<l1(x)} f(sigma^i h(x)) - sum_{j<k1(x)} f(sigma^j h(sigma x)).
Function transfer_psi(const Transducer& h, const OrbitData& data, const Function& f);

/// Psi_h(1) == 1 and Psi_{h^-1}(1) == 1, i.e. l = k + 1 on both sides.
bool is_eventual_conjugacy(const Transducer& h, const OrbitData& data, const Transducer& inverse,
                           const OrbitData& inverse_data);

struct StrongCoe {
  bool strong = false;
  Function image_of_one;          // Psi_h(1_B)
  std::optional<Function> witness;  // Psi_h(1_B) - 1_A = b - b o sigma
  std::optional<Word> cycle;
  Rational cycle_sum = 0;
};

/// [Psi_h(1_B)] == [1_A] in H^A.
StrongCoe is_strong_coe(const Transducer& h, const OrbitData& data);

/// Conjugacy x -> (x_1..x_{k+1}, x_2..x_{k+2}, ...) onto the higher block
/// presentation, its inverse, and the conjugacy data k = 0, l = 1 on both sides.
struct BlockConjugacy {
  HigherBlock block;
  Transducer forward;
  Transducer inverse;
  OrbitData forward_data;
  OrbitData inverse_data;
};

BlockConjugacy block_conjugacy(const PresentationPtr& p, std::size_t k);

}  // namespace sftlab

#endif  // SFTLAB_TRANSDUCER_HPP_
