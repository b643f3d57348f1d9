#ifndef SFTLAB_ACTIONS_HPP_
#define SFTLAB_ACTIONS_HPP_

// Circle actions on O_A fixing D_A, each represented by its classifying
// function f in C(X_A, Z): the action scales S_i by exp(2 pi i t f). The group
// law is addition of classifiers, cocycle conjugacy is equality in H^A, and
// the order is the positive cone of H^A.

#include <optional>

#include "sftlab/cohomology.hpp"
#include "sftlab/function.hpp"

namespace sftlab {

class CircleAction {
 public:
  explicit CircleAction(Function classifier);

  static CircleAction gauge(PresentationPtr p);
  static CircleAction trivial(PresentationPtr p);

  const Function& classifier() const { return classifier_; }
  const PresentationPtr& presentation() const { return classifier_.presentation(); }

  CircleAction inverse() const;
  bool operator==(const CircleAction&) const = default;

 private:
  Function classifier_;
};

/// (alpha . beta)_t = alpha_t o beta_t, classifier f + g.
CircleAction compose(const CircleAction& alpha, const CircleAction& beta);

struct ActionEquivalence {
  bool equivalent = false;
  /// alpha = Ad(u_t) o beta with u_t = exp(2 pi i t b); f_alpha - f_beta = b - b o sigma.
  std::optional<Function> cocycle_exponent;
  std::optional<Word> cycle;  // separating periodic orbit otherwise
  Rational cycle_sum = 0;
};

ActionEquivalence equivalent(const CircleAction& alpha, const CircleAction& beta);

/// alpha >= 0 in the ordered group.
NonnegativeDecision class_nonnegative(const CircleAction& alpha);

/// On S_mu the action multiplies by U_t(f^{|mu|}) (restricted to U_mu's follower set).
struct PhaseExponent {
  Word word;
  Function exponent;  // partial_sum(classifier, |word|)
};

PhaseExponent phase_on_word(const CircleAction& alpha, const Word& mu);

/// t * f^{|mu|}(mu . x) reduced to [0, 1). Throws Inadmissible unless mu.x is admissible.
Rational evaluate_phase(const CircleAction& alpha, const Word& mu, const Rational& t, const Point& x);

}  // namespace sftlab

#endif  // SFTLAB_ACTIONS_HPP_
