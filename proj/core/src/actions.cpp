#include "sftlab/actions.hpp"

#include "sftlab/error.hpp"

namespace sftlab {

CircleAction::CircleAction(Function classifier) : classifier_(std::move(classifier)) {
  if (classifier_.ring() != Ring::integers)
    throw Error(Errc::RationalNotSupported, "circle actions need integer-valued classifiers");
}

CircleAction CircleAction::gauge(PresentationPtr p) { return CircleAction(Function::one(std::move(p))); }

CircleAction CircleAction::trivial(PresentationPtr p) { return CircleAction(Function::zero(std::move(p))); }

CircleAction CircleAction::inverse() const { return CircleAction(-classifier_); }

CircleAction compose(const CircleAction& alpha, const CircleAction& beta) {
  require_same(alpha.presentation(), beta.presentation(), "compose");
  return CircleAction(alpha.classifier() + beta.classifier());
}

ActionEquivalence equivalent(const CircleAction& alpha, const CircleAction& beta) {
  require_same(alpha.presentation(), beta.presentation(), "equivalent");
  ZeroDecision z = class_equal(alpha.classifier(), beta.classifier());
  ActionEquivalence out;
  out.equivalent = z.is_zero;
  out.cocycle_exponent = std::move(z.witness);
  out.cycle = std::move(z.cycle);
  out.cycle_sum = z.cycle_sum;
  return out;
}

NonnegativeDecision class_nonnegative(const CircleAction& alpha) { return class_is_nonnegative(alpha.classifier()); }

PhaseExponent phase_on_word(const CircleAction& alpha, const Word& mu) {
  if (mu.empty() || !alpha.presentation()->is_admissible(mu))
    throw Error(Errc::Inadmissible, "phase_on_word needs a nonempty admissible word");
  return PhaseExponent{mu, partial_sum(alpha.classifier(), mu.size())};
}

Rational evaluate_phase(const CircleAction& alpha, const Word& mu, const Rational& t, const Point& x) {
  const PresentationPtr& p = alpha.presentation();
  if (mu.empty() || !p->is_admissible(mu)) throw Error(Errc::Inadmissible, "mu is not admissible");
  if (!p->follows(mu.back(), x.at(0)))
    throw Error(Errc::Inadmissible, "x is not in the follower set of " + p->format_word(mu));
  const Point mux = x.prepended(p, mu);
  const Rational exponent = partial_sum(alpha.classifier(), mu.size()).at(mux);
  Rational phase = t * exponent;
  // Reduce into [0, 1).
  mpz_class floor;
  mpz_fdiv_q(floor.get_mpz_t(), phase.get_num_mpz_t(), phase.get_den_mpz_t());
  phase -= floor;
  return phase;
}

}  // namespace sftlab
