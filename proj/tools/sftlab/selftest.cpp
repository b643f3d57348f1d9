// Embedded lemma suite: the exact identities behind the library, checked on
// seeded random instances. Trial i uses seed + i, so the report does not
// depend on the thread count.

#include <atomic>
#include <thread>

#include "commands.hpp"
#include "sftlab/random.hpp"
#include "sftlab/sftlab.hpp"

namespace sftlab::cli {

namespace {

struct Check {
  const char* name;
  bool (*run)(Rng&);
};

bool coboundaries_vanish(Rng& rng) {
  auto p = random_vertex_presentation(rng, 6, 2);
  const Function b = random_function(rng, p, 3, -5, 5);
  const ZeroDecision z = class_is_zero(coboundary(b));
  if (!z.is_zero || coboundary(*z.witness) != coboundary(b)) return false;
  const ZeroDecision nz = class_is_zero(coboundary(b) + Function::one(p));
  return !nz.is_zero && orbit_sum(coboundary(b) + Function::one(p), *nz.cycle) == nz.cycle_sum && nz.cycle_sum != 0;
}

bool cocycle_conjugacy(Rng& rng) {
  auto p = random_vertex_presentation(rng, 5, 2);
  const Function f = random_function(rng, p, 2, -3, 3);
  const Function b = random_function(rng, p, 3, -5, 5);
  const auto e = equivalent(CircleAction(f), CircleAction(f + coboundary(b)));
  if (!e.equivalent || coboundary(*e.cocycle_exponent) != -coboundary(b)) return false;
  return !equivalent(CircleAction::gauge(p), CircleAction::trivial(p)).equivalent;
}

bool order_structure(Rng& rng) {
  auto p = random_vertex_presentation(rng, 5, 2);
  const CircleAction gauge = CircleAction::gauge(p);
  const auto pos = class_nonnegative(gauge);
  return pos.nonnegative && pos.representative->min_value() >= 0 && order_unit_check(Function::one(p)).order_unit &&
         !class_nonnegative(gauge.inverse()).nonnegative;
}

bool phi_psi_identities(Rng& rng) {
  while (true) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto m = static_cast<std::size_t>(rng.uniform(1, 3));
    const intlat::Matrix C = random_matrix(rng, n, m, 2);
    const intlat::Matrix D = random_matrix(rng, m, n, 2);
    std::optional<ElementaryEquivalence> ee;
    try {
      ee = elementary(C, D);
    } catch (const Error& e) {
      if (e.code() != Errc::InvalidResult) throw;
      continue;
    }
    const Function f = random_function(rng, ee->edge_a, 2, -4, 4);
    const Function g = random_function(rng, ee->edge_b, 2, -4, 4);
    return psi(*ee, phi(*ee, f)) == pullback_sigma(f) && phi(*ee, psi(*ee, g)) == pullback_sigma(g);
  }
}

bool expansion_lemma(Rng& rng) {
  auto p = random_vertex_presentation(rng, 5, 2);
  const Expansion e = expand(p);
  const Function f = random_function(rng, p, 3, -5, 5);
  if (psi_xi(e, psi_eta(e, f)) != f) return false;
  const Function ft = random_function(rng, e.expanded, 3, -5, 5);
  const Function f0 = ft * Function::indicator(e.expanded, {0});
  const Function diff = psi_eta(e, psi_xi(e, ft)) - ft;
  return diff == pullback_sigma(f0) - f0 && class_is_zero(diff).is_zero;
}

bool expansion_invariants(Rng& rng) {
  auto p = random_vertex_presentation(rng, 6, 2);
  const auto v = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(p->vertex_count()) - 1));
  const InvariantReport a = invariants(p);
  const InvariantReport b = invariants(expand(p, v).expanded);
  return a.det == b.det && a.bf_group == b.bf_group;
}

bool transfer_agreement(Rng& rng) {
  auto p = random_vertex_presentation(rng, 4, 2);
  const Expansion e = expand(p);
  const Function ft = random_function(rng, e.expanded, 2, -5, 5);
  const Function f = random_function(rng, p, 2, -5, 5);
  return transfer_psi(e.xi, e.xi_data, ft) == psi_xi(e, ft) && transfer_psi(e.eta, e.eta_data, f) == psi_eta(e, f);
}

const Check kChecks[] = {
    {"coboundaries_vanish", coboundaries_vanish},
    {"cocycle_conjugacy", cocycle_conjugacy},
    {"order_structure", order_structure},
    {"phi_psi_identities", phi_psi_identities},
    {"expansion_inverse_on_classes", expansion_lemma},
    {"expansion_preserves_invariants", expansion_invariants},
    {"transfer_matches_formulas", transfer_agreement},
};
constexpr std::size_t kCheckCount = sizeof(kChecks) / sizeof(kChecks[0]);

}  // namespace

Json selftest(std::uint64_t seed, std::size_t trials, std::size_t threads, bool& passed) {
  // outcome[c * trials + i]: 1 pass, 0 fail, 2 exception.
  std::vector<int> outcome(kCheckCount * trials, 0);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      for (std::size_t c = 0; c < kCheckCount; ++c) {
        Rng rng(seed + i * kCheckCount + c);
        try {
          outcome[c * trials + i] = kChecks[c].run(rng) ? 1 : 0;
        } catch (const std::exception&) {
          outcome[c * trials + i] = 2;
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(threads, std::max<std::size_t>(trials, 1)); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  passed = true;
  Json r;
  r["seed"] = seed;
  r["trials"] = trials;
  Json checks;
  for (std::size_t c = 0; c < kCheckCount; ++c) {
    std::size_t ok = 0;
    std::size_t errors = 0;
    Json failing = Json::array();
    for (std::size_t i = 0; i < trials; ++i) {
      const int v = outcome[c * trials + i];
      if (v == 1) ++ok;
      else failing.push_back(i);
      if (v == 2) ++errors;
    }
    Json entry;
    entry["passed"] = std::to_string(ok) + "/" + std::to_string(trials);
    if (!failing.empty()) {
      entry["failing_trials"] = failing;
      entry["exceptions"] = errors;
      passed = false;
    }
    checks[kChecks[c].name] = entry;
  }
  r["checks"] = checks;
  r["result"] = passed ? "pass" : "FAIL";
  return r;
}

}  // namespace sftlab::cli
