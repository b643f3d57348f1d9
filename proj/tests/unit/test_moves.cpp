#include <doctest.h>

#include <set>

#include "common.hpp"
#include "oracles.hpp"
#include "sftlab/classify.hpp"
#include "sftlab/error.hpp"
#include "sftlab/moves.hpp"
#include "sftlab/random.hpp"

using namespace sftlab;
using intlat::Matrix;
using testing::fibonacci;

namespace {

// Random (C, D) whose products are valid presentations.
ElementaryEquivalence random_elementary(Rng& rng, std::size_t max_dim, long max_entry,
                                        PairingOrder order = PairingOrder::lexicographic) {
  while (true) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_dim)));
    const auto m = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_dim)));
    const Matrix C = random_matrix(rng, n, m, max_entry);
    const Matrix D = random_matrix(rng, m, n, max_entry);
    try {
      return elementary(C, D, order);
    } catch (const Error& e) {
      if (e.code() != Errc::InvalidResult) throw;
    }
  }
}

}  // namespace

TEST_CASE("expansion of the Fibonacci matrix") {
  const Expansion e = expand(fibonacci());
  CHECK(intlat::to_inline_string(e.matrix) == "0 1 1 / 1 0 0 / 0 1 0");
  CHECK((Matrix::identity(3) - e.matrix).determinant() == -1);
  CHECK((Matrix::identity(2) - fibonacci()->adjacency()).determinant() == -1);
  CHECK(e.matrix(0, 0) == 0);
  CHECK(e.expanded->label(0) == "0");
  CHECK(e.expanded->label(1) == "1");
  CHECK_THROWS_AS(expand(testing::full_shift(2, PresentationKind::edge)), Error);
  CHECK_THROWS_AS(expand(fibonacci(), 2), Error);
}

TEST_CASE("expansion at other vertices matches relabelling") {
  Rng rng(testing::test_seed() + 50);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = random_vertex_presentation(rng, 5, 2);
    const std::size_t n = p->vertex_count();
    const auto v = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    const Expansion e = expand(p, v);
    // Swap v with 0, expand at 0, swap back: same matrix.
    Matrix swapped = p->adjacency();
    swapped.swap_rows(0, v);
    swapped.swap_cols(0, v);
    const Expansion e0 = expand(Presentation::validate(swapped, PresentationKind::vertex), 0);
    Matrix back = e0.matrix;
    back.swap_rows(1, v + 1);
    back.swap_cols(1, v + 1);
    CHECK(back == e.matrix);
    // A fresh label is chosen when "0" is taken.
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    const Expansion relabelled = expand(Presentation::validate(p->adjacency(), PresentationKind::vertex, labels), v);
    CHECK(relabelled.expanded->label(0) == "0'");
  }
}

TEST_CASE("Psi_xi and Psi_eta examples") {
  auto fib = fibonacci();
  const Expansion e = expand(fib);
  CHECK(psi_xi(e, Function::one(e.expanded)) == Function::one(fib) + Function::indicator(fib, {0}));
  CHECK(psi_eta(e, Function::one(fib)) == Function::one(e.expanded) - Function::indicator(e.expanded, {0}));
  CHECK_THROWS_AS(psi_xi(e, Function::one(fib)), Error);
}

TEST_CASE("Psi_xi and Psi_eta are mutually inverse on classes") {
  Rng rng(testing::test_seed() + 51);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = random_vertex_presentation(rng, 5, 2);
    const Expansion e = expand(p, static_cast<std::size_t>(rng.uniform(0, static_cast<long>(p->vertex_count()) - 1)));
    const Function f = random_function(rng, p, 3, -5, 5);
    CHECK(psi_xi(e, psi_eta(e, f)) == f);
    const Function ft = random_function(rng, e.expanded, 3, -5, 5);
    const Function f0 = ft * Function::indicator(e.expanded, {0});
    const Function diff = psi_eta(e, psi_xi(e, ft)) - ft;
    CHECK(diff == pullback_sigma(f0) - f0);
    CHECK(class_is_zero(diff).is_zero);
    // The formulas agree with the generic transfer map.
    CHECK(transfer_psi(e.xi, e.xi_data, ft) == psi_xi(e, ft));
    CHECK(transfer_psi(e.eta, e.eta_data, f) == psi_eta(e, f));
  }
}

TEST_CASE("expansion preserves Bowen-Franks data") {
  Rng rng(testing::test_seed() + 52);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = random_vertex_presentation(rng, 6, 2);
    const Expansion e = expand(p, static_cast<std::size_t>(rng.uniform(0, static_cast<long>(p->vertex_count()) - 1)));
    const InvariantReport a = invariants(p);
    const InvariantReport b = invariants(e.expanded);
    CHECK(a.det == b.det);
    CHECK(a.bf_group == b.bf_group);
  }
}

TEST_CASE("elementary equivalence examples") {
  const ElementaryEquivalence ee = elementary(Matrix::from_rows({{1, 1}}), Matrix::from_rows({{1}, {1}}));
  CHECK(ee.A == Matrix::from_rows({{2}}));
  CHECK(ee.B == Matrix::from_rows({{1, 1}, {1, 1}}));
  CHECK(ee.Z.rows() == 3);
  CHECK(ee.Z * ee.Z == Matrix::from_rows({{2, 0, 0}, {0, 1, 1}, {0, 1, 1}}));
  CHECK(ee.edge_a->symbol_count() == 2);
  CHECK(ee.edge_b->symbol_count() == 4);

  const Matrix fib = fibonacci()->adjacency();
  const ElementaryEquivalence same = elementary(Matrix::identity(2), fib);
  CHECK(same.A == fib);
  CHECK(same.B == fib);
  try {
    elementary(Matrix::from_rows({{1, 0}}), Matrix::from_rows({{1}, {0}}));
    FAIL("expected InvalidResult");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidResult);
  }
  CHECK_THROWS_AS(elementary(Matrix::from_rows({{1, 1}}), Matrix::from_rows({{1, 1}})), Error);
}

TEST_CASE("edge bijections respect sources and targets") {
  Rng rng(testing::test_seed() + 53);
  for (int trial = 0; trial < 40; ++trial) {
    const auto ee = random_elementary(rng, 3, 2, rng.coin(1, 2) ? PairingOrder::lexicographic : PairingOrder::reverse);
    std::set<std::pair<std::size_t, std::size_t>> used;
    for (std::size_t e = 0; e < ee.a_pairs.size(); ++e) {
      const auto [c, d] = ee.a_pairs[e];
      CHECK(ee.c_edges[c].source == ee.edge_a->edges()[e].source);
      CHECK(ee.c_edges[c].target == ee.d_edges[d].source);
      CHECK(ee.d_edges[d].target == ee.edge_a->edges()[e].target);
      used.insert({c, d});
    }
    CHECK(used.size() == ee.a_pairs.size());
    for (std::size_t e = 0; e < ee.b_pairs.size(); ++e) {
      const auto [d, c] = ee.b_pairs[e];
      CHECK(ee.d_edges[d].source == ee.edge_b->edges()[e].source);
      CHECK(ee.d_edges[d].target == ee.c_edges[c].source);
      CHECK(ee.c_edges[c].target == ee.edge_b->edges()[e].target);
    }
  }
}

TEST_CASE("phi and psi identities") {
  const testing::ScopedWordCap cap("50000000");
  Rng rng(testing::test_seed() + 54);
  for (int trial = 0; trial < 60; ++trial) {
    const auto ee = random_elementary(rng, 4, 2);
    const Function f = random_function(rng, ee.edge_a, 2, -4, 4);
    const Function g = random_function(rng, ee.edge_b, 2, -4, 4);
    CHECK(psi(ee, phi(ee, f)) == pullback_sigma(f));
    CHECK(phi(ee, psi(ee, g)) == pullback_sigma(g));
    CHECK(phi(ee, Function::zero(ee.edge_a)).is_zero());
    CHECK(phi(ee, f + f) == phi(ee, f) + phi(ee, f));
    CHECK(phi(ee, f).depth() <= f.depth() + 1);
    CHECK(class_equal(psi(ee, phi(ee, f)), f).is_zero);
  }
}

TEST_CASE("pairing choice changes phi only by an automorphism") {
  // On [2] = [1 1][1 1]^T the two orders swap the parallel edges, which is a
  // symbol flip: the images of an edge indicator are not cohomologous.
  const Matrix C = Matrix::from_rows({{1, 1}});
  const Matrix D = Matrix::from_rows({{1}, {1}});
  const auto lex0 = elementary(C, D, PairingOrder::lexicographic);
  const auto rev0 = elementary(C, D, PairingOrder::reverse);
  const Function e0 = Function::indicator(lex0.edge_a, {0});
  CHECK_FALSE(class_equal(phi(lex0, e0), phi(rev0, e0)).is_zero);

  Rng rng(testing::test_seed() + 55);
  for (int trial = 0; trial < 30; ++trial) {
    Rng fork(static_cast<std::uint64_t>(rng.uniform(0, 1L << 40)));
    Rng fork2 = fork;
    const auto lex = random_elementary(fork, 3, 2, PairingOrder::lexicographic);
    const auto rev = random_elementary(fork2, 3, 2, PairingOrder::reverse);
    REQUIRE(lex.A == rev.A);
    const Function f = random_function(rng, lex.edge_a, 2, -3, 3);
    // Orbit sums are permuted, so their totals over each period agree.
    const Function a = phi(lex, f);
    const Function b = phi(rev, f);
    for (std::size_t n = 1; n <= 4; ++n) {
      Rational ta = 0;
      Rational tb = 0;
      for (const Word& w : words(lex.edge_b, n)) {
        if (!lex.edge_b->is_cyclically_admissible(w)) continue;
        ta += orbit_sum(a, w);
        tb += orbit_sum(b, w);
      }
      CHECK(ta == tb);
    }
  }
}

TEST_CASE("elementary equivalence preserves Bowen-Franks data") {
  Rng rng(testing::test_seed() + 56);
  for (int trial = 0; trial < 40; ++trial) {
    const auto ee = random_elementary(rng, 4, 2);
    const InvariantReport a = invariants(ee.edge_a);
    const InvariantReport b = invariants(ee.edge_b);
    CHECK(a.bf_group == b.bf_group);
    CHECK(a.det_sign == b.det_sign);
  }
}

TEST_CASE("bounded strong shift equivalence search") {
  const Matrix two = Matrix::from_rows({{2}});
  const Matrix full2 = Matrix::from_rows({{1, 1}, {1, 1}});
  const auto self = sse_search(two, two);
  CHECK(self.found);
  CHECK(self.chain.empty());
  const auto one_step = sse_search(two, full2);
  REQUIRE(one_step.found);
  REQUIRE(one_step.chain.size() == 1);
  CHECK(one_step.chain[0].A == two);
  CHECK(one_step.chain[0].B == full2);
  const auto none = sse_search(fibonacci()->adjacency(), full2, {.inner_dim_bound = 2, .entry_bound = 2, .chain_bound = 2});
  CHECK_FALSE(none.found);
  // Different spectral radius, so never equivalent: the bounds confirm it.
  const auto ra = invariants(fibonacci());
  const auto rb = invariants(Presentation::validate(full2, PresentationKind::edge));
  CHECK(ra.radius_upper < rb.radius_lower);
}
