// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.
//
// usage: sftlab_acceptance <sftlab binary> <fixtures dir> <golden dir>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"
#include "oracles.hpp"
#include "sftlab/random.hpp"
#include "sftlab/sftlab.hpp"

using namespace sftlab;
using intlat::Matrix;
using intlat::Verdict;

namespace {

std::string g_cli;
std::string g_fixtures;
std::string g_golden;

// Collects the first few failures of a criterion.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  bool ok() const { return failures_ == 0 && checks_ > 0; }
  std::string summary() const {
    std::ostringstream s;
    s << checks_ - failures_ << "/" << checks_ << " checks";
    if (!notes_.empty()) s << " (" << notes_ << ")";
    return s.str();
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string notes_;
};

std::string str(std::size_t i) { return std::to_string(i); }

bool cycle_certifies(const Function& f, const ZeroDecision& z) {
  if (z.is_zero || !z.cycle) return false;
  const Rational direct = oracle::direct_orbit_sum(f, *z.cycle);
  return f.presentation()->is_cyclically_admissible(*z.cycle) && direct != 0 && direct == z.cycle_sum;
}

ElementaryEquivalence random_elementary(Rng& rng, std::size_t max_dim, long max_entry) {
  while (true) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_dim)));
    const auto m = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_dim)));
    const Matrix C = random_matrix(rng, n, m, max_entry);
    const Matrix D = random_matrix(rng, m, n, max_entry);
    try {
      return elementary(C, D);
    } catch (const Error& e) {
      if (e.code() != Errc::InvalidResult) throw;
    }
  }
}

std::vector<Integer> oracle_torsion(const Matrix& a) {
  std::vector<Integer> out;
  for (const Integer& d : oracle::minor_gcd_factors(Matrix::identity(a.rows()) - a))
    if (abs(d) > 1) out.push_back(abs(d));
  return out;
}

// Runs a shell command and returns its stdout.
std::string capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

std::string cli(const std::string& args, int& status) {
  return capture("cd '" + g_fixtures + "' && '" + g_cli + "' " + args + " 2>&1", status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

// 1. Cohomology decisions on coboundaries and on coboundary + 1.
Tally cohomology_soundness() {
  Tally t;
  Rng rng(testing::test_seed() + 1001);
  for (std::size_t i = 0; i < 200; ++i) {
    auto p = random_vertex_presentation(rng, 6, 1);
    const Function b = random_function(rng, p, 3, -5, 5);
    const Function cb = coboundary(b);
    const ZeroDecision z = class_is_zero(cb);
    t.expect(z.is_zero && z.witness && coboundary(*z.witness) == cb, "coboundary not certified, instance " + str(i));
    const Function shifted = cb + Function::one(p);
    t.expect(cycle_certifies(shifted, class_is_zero(shifted)), "coboundary + 1 not refuted, instance " + str(i));
  }
  return t;
}

// 2. Cocycle conjugacy of circle actions.
Tally cocycle_round_trip() {
  Tally t;
  Rng rng(testing::test_seed() + 1002);
  for (std::size_t i = 0; i < 100; ++i) {
    auto p = random_vertex_presentation(rng, 6, 1);
    const Function f = random_function(rng, p, 3, -5, 5);
    const Function b = random_function(rng, p, 3, -5, 5);
    // rho^{f + db} and rho^f differ by f_alpha - f_beta = db.
    const ActionEquivalence e = equivalent(CircleAction(f + coboundary(b)), CircleAction(f));
    t.expect(e.equivalent && e.cocycle_exponent && coboundary(*e.cocycle_exponent) == coboundary(b),
             "no matching witness, instance " + str(i));
    const ActionEquivalence g = equivalent(CircleAction::gauge(p), CircleAction::trivial(p));
    t.expect(!g.equivalent && g.cycle && g.cycle_sum != 0, "gauge equivalent to identity, instance " + str(i));
  }
  return t;
}

// 3. phi and psi invert each other up to the shift.
Tally phi_psi() {
  const testing::ScopedWordCap cap("50000000");
  Tally t;
  Rng rng(testing::test_seed() + 1003);
  for (std::size_t i = 0; i < 100; ++i) {
    const ElementaryEquivalence ee = random_elementary(rng, 4, 2);
    const Function f = random_function(rng, ee.edge_a, 2, -5, 5);
    const Function g = random_function(rng, ee.edge_b, 2, -5, 5);
    t.expect(psi(ee, phi(ee, f)) == pullback_sigma(f), "psi o phi != f o sigma, instance " + str(i));
    t.expect(phi(ee, psi(ee, g)) == pullback_sigma(g), "phi o psi != g o sigma, instance " + str(i));
  }
  return t;
}

// 4. The expansion transfer maps.
Tally expansion_transfers() {
  Tally t;
  Rng rng(testing::test_seed() + 1004);
  for (std::size_t i = 0; i < 100; ++i) {
    auto p = random_vertex_presentation(rng, 5, 1);
    const Expansion e = expand(p);
    const Function f = random_function(rng, p, 3, -5, 5);
    t.expect(psi_xi(e, psi_eta(e, f)) == f, "Psi_xi Psi_eta f != f, instance " + str(i));
    const Function ft = random_function(rng, e.expanded, 3, -5, 5);
    const Function f0 = ft * Function::indicator(e.expanded, {0});
    const Function diff = psi_eta(e, psi_xi(e, ft)) - ft;
    t.expect(diff == pullback_sigma(f0) - f0, "difference is not f0 o sigma - f0, instance " + str(i));
    t.expect(class_is_zero(diff).is_zero, "difference not a coboundary, instance " + str(i));
  }
  return t;
}

// 5. det(I - A) and Bowen-Franks factors survive expansion.
Tally parry_sullivan() {
  Tally t;
  Rng rng(testing::test_seed() + 1005);
  for (std::size_t i = 0; i < 100; ++i) {
    auto p = random_vertex_presentation(rng, 6, 1);
    const auto v = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(p->vertex_count()) - 1));
    const Expansion e = expand(p, v);
    const Matrix& a = p->adjacency();
    const Matrix& ax = e.expanded->adjacency();
    const InvariantReport ra = invariants(p);
    const InvariantReport rx = invariants(e.expanded);
    t.expect(ra.det == rx.det && ra.bf_group == rx.bf_group, "library invariants differ, instance " + str(i));
    t.expect(oracle::cofactor_det(Matrix::identity(a.rows()) - a) == oracle::cofactor_det(Matrix::identity(ax.rows()) - ax),
             "oracle determinants differ, instance " + str(i));
    t.expect(oracle_torsion(a) == oracle_torsion(ax), "oracle invariant factors differ, instance " + str(i));
  }
  return t;
}

// 6. Transducer-level transfer maps agree with the closed formulas.
Tally transducer_agreement() {
  Tally t;
  Rng rng(testing::test_seed() + 1006);
  for (std::size_t i = 0; i < 40; ++i) {
    auto p = i == 0 ? testing::fibonacci() : random_vertex_presentation(rng, 4, 1);
    const Expansion e = expand(p);
    const Function ft = random_function(rng, e.expanded, 3, -5, 5);
    const Function f = random_function(rng, p, 3, -5, 5);
    t.expect(transfer_psi(e.xi, e.xi_data, ft) == psi_xi(e, ft), "transfer_psi(xi) differs, instance " + str(i));
    t.expect(transfer_psi(e.eta, e.eta_data, f) == psi_eta(e, f), "transfer_psi(eta) differs, instance " + str(i));
    t.expect(verify_orbit_relation(e.xi, e.xi_data).holds, "xi orbit relation fails, instance " + str(i));
    t.expect(verify_orbit_relation(e.eta, e.eta_data).holds, "eta orbit relation fails, instance " + str(i));
    t.expect(equivalent_maps(compose(e.eta, e.xi), Transducer::identity(p), 4).verdict == MapEquivalence::Verdict::equal,
             "eta o xi not the identity within delay 4, instance " + str(i));
  }
  return t;
}

// 7. Classification fixtures, expansion invariance and the SNF oracle.
Tally classification() {
  Tally t;
  auto fib = testing::fibonacci();
  auto two = testing::full_shift(2);
  auto three = testing::full_shift(3);
  t.expect(flow_equivalent(fib, two).equivalent, "fib / full2 not flow equivalent");
  t.expect(coe_verdict(fib, two).verdict == Verdict::yes, "fib / full2 coe not yes");
  t.expect(!flow_equivalent(two, three).equivalent, "full2 / full3 flow equivalent");
  t.expect(coe_verdict(two, three).verdict == Verdict::no, "full2 / full3 coe not no");
  t.expect(invariants(two).bf_group.is_trivial() && invariants(three).bf_group.to_string() == "Z/2",
           "BF groups of full shifts");

  Rng rng(testing::test_seed() + 1007);
  for (std::size_t i = 0; i < 50; ++i) {
    auto p = random_vertex_presentation(rng, 6, 1);
    const auto v = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(p->vertex_count()) - 1));
    t.expect(flow_equivalent(p, expand(p, v).expanded).equivalent, "A vs expand(A) not flow equivalent, instance " + str(i));
  }
  for (std::size_t i = 0; i < 100; ++i) {
    auto p = rng.coin(1, 2) ? random_vertex_presentation(rng, 4, 1) : random_edge_presentation(rng, 4, 3);
    const Matrix& a = p->adjacency();
    const InvariantReport r = invariants(p);
    const auto factors = oracle::minor_gcd_factors(Matrix::identity(a.rows()) - a);
    t.expect(r.bf_group.torsion == oracle_torsion(a) && r.bf_group.free_rank == a.rows() - factors.size(),
             "SNF disagrees with minor-gcd oracle, instance " + str(i));
    t.expect(r.det == oracle::cofactor_det(Matrix::identity(a.rows()) - a), "det disagrees with cofactor oracle, instance " + str(i));
  }

  // The printed reports carry the invariants behind each verdict.
  int status = 0;
  const std::string fe = cli("flow-equiv fib.mat full2.mat", status);
  t.expect(status == 0 && contains(fe, "flow-equivalent: yes") && contains(fe, "fib:") && contains(fe, "full2:") &&
               contains(fe, "bowen_franks:") && contains(fe, "det(I-A): -1"),
           "flow-equiv report incomplete");
  const std::string coe_yes = cli("coe fib.mat full2.mat", status);
  t.expect(status == 0 && contains(coe_yes, "coe: yes") && contains(coe_yes, "pointed_k0:") && contains(coe_yes, "det_sign"),
           "coe yes report incomplete");
  const std::string coe_no = cli("coe full2.mat full3.mat", status);
  t.expect(status == 0 && contains(coe_no, "coe: no") && contains(coe_no, "Z/2"), "coe no report incomplete");
  const std::string fe_no = cli("flow-equiv full2.mat full3.mat", status);
  t.expect(status == 0 && contains(fe_no, "flow-equivalent: no") && contains(fe_no, "bowen_franks_equal: no"),
           "flow-equiv no report incomplete");
  return t;
}

// 8. Order structure of the cohomology group.
Tally order_structure() {
  Tally t;
  Rng rng(testing::test_seed() + 1008);
  for (std::size_t i = 0; i < 100; ++i) {
    auto p = random_vertex_presentation(rng, 6, 1);
    const CircleAction gauge = CircleAction::gauge(p);
    const NonnegativeDecision pos = class_nonnegative(gauge);
    t.expect(pos.nonnegative && pos.representative && pos.representative->min_value() >= 0 &&
                 class_equal(*pos.representative, gauge.classifier()).is_zero,
             "gauge not certified nonnegative, instance " + str(i));
    t.expect(order_unit_check(Function::one(p)).order_unit, "1_A not an order unit, instance " + str(i));
    const NonnegativeDecision neg = class_nonnegative(gauge.inverse());
    t.expect(!neg.nonnegative && neg.cycle && neg.cycle_sum < 0, "inverse gauge nonnegative, instance " + str(i));

    const Function f = random_function(rng, p, 2, -3, 5);
    const NonnegativeDecision d = class_is_nonnegative(f);
    if (d.nonnegative) {
      t.expect(d.representative->min_value() >= 0 && class_equal(*d.representative, f).is_zero,
               "representative invalid, instance " + str(i));
    } else {
      t.expect(d.cycle && oracle::direct_orbit_sum(f, *d.cycle) < 0, "negative cycle invalid, instance " + str(i));
    }
  }
  return t;
}

// 9. Eventual and strong orbit equivalence detectors.
Tally coe_detectors() {
  Tally t;
  auto fib = testing::fibonacci();
  for (std::size_t k = 1; k <= 3; ++k) {
    const BlockConjugacy bc = block_conjugacy(fib, k);
    t.expect(is_eventual_conjugacy(bc.forward, bc.forward_data, bc.inverse, bc.inverse_data),
             "block conjugacy k=" + str(k) + " not eventual");
    t.expect(is_strong_coe(bc.forward, bc.forward_data).strong, "block conjugacy k=" + str(k) + " not strong");
  }
  Rng rng(testing::test_seed() + 1009);
  for (std::size_t i = 0; i < 10; ++i) {
    auto p = random_edge_presentation(rng, 3, 1);
    const BlockConjugacy bc = block_conjugacy(p, static_cast<std::size_t>(rng.uniform(1, 2)));
    t.expect(is_eventual_conjugacy(bc.forward, bc.forward_data, bc.inverse, bc.inverse_data),
             "random block conjugacy not eventual, instance " + str(i));
  }
  const Expansion e = expand(fib);
  t.expect(!is_eventual_conjugacy(e.xi, e.xi_data, e.eta, e.eta_data), "xi is an eventual conjugacy");
  const StrongCoe s = is_strong_coe(e.xi, e.xi_data);
  t.expect(!s.strong, "xi is a strong COE");
  // At the fixed point 1^inf, Psi_xi(1) sums to 2 and 1_A to 1.
  t.expect(orbit_sum(s.image_of_one, {0}) == 2, "Psi_xi(1) orbit sum at 1^inf is not 2");
  t.expect(orbit_sum(Function::one(fib), {0}) == 1, "1_A orbit sum at 1^inf is not 1");
  t.expect(s.cycle && s.cycle_sum != 0, "no separating cycle for Psi_xi(1) - 1");
  return t;
}

// 10. Byte-identical CLI reports across runs and thread counts.
Tally cli_determinism() {
  Tally t;
  const std::string text = slurp(g_golden + "/golden.txt");
  const std::string json = slurp(g_golden + "/golden.json");
  t.expect(!text.empty() && !json.empty(), "golden files missing");
  for (const std::string threads : {"1", "1", "4"}) {
    int status = 0;
    const std::string out = capture("cd '" + g_fixtures + "' && '" + g_cli + "' --threads " + threads + " batch golden.batch", status);
    t.expect(out == text, "text report differs with --threads " + threads);
    const std::string jout =
        capture("cd '" + g_fixtures + "' && '" + g_cli + "' --threads " + threads + " --json batch golden.batch", status);
    t.expect(jout == json, "json report differs with --threads " + threads);
  }
  return t;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Tally()> run;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: " << argv[0] << " <sftlab binary> <fixtures dir> <golden dir>\n";
    return 2;
  }
  g_cli = std::filesystem::absolute(argv[1]).string();
  g_fixtures = std::filesystem::absolute(argv[2]).string();
  g_golden = std::filesystem::absolute(argv[3]).string();

  const std::vector<Criterion> criteria = {
      {1, "cohomology decision soundness", cohomology_soundness},
      {2, "cocycle conjugacy round trip", cocycle_round_trip},
      {3, "phi/psi identities", phi_psi},
      {4, "expansion transfer identities", expansion_transfers},
      {5, "Parry-Sullivan invariance", parry_sullivan},
      {6, "transducer/formula agreement", transducer_agreement},
      {7, "classification fixtures", classification},
      {8, "order structure", order_structure},
      {9, "eventual/strong COE detectors", coe_detectors},
      {10, "CLI determinism", cli_determinism},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Tally t;
    std::string detail;
    try {
      t = c.run();
      detail = t.summary();
    } catch (const std::exception& e) {
      t.expect(false, std::string("exception: ") + e.what());
      detail = t.summary();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && t.ok();
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs;
    std::cout << (t.ok() ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << detail << " [" << time.str() << "s]"
              << std::endl;
  }
  return all ? 0 : 1;
}
