#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sftlab/sftlab.hpp"
#include "workspace.hpp"

namespace sftlab::cli {

namespace {

struct Args {
  std::string a, b, c, d;
  std::size_t length = 1;
  std::size_t vertex = 1;
  bool reverse = false;
  std::string witness, kfile, lfile;
  std::size_t delay = 0;
  std::string word, t, point;
  std::size_t trials = 20;
  std::size_t inner_dim = 3;
  long entry_bound = 2;
  std::size_t chain_bound = 2;
  std::size_t node_cap = 20000;
};

struct Globals {
  bool json = false;
  std::uint64_t seed = 20240611;
  std::size_t threads = 1;
  std::vector<std::string> bindings;
};

// Raised when a report itself must fail the run with exit code 1.
struct Tripwire {
  Json report;
};

std::string word_text(const PresentationPtr& p, const Word& w) { return p->format_word(w); }

Json zero_json(const ZeroDecision& z, const PresentationPtr& p, const std::string& id) {
  Json j;
  j["cohomologous"] = z.is_zero;
  if (z.is_zero) {
    j["witness"] = function_json(*z.witness, id);
  } else {
    j["cycle"] = word_text(p, *z.cycle);
    j["cycle_sum"] = str(z.cycle_sum);
  }
  return j;
}

Json nonnegative_json(const NonnegativeDecision& d, const PresentationPtr& p, const std::string& id) {
  Json j;
  j["nonnegative"] = d.nonnegative;
  if (d.nonnegative) {
    j["representative"] = function_json(*d.representative, id);
    j["transfer"] = function_json(*d.transfer, id);
  } else {
    j["cycle"] = word_text(p, *d.cycle);
    j["cycle_sum"] = str(d.cycle_sum);
  }
  return j;
}

Json invariants_json(const InvariantReport& r, const PresentationPtr& p) {
  Json j;
  j["matrix"] = matrix_rows(p->adjacency());
  const intlat::Matrix ia = intlat::Matrix::identity(p->vertex_count()) - p->adjacency();
  j["smith_diagonal(I-A)"] = integers(intlat::smith(ia).diagonal());
  j["bowen_franks"] = group_json(r.bf_group);
  Json k0;
  k0["group"] = r.k0_pointed.group.to_string();
  k0["class_of_unit"] = integers(r.k0_pointed.marked);
  j["k0"] = k0;
  j["det(I-A)"] = str(r.det);
  j["det_sign"] = r.det_sign;
  Json rad;
  rad["lower"] = str(r.radius_lower);
  rad["upper"] = str(r.radius_upper);
  j["spectral_radius"] = rad;
  return j;
}

Json point_json(const PresentationPtr& p, const std::optional<Point>& x) {
  return x ? Json(x->to_string(*p)) : Json(nullptr);
}

Json map_equivalence_json(const MapEquivalence& m, const PresentationPtr& domain) {
  Json j;
  j["verdict"] = std::string(verdict_name(m.verdict));
  j["delay_bound"] = m.delay_bound;
  j["configurations"] = m.configurations;
  if (m.verdict == MapEquivalence::Verdict::unequal) {
    j["counterexample"] = word_text(domain, m.counterexample);
    j["point"] = point_json(domain, m.point);
  }
  return j;
}

Json orbit_check_json(const OrbitCheck& c, const PresentationPtr& domain) {
  Json j;
  j["holds"] = c.holds;
  j["machine"] = map_equivalence_json(c.machine, domain);
  j["points_checked"] = c.points_checked;
  if (c.counterexample) j["counterexample"] = c.counterexample->to_string(*domain);
  return j;
}

Json edge_json(const std::vector<EdgeInfo>& edges) {
  Json out = Json::array();
  for (std::size_t e = 0; e < edges.size(); ++e)
    out.push_back(std::to_string(e + 1) + ": " + std::to_string(edges[e].source + 1) + " -> " +
                  std::to_string(edges[e].target + 1));
  return out;
}

Json pairs_json(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Json out = Json::array();
  for (std::size_t e = 0; e < pairs.size(); ++e)
    out.push_back(std::to_string(e + 1) + " = " + std::to_string(pairs[e].first + 1) + " " +
                  std::to_string(pairs[e].second + 1));
  return out;
}

OrbitData orbit_data(Workspace& ws, const Args& a, const PresentationPtr& domain) {
  if (a.kfile.empty() || a.lfile.empty()) throw Error(Errc::Parse, "orbit data needs both --k and --l");
  auto k = ws.function_file(a.kfile);
  auto l = ws.function_file(a.lfile);
  require_same(domain, k.function.presentation(), "--k");
  require_same(domain, l.function.presentation(), "--l");
  return {std::move(k.function), std::move(l.function)};
}

// ---------------------------------------------------------------------------

Json cmd_validate(Workspace& ws, const Args& a) {
  const std::string id = ws.matrix_arg(a.a);
  const PresentationPtr p = ws.presentation(id);
  Json r;
  r["id"] = id;
  r["kind"] = std::string(kind_name(p->kind()));
  r["vertices"] = p->vertex_count();
  r["symbols"] = p->symbol_count();
  r["matrix"] = matrix_rows(p->adjacency());
  Json tree;
  Json out_tree = Json::array();
  Json in_tree = Json::array();
  for (std::size_t v = 1; v < p->vertex_count(); ++v) {
    out_tree.push_back(std::to_string(p->out_tree()[v] + 1) + " -> " + std::to_string(v + 1));
    in_tree.push_back(std::to_string(v + 1) + " -> " + std::to_string(p->in_tree()[v] + 1));
  }
  tree["out_arborescence"] = out_tree;
  tree["in_arborescence"] = in_tree;
  r["irreducible"] = tree;
  if (p->kind() == PresentationKind::edge) r["edges"] = edge_json(p->edges());
  r["valid"] = true;
  return r;
}

Json cmd_words(Workspace& ws, const Args& a) {
  const std::string id = ws.matrix_arg(a.a);
  const PresentationPtr p = ws.presentation(id);
  Json r;
  r["id"] = id;
  r["length"] = a.length;
  Json list = Json::array();
  WordSpace(p, a.length).for_each([&](std::size_t, const Word& w) { list.push_back(p->format_word(w)); });
  r["count"] = list.size();
  r["words"] = list;
  return r;
}

intlat::Matrix any_matrix(Workspace& ws, const std::string& id) {
  if (id.find('.') != std::string::npos) return ws.presentation(id)->adjacency();
  return ws.raw_matrix(id);
}

Json cmd_snf(Workspace& ws, const Args& a) {
  const std::string id = ws.matrix_arg(a.a);
  const intlat::Matrix m = any_matrix(ws, id);
  const intlat::SmithDecomposition s = intlat::smith(m);
  Json r;
  r["id"] = id;
  r["matrix"] = matrix_rows(m);
  r["U"] = matrix_rows(s.U);
  r["D"] = matrix_rows(s.D);
  r["V"] = matrix_rows(s.V);
  r["diagonal"] = integers(s.diagonal());
  r["rank"] = s.rank();
  r["cokernel"] = intlat::cokernel(m).to_string();
  r["verified"] = intlat::verify_smith(m, s);
  return r;
}

Json cmd_invariants(Workspace& ws, const Args& a) {
  const std::string id = ws.matrix_arg(a.a);
  const PresentationPtr p = ws.presentation(id);
  Json r;
  r["id"] = id;
  const Json body = invariants_json(invariants(p), p);
  for (const auto& [k, v] : body.items()) r[k] = v;
  return r;
}

Json cmd_flow(Workspace& ws, const Args& a) {
  const std::string ia = ws.matrix_arg(a.a);
  const std::string ib = ws.matrix_arg(a.b);
  const PresentationPtr pa = ws.presentation(ia);
  const PresentationPtr pb = ws.presentation(ib);
  const FlowVerdict v = flow_equivalent(pa, pb);
  Json r;
  r["flow-equivalent"] = v.equivalent;
  r["bowen_franks_equal"] = v.a.bf_group == v.b.bf_group;
  r["det_signs_equal"] = v.a.det_sign == v.b.det_sign;
  r[ia] = invariants_json(v.a, pa);
  if (ib != ia) r[ib] = invariants_json(v.b, pb);
  return r;
}

Json cmd_coe(Workspace& ws, const Args& a) {
  const std::string ia = ws.matrix_arg(a.a);
  const std::string ib = ws.matrix_arg(a.b);
  const PresentationPtr pa = ws.presentation(ia);
  const PresentationPtr pb = ws.presentation(ib);
  std::optional<textio::TransducerText> witness;
  std::optional<OrbitData> data;
  if (!a.witness.empty()) {
    witness = ws.transducer_file(a.witness);
    data = orbit_data(ws, a, witness->transducer.domain());
  }
  Json r;
  try {
    const ConsistencyReport c =
        consistency_check(pa, pb, witness ? &witness->transducer : nullptr, data ? &*data : nullptr);
    r["coe"] = std::string(intlat::verdict_name(c.coe.verdict));
    r["det_signs_equal"] = c.coe.det_signs_equal;
    Json iso;
    iso["verdict"] = std::string(intlat::verdict_name(c.coe.pointed.verdict));
    iso["reason"] = c.coe.pointed.reason;
    if (c.coe.pointed.isomorphism) iso["isomorphism"] = matrix_rows(*c.coe.pointed.isomorphism);
    r["pointed_k0"] = iso;
    r[ia] = invariants_json(c.coe.a, pa);
    if (ib != ia) r[ib] = invariants_json(c.coe.b, pb);
    if (c.witness_checked) {
      Json w;
      w["transducer"] = transducer_json(witness->transducer, witness->domain_id, witness->codomain_id);
      w["orbit_relation"] = orbit_check_json(*c.orbit_check, pa);
      w["image_of_one"] = function_json(*c.image_of_one, ia);
      w["strong"] = c.strong;
      r["witness"] = w;
    }
  } catch (const Error& e) {
    if (e.code() != Errc::ContradictionDetected) throw;
    r["coe"] = "contradiction";
    r["error"] = e.what();
    throw Tripwire{r};
  }
  return r;
}

// cohom -----------------------------------------------------------------------

Json cmd_class_equal(Workspace& ws, const Args& a) {
  const auto f = ws.function_file(a.a);
  const auto g = ws.function_file(a.b);
  Json r;
  r["presentation"] = f.id;
  r["equal"] = zero_json(class_equal(f.function, g.function), f.function.presentation(), f.id);
  return r;
}

Json cmd_class_zero(Workspace& ws, const Args& a) {
  const auto f = ws.function_file(a.a);
  Json r;
  r["presentation"] = f.id;
  r["zero"] = zero_json(class_is_zero(f.function), f.function.presentation(), f.id);
  return r;
}

Json cmd_positive(Workspace& ws, const Args& a) {
  const auto f = ws.function_file(a.a);
  Json r;
  r["presentation"] = f.id;
  r["positive"] = nonnegative_json(class_is_nonnegative(f.function), f.function.presentation(), f.id);
  return r;
}

Json cmd_orbit_sum(Workspace& ws, const Args& a) {
  const auto f = ws.function_file(a.a);
  const PresentationPtr p = f.function.presentation();
  const Word c = p->parse_word(a.word);
  Json r;
  r["presentation"] = f.id;
  r["cycle"] = p->format_word(c);
  r["orbit_sum"] = str(orbit_sum(f.function, c));
  return r;
}

Json cmd_order_unit(Workspace& ws, const Args& a) {
  const auto f = ws.function_file(a.a);
  const OrderUnitDecision d = order_unit_check(f.function);
  Json r;
  r["presentation"] = f.id;
  r["order_unit"] = d.order_unit;
  if (!d.order_unit) {
    r["cycle"] = f.function.presentation()->format_word(*d.cycle);
    r["cycle_sum"] = str(d.cycle_sum);
  }
  return r;
}

// action ----------------------------------------------------------------------

Json cmd_action_compose(Workspace& ws, const Args& a) {
  const auto f = ws.function_file(a.a);
  const auto g = ws.function_file(a.b);
  const CircleAction c = compose(CircleAction(f.function), CircleAction(g.function));
  Json r;
  r["classifier"] = function_json(c.classifier(), f.id);
  return r;
}

Json cmd_action_equivalent(Workspace& ws, const Args& a) {
  const auto f = ws.function_file(a.a);
  const auto g = ws.function_file(a.b);
  const ActionEquivalence e = equivalent(CircleAction(f.function), CircleAction(g.function));
  Json r;
  r["presentation"] = f.id;
  r["equivalent"] = e.equivalent;
  if (e.equivalent) {
    r["cocycle_exponent"] = function_json(*e.cocycle_exponent, f.id);
  } else {
    r["cycle"] = f.function.presentation()->format_word(*e.cycle);
    r["cycle_sum"] = str(e.cycle_sum);
  }
  return r;
}

Json cmd_action_positive(Workspace& ws, const Args& a) {
  const auto f = ws.function_file(a.a);
  Json r;
  r["presentation"] = f.id;
  r["positive"] = nonnegative_json(class_nonnegative(CircleAction(f.function)), f.function.presentation(), f.id);
  return r;
}

Json cmd_action_phase(Workspace& ws, const Args& a) {
  const auto f = ws.function_file(a.a);
  const PresentationPtr p = f.function.presentation();
  const CircleAction alpha(f.function);
  const Word mu = p->parse_word(a.word);
  const Rational t = textio::parse_rational(a.t);
  const Point x = parse_point(p, a.point);
  const PhaseExponent e = phase_on_word(alpha, mu);
  Json r;
  r["presentation"] = f.id;
  r["word"] = p->format_word(mu);
  r["exponent"] = function_json(e.exponent, f.id);
  r["t"] = str(t);
  r["point"] = x.to_string(*p);
  r["phase"] = str(evaluate_phase(alpha, mu, t, x));
  return r;
}

// transducer ------------------------------------------------------------------

Json cmd_apply(Workspace& ws, const Args& a) {
  const auto t = ws.transducer_file(a.a);
  const Point x = parse_point(t.transducer.domain(), a.point);
  Json r;
  r["domain"] = t.domain_id;
  r["codomain"] = t.codomain_id;
  r["point"] = x.to_string(*t.transducer.domain());
  r["image"] = apply(t.transducer, x).to_string(*t.transducer.codomain());
  return r;
}

Json cmd_tcompose(Workspace& ws, const Args& a) {
  const auto second = ws.transducer_file(a.a);
  const auto first = ws.transducer_file(a.b);
  Json r;
  r["composite"] = transducer_json(compose(second.transducer, first.transducer), first.domain_id, second.codomain_id);
  return r;
}

Json cmd_tequiv(Workspace& ws, const Args& a) {
  const auto s = ws.transducer_file(a.a);
  const auto t = ws.transducer_file(a.b);
  const std::optional<std::size_t> bound = a.delay ? std::optional<std::size_t>(a.delay) : std::nullopt;
  Json r;
  r["domain"] = s.domain_id;
  r["equivalence"] = map_equivalence_json(equivalent_maps(s.transducer, t.transducer, bound), s.transducer.domain());
  return r;
}

Json cmd_verify_coe(Workspace& ws, const Args& a) {
  const auto t = ws.transducer_file(a.a);
  const OrbitData data = orbit_data(ws, a, t.transducer.domain());
  Json r;
  r["domain"] = t.domain_id;
  r["codomain"] = t.codomain_id;
  try {
    r["orbit_relation"] = orbit_check_json(verify_orbit_relation(t.transducer, data), t.transducer.domain());
  } catch (const Error& e) {
    if (e.code() != Errc::InsufficientLookahead) throw;
    Json u;
    u["holds"] = "undecided";
    u["reason"] = e.what();
    r["orbit_relation"] = u;
  }
  return r;
}

Json cmd_tpsi(Workspace& ws, const Args& a) {
  const auto t = ws.transducer_file(a.a);
  const OrbitData data = orbit_data(ws, a, t.transducer.domain());
  const auto f = ws.function_file(a.b);
  Json r;
  r["psi"] = function_json(transfer_psi(t.transducer, data, f.function), t.domain_id);
  return r;
}

// moves -----------------------------------------------------------------------

Json cmd_expand(Workspace& ws, const Args& a) {
  const std::string id = ws.matrix_arg(a.a);
  if (a.vertex == 0) throw Error(Errc::Parse, "--vertex is 1-based");
  const Expansion& e = ws.expansion(id, a.vertex - 1);
  const std::string xid = Workspace::expansion_id(id, a.vertex - 1);
  Json r;
  r["base"] = id;
  r["vertex"] = a.vertex;
  r["expanded"] = xid;
  r["matrix"] = matrix_rows(e.matrix);
  r["labels"] = e.expanded->labels();
  const InvariantReport before = invariants(e.base);
  const InvariantReport after = invariants(e.expanded);
  Json check;
  check["det(I-A)"] = str(before.det);
  check["det(I-Ax)"] = str(after.det);
  check["bowen_franks"] = before.bf_group.to_string();
  check["bowen_franks_x"] = after.bf_group.to_string();
  check["preserved"] = before.det == after.det && before.bf_group == after.bf_group;
  r["invariants"] = check;
  r["xi"] = transducer_json(e.xi, id, xid);
  Json xd;
  xd["k"] = function_json(e.xi_data.k, id);
  xd["l"] = function_json(e.xi_data.l, id);
  r["xi_data"] = xd;
  r["eta"] = transducer_json(e.eta, xid, id);
  Json ed;
  ed["k"] = function_json(e.eta_data.k, xid);
  ed["l"] = function_json(e.eta_data.l, xid);
  r["eta_data"] = ed;
  return r;
}

PairingOrder order_of(const Args& a) { return a.reverse ? PairingOrder::reverse : PairingOrder::lexicographic; }

Json cmd_elementary(Workspace& ws, const Args& a) {
  const std::string ic = ws.matrix_arg(a.a);
  const std::string id = ws.matrix_arg(a.b);
  const ElementaryEquivalence ee = elementary(ws.raw_matrix(ic), ws.raw_matrix(id), order_of(a));
  Json r;
  r["C"] = matrix_rows(ee.C);
  r["D"] = matrix_rows(ee.D);
  r["A"] = matrix_rows(ee.A);
  r["A_id"] = ic + "." + id;
  r["B"] = matrix_rows(ee.B);
  r["B_id"] = id + "." + ic;
  r["Z"] = matrix_rows(ee.Z);
  r["Z^2"] = matrix_rows(ee.Z * ee.Z);
  r["pairing"] = a.reverse ? "reverse" : "lexicographic";
  r["C_edges"] = edge_json(ee.c_edges);
  r["D_edges"] = edge_json(ee.d_edges);
  r["A_edges = C D"] = pairs_json(ee.a_pairs);
  r["B_edges = D C"] = pairs_json(ee.b_pairs);
  return r;
}

Json cmd_transfer_phi(Workspace& ws, const Args& a, bool forward) {
  const std::string ic = ws.matrix_arg(a.a);
  const std::string id = ws.matrix_arg(a.b);
  const ElementaryEquivalence ee = elementary(ws.raw_matrix(ic), ws.raw_matrix(id), order_of(a));
  const auto f = ws.function_file(a.c);
  Json r;
  r["pairing"] = a.reverse ? "reverse" : "lexicographic";
  if (forward) r["phi"] = function_json(phi(ee, f.function), id + "." + ic);
  else r["psi"] = function_json(psi(ee, f.function), ic + "." + id);
  return r;
}

Json cmd_transfer_expansion(Workspace& ws, const Args& a, bool xi) {
  const std::string id = ws.matrix_arg(a.a);
  if (a.vertex == 0) throw Error(Errc::Parse, "--vertex is 1-based");
  const Expansion& e = ws.expansion(id, a.vertex - 1);
  const auto f = ws.function_file(a.b);
  Json r;
  if (xi) r["psi_xi"] = function_json(psi_xi(e, f.function), id);
  else r["psi_eta"] = function_json(psi_eta(e, f.function), Workspace::expansion_id(id, a.vertex - 1));
  return r;
}

Json cmd_sse(Workspace& ws, const Args& a) {
  const std::string ia = ws.matrix_arg(a.a);
  const std::string ib = ws.matrix_arg(a.b);
  SseSearchOptions o;
  o.inner_dim_bound = a.inner_dim;
  o.entry_bound = a.entry_bound;
  o.chain_bound = a.chain_bound;
  o.node_cap = a.node_cap;
  const SseSearchResult s = sse_search(any_matrix(ws, ia), any_matrix(ws, ib), o);
  Json r;
  r["found"] = s.found;
  r["explored"] = s.explored;
  r["node_cap_hit"] = s.exhausted;
  Json bounds;
  bounds["inner_dim"] = o.inner_dim_bound;
  bounds["entry"] = o.entry_bound;
  bounds["chain"] = o.chain_bound;
  r["bounds"] = bounds;
  if (s.found) {
    Json chain = Json::array();
    for (const auto& ee : s.chain) {
      Json step;
      step["C"] = matrix_rows(ee.C);
      step["D"] = matrix_rows(ee.D);
      step["CD"] = matrix_rows(ee.A);
      step["DC"] = matrix_rows(ee.B);
      chain.push_back(step);
    }
    r["chain"] = chain;
  } else {
    r["note"] = "not found within the bounds; this does not rule out strong shift equivalence";
  }
  return r;
}

// ---------------------------------------------------------------------------

int report_error(const Error& e, bool json, std::ostream& out, std::ostream& err) {
  const bool tripwire = e.code() == Errc::ContradictionDetected || e.code() == Errc::InvalidResult;
  if (json) {
    Json j;
    j["error"] = {{"code", std::string(errc_name(e.code()))}, {"message", e.what()}};
    out << j.dump(2) << '\n';
  } else {
    err << "error: " << e.what() << '\n';
  }
  return tripwire ? kContradiction : kMalformed;
}

int run_batch(const std::string& path, const Globals& g, std::ostream& out, std::ostream& err);

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact invariants and transfer maps for shifts of finite type", "sftlab"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  Args a;
  app.add_flag("--json", g.json, "Print the report as JSON");
  app.add_option("--seed", g.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads for selftest and batch (0 = all cores)")
      ->capture_default_str();
  app.add_option("-m,--matrix", g.bindings, "Bind a matrix file to an id: id=path")->allow_extra_args(false);

  std::function<Json(Workspace&)> action;
  std::optional<std::string> batch_file;
  bool selftest_mode = false;

  const auto bind = [&](CLI::App* sc, std::function<Json(Workspace&, const Args&)> fn) {
    sc->callback([&action, &a, fn] { action = [&a, fn](Workspace& ws) { return fn(ws, a); }; });
  };

  auto* validate = app.add_subcommand("validate", "Validate a presentation and print its irreducibility certificate");
  validate->add_option("matrix", a.a)->required();
  bind(validate, cmd_validate);

  auto* words_cmd = app.add_subcommand("words", "List admissible words of a given length in frozen order");
  words_cmd->add_option("matrix", a.a)->required();
  words_cmd->add_option("length", a.length)->required()->check(CLI::PositiveNumber);
  bind(words_cmd, cmd_words);

  auto* snf = app.add_subcommand("snf", "Smith normal form U M V = D of a matrix");
  snf->add_option("matrix", a.a)->required();
  bind(snf, cmd_snf);

  auto* inv = app.add_subcommand("invariants", "Bowen-Franks group, pointed K_0 group and det(I - A)");
  inv->add_option("matrix", a.a)->required();
  bind(inv, cmd_invariants);

  auto* flow = app.add_subcommand("flow-equiv", "Decide flow equivalence from the invariants");
  flow->add_option("a", a.a)->required();
  flow->add_option("b", a.b)->required();
  bind(flow, cmd_flow);

  auto* coe = app.add_subcommand("coe", "Decide continuous orbit equivalence, optionally checking a witness");
  coe->add_option("a", a.a)->required();
  coe->add_option("b", a.b)->required();
  coe->add_option("--witness", a.witness, "Transducer file for a map X_A -> X_B");
  coe->add_option("--k", a.kfile, "Function file for k_1");
  coe->add_option("--l", a.lfile, "Function file for l_1");
  bind(coe, cmd_coe);

  auto* cohom = app.add_subcommand("cohom", "Ordered cohomology H^A");
  cohom->require_subcommand(1);
  auto* ce = cohom->add_subcommand("class-equal", "Is [f] = [g]?");
  ce->add_option("f", a.a)->required();
  ce->add_option("g", a.b)->required();
  bind(ce, cmd_class_equal);
  auto* cz = cohom->add_subcommand("class-zero", "Is f a coboundary?");
  cz->add_option("f", a.a)->required();
  bind(cz, cmd_class_zero);
  auto* cp = cohom->add_subcommand("positive", "Is [f] >= 0?");
  cp->add_option("f", a.a)->required();
  bind(cp, cmd_positive);
  auto* co = cohom->add_subcommand("orbit-sum", "Sum of f over one period of a cycle");
  co->add_option("f", a.a)->required();
  co->add_option("cycle", a.word)->required();
  bind(co, cmd_orbit_sum);
  auto* cu = cohom->add_subcommand("order-unit", "Is [f] an order unit?");
  cu->add_option("f", a.a)->required();
  bind(cu, cmd_order_unit);

  auto* action_cmd = app.add_subcommand("action", "Circle actions given by classifying functions");
  action_cmd->require_subcommand(1);
  auto* ac = action_cmd->add_subcommand("compose", "Classifier of the composed action");
  ac->add_option("f", a.a)->required();
  ac->add_option("g", a.b)->required();
  bind(ac, cmd_action_compose);
  auto* ae = action_cmd->add_subcommand("equivalent", "Cocycle conjugacy of two actions");
  ae->add_option("f", a.a)->required();
  ae->add_option("g", a.b)->required();
  bind(ae, cmd_action_equivalent);
  auto* ap = action_cmd->add_subcommand("positive", "Is the action positive?");
  ap->add_option("f", a.a)->required();
  bind(ap, cmd_action_positive);
  auto* aph = action_cmd->add_subcommand("phase", "Phase of the action on S_mu at a point");
  aph->add_option("f", a.a)->required();
  aph->add_option("mu", a.word)->required();
  aph->add_option("t", a.t)->required();
  aph->add_option("x", a.point)->required();
  bind(aph, cmd_action_phase);

  auto* tr = app.add_subcommand("transducer", "Transducers presenting maps between shifts");
  tr->require_subcommand(1);
  auto* ta = tr->add_subcommand("apply", "Image of an eventually periodic point");
  ta->add_option("transducer", a.a)->required();
  ta->add_option("x", a.point)->required();
  bind(ta, cmd_apply);
  auto* tc = tr->add_subcommand("compose", "second o first");
  tc->add_option("second", a.a)->required();
  tc->add_option("first", a.b)->required();
  bind(tc, cmd_tcompose);
  auto* te = tr->add_subcommand("equiv", "Do two transducers present the same map?");
  te->add_option("s", a.a)->required();
  te->add_option("t", a.b)->required();
  te->add_option("--delay", a.delay, "Output delay bound (default: derived from the machines)");
  bind(te, cmd_tequiv);
  auto* tv = tr->add_subcommand("verify-coe", "Check the orbit relation with data k_1, l_1");
  tv->add_option("transducer", a.a)->required();
  tv->add_option("--k", a.kfile)->required();
  tv->add_option("--l", a.lfile)->required();
  bind(tv, cmd_verify_coe);
  auto* tp = tr->add_subcommand("psi", "Transfer Psi_h(f) of a function on the codomain");
  tp->add_option("transducer", a.a)->required();
  tp->add_option("f", a.b)->required();
  tp->add_option("--k", a.kfile)->required();
  tp->add_option("--l", a.lfile)->required();
  bind(tp, cmd_tpsi);

  auto* ex = app.add_subcommand("expand", "Parry-Sullivan expansion with xi, eta and their orbit data");
  ex->add_option("matrix", a.a)->required();
  ex->add_option("--vertex", a.vertex, "Vertex to expand at (1-based)")->capture_default_str();
  bind(ex, cmd_expand);

  auto* el = app.add_subcommand("elementary", "Elementary equivalence A = CD, B = DC with edge bijections");
  el->add_option("C", a.a)->required();
  el->add_option("D", a.b)->required();
  el->add_flag("--reverse", a.reverse, "Pair edges in reverse order");
  bind(el, cmd_elementary);

  auto* tf = app.add_subcommand("transfer", "Transfer maps of matrix moves");
  tf->require_subcommand(1);
  auto* tphi = tf->add_subcommand("phi", "phi: functions on C.D -> functions on D.C");
  tphi->add_option("C", a.a)->required();
  tphi->add_option("D", a.b)->required();
  tphi->add_option("f", a.c)->required();
  tphi->add_flag("--reverse", a.reverse);
  bind(tphi, [](Workspace& ws, const Args& x) { return cmd_transfer_phi(ws, x, true); });
  auto* tpsi = tf->add_subcommand("psi", "psi: functions on D.C -> functions on C.D");
  tpsi->add_option("C", a.a)->required();
  tpsi->add_option("D", a.b)->required();
  tpsi->add_option("g", a.c)->required();
  tpsi->add_flag("--reverse", a.reverse);
  bind(tpsi, [](Workspace& ws, const Args& x) { return cmd_transfer_phi(ws, x, false); });
  auto* txi = tf->add_subcommand("psi-xi", "Psi_xi: functions on <id>.x -> functions on <id>");
  txi->add_option("matrix", a.a)->required();
  txi->add_option("f", a.b)->required();
  txi->add_option("--vertex", a.vertex)->capture_default_str();
  bind(txi, [](Workspace& ws, const Args& x) { return cmd_transfer_expansion(ws, x, true); });
  auto* teta = tf->add_subcommand("psi-eta", "Psi_eta: functions on <id> -> functions on <id>.x");
  teta->add_option("matrix", a.a)->required();
  teta->add_option("f", a.b)->required();
  teta->add_option("--vertex", a.vertex)->capture_default_str();
  bind(teta, [](Workspace& ws, const Args& x) { return cmd_transfer_expansion(ws, x, false); });

  auto* sse = app.add_subcommand("sse-search", "Bounded search for a strong shift equivalence");
  sse->add_option("a", a.a)->required();
  sse->add_option("b", a.b)->required();
  sse->add_option("--inner-dim", a.inner_dim)->capture_default_str();
  sse->add_option("--entry-bound", a.entry_bound)->capture_default_str();
  sse->add_option("--chain-bound", a.chain_bound)->capture_default_str();
  sse->add_option("--node-cap", a.node_cap)->capture_default_str();
  bind(sse, cmd_sse);

  auto* st = app.add_subcommand("selftest", "Run the embedded identity checks on random instances");
  st->add_option("--trials", a.trials)->capture_default_str();
  st->callback([&] { selftest_mode = true; });

  auto* batch = app.add_subcommand("batch", "Run one command per line of a file; reports keep input order");
  batch->add_option("file", a.a)->required();
  batch->callback([&] { batch_file = a.a; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kMalformed;
  }

  if (g.threads == 0) g.threads = std::max(1u, std::thread::hardware_concurrency());
  if (batch_file) return run_batch(*batch_file, g, out, err);

  Json report;
  int code = kOk;
  try {
    if (selftest_mode) {
      bool passed = false;
      report = selftest(g.seed, a.trials, g.threads, passed);
      if (!passed) code = kContradiction;
    } else {
      Workspace ws(g.bindings);
      report = action(ws);
    }
  } catch (const Tripwire& t) {
    report = t.report;
    code = kContradiction;
  } catch (const Error& e) {
    return report_error(e, g.json, out, err);
  } catch (const std::exception& e) {
    return report_error(Error(Errc::InvalidArgument, e.what()), g.json, out, err);
  }
  if (g.json) out << report.dump(2) << '\n';
  else render_text(report, out);
  return code;
}

namespace {

int run_batch(const std::string& path, const Globals& g, std::ostream& out, std::ostream& err) {
  std::vector<std::vector<std::string>> jobs;
  std::vector<std::string> lines;
  try {
    std::istringstream in(textio::read_file(path));
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream words(line);
      std::vector<std::string> argv;
      std::string w;
      while (words >> w) argv.push_back(w);
      if (argv.empty() || argv[0][0] == '#') continue;
      if (argv[0] == "batch") throw Error(Errc::Parse, "batch files may not nest");
      std::vector<std::string> full;
      if (g.json) full.push_back("--json");
      full.push_back("--seed");
      full.push_back(std::to_string(g.seed));
      for (const auto& b : g.bindings) {
        full.push_back("-m");
        full.push_back(b);
      }
      full.insert(full.end(), argv.begin(), argv.end());
      jobs.push_back(std::move(full));
      lines.push_back(line);
    }
  } catch (const Error& e) {
    return report_error(e, g.json, out, err);
  }

  struct Result {
    std::string out, err;
    int code = 0;
  };
  std::vector<Result> results(jobs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      std::ostringstream o, e;
      results[i].code = run(jobs[i], o, e);
      results[i].out = o.str();
      results[i].err = e.str();
    }
  };
  const std::size_t n = std::min<std::size_t>(g.threads, std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int worst = kOk;
  Json all = Json::array();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Result& r = results[i];
    if (r.code == kContradiction) worst = kContradiction;
    else if (r.code == kMalformed && worst == kOk) worst = kMalformed;
    if (g.json) {
      Json entry;
      entry["command"] = lines[i];
      entry["exit"] = r.code;
      entry["report"] = r.out.empty() ? Json(nullptr) : Json::parse(r.out);
      if (!r.err.empty()) entry["stderr"] = r.err;
      all.push_back(entry);
    } else {
      out << "$ " << lines[i] << '\n' << r.out << r.err << "exit: " << r.code << "\n\n";
    }
  }
  if (g.json) out << all.dump(2) << '\n';
  return worst;
}

}  // namespace

}  // namespace sftlab::cli
