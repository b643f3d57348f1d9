#include "sftlab/cohomology.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "sftlab/error.hpp"

namespace sftlab {

Function pullback_sigma(const Function& f) {
  const std::size_t k = f.depth();
  return Function::tabulate(
      f.presentation(), k + 1, [&](const Word& w) { return f(std::span<const Symbol>(w).subspan(1)); }, f.ring());
}

Function partial_sum(const Function& f, std::size_t n) {
  if (n == 0) return Function::constant(f.presentation(), 0, f.ring());
  const std::size_t k = f.depth();
  return Function::tabulate(
      f.presentation(), k + n - 1,
      [&](const Word& w) {
        Rational s = 0;
        for (std::size_t i = 0; i < n; ++i) s += f(std::span<const Symbol>(w).subspan(i, k));
        return s;
      },
      f.ring());
}

Function coboundary(const Function& b) { return b - pullback_sigma(b); }

Rational orbit_sum(const Function& f, const Word& cycle) {
  const auto& p = *f.presentation();
  if (!p.is_cyclically_admissible(cycle))
    throw Error(Errc::NotCyclicallyAdmissible, "cycle '" + p.format_word(cycle) + "' is not cyclically admissible");
  const std::size_t len = cycle.size();
  Word window(f.depth());
  Rational sum = 0;
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; j < window.size(); ++j) window[j] = cycle[(i + j) % len];
    sum += f(window);
  }
  return sum;
}

PotentialGraph potential_graph(const Function& f, std::size_t depth) {
  if (depth < 2 || depth < f.depth()) throw Error(Errc::InvalidArgument, "potential graph depth too small");
  const PresentationPtr& p = f.presentation();
  WordSpace vertices(p, depth - 1);
  WordSpace edges(p, depth);
  const std::vector<Rational> weights = f.table_at_depth(depth);
  PotentialGraph g;
  g.depth = depth;
  g.vertex_count = vertices.size();
  g.edges.reserve(edges.size());
  g.out_edges.assign(g.vertex_count, {});
  edges.for_each([&](std::size_t r, const Word& w) {
    const std::span<const Symbol> s(w);
    PotentialGraph::Edge e{vertices.rank(s.first(depth - 1)), vertices.rank(s.last(depth - 1)), w[0], weights[r]};
    g.out_edges[e.tail].push_back(g.edges.size());
    g.edges.push_back(std::move(e));
  });
  return g;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

Word walk_word(const PotentialGraph& g, const std::vector<std::size_t>& walk) {
  Word w;
  w.reserve(walk.size());
  for (std::size_t e : walk) w.push_back(g.edges[e].first);
  return w;
}

// Tree of shortest (in hops) directed paths from the root, or into the root.
struct Arborescence {
  std::vector<std::size_t> via;  // edge used to reach/leave each vertex
  std::vector<Rational> weight;  // path weight root->v (out) or v->root (in)
};

Arborescence out_arborescence(const PotentialGraph& g) {
  Arborescence t{std::vector<std::size_t>(g.vertex_count, kNone), std::vector<Rational>(g.vertex_count)};
  std::vector<bool> seen(g.vertex_count, false);
  seen[0] = true;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t e : g.out_edges[u]) {
      const std::size_t v = g.edges[e].head;
      if (seen[v]) continue;
      seen[v] = true;
      t.via[v] = e;
      t.weight[v] = t.weight[u] + g.edges[e].weight;
      queue.push_back(v);
    }
  }
  return t;
}

Arborescence in_arborescence(const PotentialGraph& g) {
  std::vector<std::vector<std::size_t>> in_edges(g.vertex_count);
  for (std::size_t e = 0; e < g.edges.size(); ++e) in_edges[g.edges[e].head].push_back(e);
  Arborescence t{std::vector<std::size_t>(g.vertex_count, kNone), std::vector<Rational>(g.vertex_count)};
  std::vector<bool> seen(g.vertex_count, false);
  seen[0] = true;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : in_edges[v]) {
      const std::size_t u = g.edges[e].tail;
      if (seen[u]) continue;
      seen[u] = true;
      t.via[u] = e;
      t.weight[u] = t.weight[v] + g.edges[e].weight;
      queue.push_back(u);
    }
  }
  return t;
}

void path_from_root(const PotentialGraph& g, const Arborescence& out, std::size_t v, std::vector<std::size_t>& walk) {
  std::vector<std::size_t> rev;
  while (v != 0) {
    rev.push_back(out.via[v]);
    v = g.edges[out.via[v]].tail;
  }
  walk.insert(walk.end(), rev.rbegin(), rev.rend());
}

void path_to_root(const PotentialGraph& g, const Arborescence& in, std::size_t v, std::vector<std::size_t>& walk) {
  while (v != 0) {
    walk.push_back(in.via[v]);
    v = g.edges[in.via[v]].head;
  }
}

// Bellman-Ford from a virtual source joined to every vertex with weight 0.
// Returns a negative cycle (edge indices in walk order) or fills `dist`.
std::optional<std::vector<std::size_t>> bellman_ford(const PotentialGraph& g, const std::vector<Integer>& weight,
                                                     std::vector<Integer>& dist) {
  const std::size_t n = g.vertex_count;
  dist.assign(n, Integer(0));
  std::vector<std::size_t> pred(n, kNone);
  std::size_t last = kNone;
  for (std::size_t round = 0; round <= n; ++round) {
    last = kNone;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const auto& edge = g.edges[e];
      Integer candidate = dist[edge.tail] + weight[e];
      if (candidate < dist[edge.head]) {
        dist[edge.head] = std::move(candidate);
        pred[edge.head] = e;
        last = edge.head;
      }
    }
    if (last == kNone) return std::nullopt;
  }
  std::size_t v = last;
  for (std::size_t i = 0; i < n; ++i) v = g.edges[pred[v]].tail;
  std::vector<std::size_t> cycle;
  std::size_t u = v;
  do {
    cycle.push_back(pred[u]);
    u = g.edges[pred[u]].tail;
  } while (u != v);
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

}  // namespace

ZeroDecision class_is_zero(const Function& f) {
  const std::size_t d = std::max<std::size_t>(f.depth(), 2);
  const PotentialGraph g = potential_graph(f, d);
  const Arborescence out = out_arborescence(g);
  const Arborescence in = in_arborescence(g);

  // Candidate potential b = -P; f = b - b o sigma means weight(e) = b(tail) - b(head).
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& edge = g.edges[e];
    if (edge.weight == out.weight[edge.head] - out.weight[edge.tail]) continue;
    std::vector<std::size_t> walk;
    if (out.weight[edge.tail] + edge.weight + in.weight[edge.head] != 0) {
      path_from_root(g, out, edge.tail, walk);
      walk.push_back(e);
      path_to_root(g, in, edge.head, walk);
    } else {
      path_from_root(g, out, edge.head, walk);
      path_to_root(g, in, edge.head, walk);
    }
    ZeroDecision z;
    z.cycle = walk_word(g, walk);
    z.cycle_sum = orbit_sum(f, *z.cycle);
    if (z.cycle_sum == 0) throw Error(Errc::InvalidResult, "class_is_zero produced a zero-sum certificate");
    return z;
  }
  std::vector<Rational> table(g.vertex_count);
  for (std::size_t v = 0; v < g.vertex_count; ++v) table[v] = -out.weight[v];
  Function b(f.presentation(), d - 1, std::move(table), f.ring());
  if (!(coboundary(b) == f)) throw Error(Errc::InvalidResult, "coboundary witness failed verification");
  ZeroDecision z;
  z.is_zero = true;
  z.witness = std::move(b);
  return z;
}

ZeroDecision class_equal(const Function& f, const Function& g) {
  require_same(f.presentation(), g.presentation(), "class_equal");
  return class_is_zero(f - g);
}

NonnegativeDecision class_is_nonnegative(const Function& f) {
  if (f.ring() != Ring::integers) throw Error(Errc::RationalNotSupported, "positivity is defined over Z only");
  const std::size_t d = std::max<std::size_t>(f.depth(), 2);
  const PotentialGraph g = potential_graph(f, d);
  std::vector<Integer> weight;
  weight.reserve(g.edges.size());
  for (const auto& e : g.edges) weight.push_back(e.weight.get_num());
  std::vector<Integer> dist;
  NonnegativeDecision out;
  if (auto cycle = bellman_ford(g, weight, dist)) {
    out.cycle = walk_word(g, *cycle);
    out.cycle_sum = orbit_sum(f, *out.cycle);
    if (out.cycle_sum >= 0) throw Error(Errc::InvalidResult, "negative-cycle certificate has nonnegative sum");
    return out;
  }
  // dist(head) <= dist(tail) + w, so w + b(tail) - b(head) >= 0 with b = dist.
  std::vector<Rational> table(dist.begin(), dist.end());
  Function b(f.presentation(), d - 1, std::move(table));
  Function rep = f + coboundary(b);
  if (rep.min_value() < 0) throw Error(Errc::InvalidResult, "representative is not pointwise nonnegative");
  out.nonnegative = true;
  out.representative = std::move(rep);
  out.transfer = std::move(b);
  return out;
}

OrderUnitDecision order_unit_check(const Function& f) {
  const std::size_t d = std::max<std::size_t>(f.depth(), 2);
  const PotentialGraph g = potential_graph(f, d);
  Integer lcm = 1;
  for (const auto& e : g.edges) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.weight.get_den_mpz_t());
  // Simple cycles have length <= V, so for integer sums S: S > 0 iff V*S - len >= 0.
  const Integer scale = lcm * static_cast<unsigned long>(g.vertex_count);
  std::vector<Integer> weight;
  weight.reserve(g.edges.size());
  for (const auto& e : g.edges) {
    const Rational w = e.weight * Rational(scale) - 1;
    weight.push_back(w.get_num());
  }
  std::vector<Integer> dist;
  OrderUnitDecision out;
  if (auto cycle = bellman_ford(g, weight, dist)) {
    out.cycle = walk_word(g, *cycle);
    out.cycle_sum = orbit_sum(f, *out.cycle);
    if (out.cycle_sum > 0) throw Error(Errc::InvalidResult, "order-unit certificate has positive sum");
    return out;
  }
  out.order_unit = true;
  return out;
}

}  // namespace sftlab
