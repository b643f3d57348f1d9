#include "sftlab/transducer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "sftlab/error.hpp"

namespace sftlab {

namespace {

constexpr Symbol kNoSymbol = std::numeric_limits<Symbol>::max();

// Symbols allowed after `last` (all symbols at the start of a stream).
std::vector<Symbol> allowed_after(const Presentation& p, Symbol last) {
  if (last == kNoSymbol) {
    std::vector<Symbol> all(p.symbol_count());
    for (Symbol s = 0; s < all.size(); ++s) all[s] = s;
    return all;
  }
  const auto succ = p.successors(last);
  return {succ.begin(), succ.end()};
}

}  // namespace

Transducer::Transducer(PresentationPtr domain, PresentationPtr codomain, std::size_t states, State initial,
                       std::vector<std::optional<Transition>> table)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      states_(states),
      initial_(initial),
      table_(std::move(table)) {
  if (!domain_ || !codomain_) throw Error(Errc::InvalidArgument, "transducer without presentations");
  if (states_ == 0 || initial_ >= states_) throw Error(Errc::InvalidArgument, "bad transducer state count");
  if (table_.size() != states_ * domain_->symbol_count())
    throw Error(Errc::InvalidArgument, "transition table has the wrong size");
  for (const auto& t : table_) {
    if (!t) continue;
    if (t->next >= states_) throw Error(Errc::InvalidArgument, "transition to a nonexistent state");
    for (Symbol s : t->output)
      if (s >= codomain_->symbol_count()) throw Error(Errc::InvalidArgument, "output symbol out of range");
  }
  check_invariants();
}

void Transducer::check_invariants() const {
  const Presentation& dom = *domain_;
  const Presentation& cod = *codomain_;
  const std::size_t in_ctx = dom.symbol_count() + 1;
  const std::size_t out_ctx = cod.symbol_count() + 1;
  auto enc = [](Symbol s) -> std::size_t { return s == kNoSymbol ? 0 : std::size_t{s} + 1; };

  // (state, last input, last output): completeness and output admissibility.
  std::vector<bool> seen(states_ * in_ctx * out_ctx, false);
  struct Config {
    State q;
    Symbol last_in;
    Symbol last_out;
  };
  std::deque<Config> queue{{initial_, kNoSymbol, kNoSymbol}};
  seen[(initial_ * in_ctx) * out_ctx] = true;
  // (state, last input) graph, keeping edges that emit nothing.
  std::vector<std::vector<std::size_t>> silent(states_ * in_ctx);
  std::vector<bool> pair_reached(states_ * in_ctx, false);
  pair_reached[initial_ * in_ctx] = true;
  while (!queue.empty()) {
    const Config c = queue.front();
    queue.pop_front();
    for (Symbol a : allowed_after(dom, c.last_in)) {
      const auto& t = transition(c.q, a);
      if (!t)
        throw Error(Errc::IncompleteTransducer, "no transition from state " + std::to_string(c.q) + " on symbol " +
                                                    dom.label(a) + " in an admissible context");
      const Word& w = t->output;
      if (!cod.is_admissible(w) || (!w.empty() && c.last_out != kNoSymbol && !cod.follows(c.last_out, w.front())))
        throw Error(Errc::InadmissibleOutput, "output '" + cod.format_word(w) + "' from state " +
                                                  std::to_string(c.q) + " breaks codomain admissibility");
      const std::size_t from_pair = c.q * in_ctx + enc(c.last_in);
      const std::size_t to_pair = t->next * in_ctx + enc(a);
      pair_reached[to_pair] = true;
      if (w.empty()) silent[from_pair].push_back(to_pair);
      const Config n{t->next, a, w.empty() ? c.last_out : w.back()};
      const std::size_t key = (n.q * in_ctx + enc(n.last_in)) * out_ctx + enc(n.last_out);
      if (!seen[key]) {
        seen[key] = true;
        queue.push_back(n);
      }
    }
  }

  // Productivity: the silent subgraph on reachable pairs must be acyclic.
  std::vector<std::size_t> indegree(silent.size(), 0);
  for (std::size_t u = 0; u < silent.size(); ++u)
    for (std::size_t v : silent[u]) ++indegree[v];
  std::vector<std::size_t> ready;
  for (std::size_t u = 0; u < silent.size(); ++u)
    if (indegree[u] == 0) ready.push_back(u);
  std::size_t removed = 0;
  while (!ready.empty()) {
    const std::size_t u = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t v : silent[u])
      if (--indegree[v] == 0) ready.push_back(v);
  }
  if (removed != silent.size())
    throw Error(Errc::Starvation, "a reachable input cycle produces no output");
}

Transducer Transducer::identity(const PresentationPtr& p) {
  std::vector<Word> images(p->symbol_count());
  for (Symbol s = 0; s < images.size(); ++s) images[s] = {s};
  return substitution(p, p, images);
}

Transducer Transducer::substitution(const PresentationPtr& domain, const PresentationPtr& codomain,
                                    const std::vector<Word>& images) {
  if (images.size() != domain->symbol_count())
    throw Error(Errc::InvalidArgument, "substitution needs one image per symbol");
  std::vector<std::optional<Transition>> table;
  for (const Word& w : images) table.push_back(Transition{0, w});
  return Transducer(domain, codomain, 1, 0, std::move(table));
}

std::size_t Transducer::max_output_length() const {
  std::size_t m = 0;
  for (const auto& t : table_)
    if (t) m = std::max(m, t->output.size());
  return m;
}

Transducer::Run Transducer::run(const Word& input, std::optional<State> from) const {
  Run r{from.value_or(initial_), {}};
  for (Symbol a : input) {
    const auto& t = transition(r.state, a);
    if (!t) throw Error(Errc::Inadmissible, "transducer input is not admissible");
    r.output.insert(r.output.end(), t->output.begin(), t->output.end());
    r.state = t->next;
  }
  return r;
}

Point apply(const Transducer& t, const Point& x) {
  Transducer::Run head = t.run(x.preperiod());
  std::vector<State> starts;
  std::vector<Word> chunks;
  State q = head.state;
  while (true) {
    const auto found = std::find(starts.begin(), starts.end(), q);
    if (found != starts.end()) {
      const std::size_t j = static_cast<std::size_t>(found - starts.begin());
      Word pre = std::move(head.output);
      for (std::size_t i = 0; i < j; ++i) pre.insert(pre.end(), chunks[i].begin(), chunks[i].end());
      Word per;
      for (std::size_t i = j; i < chunks.size(); ++i) per.insert(per.end(), chunks[i].begin(), chunks[i].end());
      if (per.empty()) throw Error(Errc::Starvation, "image of the point is finite");
      try {
        return Point::make(t.codomain(), std::move(pre), std::move(per));
      } catch (const Error& e) {
        if (e.code() == Errc::Inadmissible) throw Error(Errc::InadmissibleOutput, "image of the point is inadmissible");
        throw;
      }
    }
    starts.push_back(q);
    Transducer::Run pass = t.run(x.period(), q);
    chunks.push_back(std::move(pass.output));
    q = pass.state;
  }
}

Transducer compose(const Transducer& second, const Transducer& first) {
  if (!same_presentation(first.codomain(), second.domain()))
    throw Error(Errc::DomainMismatch, "compose: codomain of the first map is not the domain of the second");
  const std::size_t symbols = first.domain()->symbol_count();
  std::map<std::pair<State, State>, State> index;
  std::vector<std::pair<State, State>> pairs;
  std::vector<std::optional<Transition>> table;
  auto intern = [&](std::pair<State, State> p) {
    auto [it, fresh] = index.try_emplace(p, static_cast<State>(pairs.size()));
    if (fresh) {
      pairs.push_back(p);
      table.resize(pairs.size() * symbols);
    }
    return it->second;
  };
  intern({first.initial(), second.initial()});
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [q1, q2] = pairs[i];
    for (Symbol a = 0; a < symbols; ++a) {
      const auto& t1 = first.transition(q1, a);
      if (!t1) continue;
      State s2 = q2;
      Word out;
      bool defined = true;
      for (Symbol b : t1->output) {
        const auto& t2 = second.transition(s2, b);
        if (!t2) {
          defined = false;
          break;
        }
        out.insert(out.end(), t2->output.begin(), t2->output.end());
        s2 = t2->next;
      }
      if (!defined) continue;
      const State next = intern({t1->next, s2});
      table[i * symbols + a] = Transition{next, std::move(out)};
    }
  }
  return Transducer(first.domain(), second.codomain(), pairs.size(), 0, std::move(table));
}

// ---------------------------------------------------------------------------

std::string_view verdict_name(MapEquivalence::Verdict v) {
  switch (v) {
    case MapEquivalence::Verdict::equal: return "equal";
    case MapEquivalence::Verdict::unequal: return "unequal";
    case MapEquivalence::Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::size_t default_delay_bound(const Transducer& a, const Transducer& b) {
  const std::size_t maxlen = std::max<std::size_t>({a.max_output_length(), b.max_output_length(), 1});
  return a.state_count() * b.state_count() * maxlen + 8;
}

MapEquivalence equivalent_maps(const Transducer& a, const Transducer& b, std::optional<std::size_t> delay_bound) {
  if (!same_presentation(a.domain(), b.domain()) || !same_presentation(a.codomain(), b.codomain()))
    throw Error(Errc::DomainMismatch, "equivalent_maps: maps have different domains or codomains");
  MapEquivalence out;
  out.delay_bound = delay_bound.value_or(default_delay_bound(a, b));
  const Presentation& dom = *a.domain();

  // Key: qa, qb, last input, which side is ahead (0: a, 1: b), pending output.
  using Key = std::vector<std::uint32_t>;
  struct Node {
    std::size_t parent;
    Symbol symbol;
  };
  std::map<Key, std::size_t> seen;
  std::vector<Key> keys;
  std::vector<Node> nodes;
  constexpr std::size_t kRoot = std::numeric_limits<std::size_t>::max();
  auto visit = [&](Key key, std::size_t parent, Symbol sym) -> bool {
    auto [it, fresh] = seen.try_emplace(key, keys.size());
    if (fresh) {
      keys.push_back(std::move(key));
      nodes.push_back({parent, sym});
    }
    return fresh;
  };
  visit({a.initial(), b.initial(), kNoSymbol, 0}, kRoot, kNoSymbol);
  auto input_of = [&](std::size_t node) {
    Word w;
    while (node != kRoot && nodes[node].parent != kRoot) {
      w.push_back(nodes[node].symbol);
      node = nodes[node].parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  bool overflow = false;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const Key key = keys[i];
    const State qa = key[0];
    const State qb = key[1];
    const Symbol last = key[2];
    const bool b_ahead = key[3] == 1;
    const Word pending(key.begin() + 4, key.end());
    for (Symbol s : allowed_after(dom, last)) {
      const auto& ta = a.transition(qa, s);
      const auto& tb = b.transition(qb, s);
      if (!ta || !tb) throw Error(Errc::IncompleteTransducer, "equivalent_maps: missing transition");
      Word xa = b_ahead ? Word{} : pending;
      Word xb = b_ahead ? pending : Word{};
      xa.insert(xa.end(), ta->output.begin(), ta->output.end());
      xb.insert(xb.end(), tb->output.begin(), tb->output.end());
      const std::size_t common = std::min(xa.size(), xb.size());
      if (!std::equal(xa.begin(), xa.begin() + static_cast<long>(common), xb.begin())) {
        out.verdict = MapEquivalence::Verdict::unequal;
        out.counterexample = input_of(i);
        out.counterexample.push_back(s);
        out.configurations = keys.size();
        const Word cyc = cycle_through(dom, s);
        Point x = Point::make(a.domain(), out.counterexample, cyc);
        if (!(apply(a, x) == apply(b, x))) out.point = std::move(x);
        return out;
      }
      const bool next_b_ahead = xb.size() > xa.size();
      const Word& longer = next_b_ahead ? xb : xa;
      Key next{ta->next, tb->next, s, next_b_ahead ? 1u : 0u};
      next.insert(next.end(), longer.begin() + static_cast<long>(common), longer.end());
      if (next.size() - 4 > out.delay_bound) {
        overflow = true;
        continue;
      }
      visit(std::move(next), i, s);
    }
  }
  out.configurations = keys.size();
  out.verdict = overflow ? MapEquivalence::Verdict::inconclusive : MapEquivalence::Verdict::equal;
  return out;
}

// ---------------------------------------------------------------------------

Transducer shifted_map(const Transducer& h, bool skip_first, const Function& drop) {
  require_same(h.domain(), drop.presentation(), "shifted_map");
  if (!drop.is_integer_valued() || drop.min_value() < 0)
    throw Error(Errc::InvalidArgument, "shift exponents must be nonnegative integers");
  const PresentationPtr& dom = h.domain();
  const std::size_t symbols = dom->symbol_count();
  const std::size_t depth = drop.depth();
  const std::size_t max_drop = drop.max_value().get_num().get_ui();

  // Buffer states: admissible words of length 0..depth-1.
  std::vector<WordSpace> spaces;
  std::vector<std::size_t> offset{0, 1};
  for (std::size_t len = 1; len < depth; ++len) {
    spaces.emplace_back(dom, len);
    offset.push_back(offset.back() + spaces.back().size());
  }
  const std::size_t buffer_states = offset[depth];
  const std::size_t states = buffer_states + h.state_count() * (max_drop + 1);
  auto running = [&](State q, std::size_t r) {
    return static_cast<State>(buffer_states + q * (max_drop + 1) + r);
  };
  auto emit = [](const Word& w, std::size_t r, Word& out) -> std::size_t {
    if (r >= w.size()) return r - w.size();
    out.assign(w.begin() + static_cast<long>(r), w.end());
    return 0;
  };

  std::vector<std::optional<Transition>> table(states * symbols);
  for (std::size_t len = 0; len < depth; ++len) {
    const std::size_t count = len == 0 ? 1 : spaces[len - 1].size();
    for (std::size_t r = 0; r < count; ++r) {
      const Word u = len == 0 ? Word{} : spaces[len - 1].unrank(r);
      const auto from = static_cast<State>(offset[len] + r);
      for (Symbol a = 0; a < symbols; ++a) {
        if (!u.empty() && !dom->follows(u.back(), a)) continue;
        Word w = u;
        w.push_back(a);
        if (len + 1 < depth) {
          table[from * symbols + a] = Transition{static_cast<State>(offset[len + 1] + spaces[len].rank(w)), {}};
          continue;
        }
        const std::size_t m = drop(w).get_num().get_ui();
        const Word feed(w.begin() + (skip_first ? 1 : 0), w.end());
        const Transducer::Run run = h.run(feed);
        Word out;
        const std::size_t rest = emit(run.output, m, out);
        table[from * symbols + a] = Transition{running(run.state, rest), std::move(out)};
      }
    }
  }
  for (State q = 0; q < h.state_count(); ++q)
    for (std::size_t r = 0; r <= max_drop; ++r)
      for (Symbol a = 0; a < symbols; ++a) {
        const auto& t = h.transition(q, a);
        if (!t) continue;
        Word out;
        const std::size_t rest = emit(t->output, r, out);
        table[running(q, r) * symbols + a] = Transition{running(t->next, rest), std::move(out)};
      }
  return Transducer(dom, h.codomain(), states, 0, std::move(table));
}

namespace {

void check_orbit_data(const Transducer& h, const OrbitData& data, std::size_t max_depth) {
  for (const Function* f : {&data.k, &data.l}) {
    require_same(h.domain(), f->presentation(), "orbit data");
    if (!f->is_integer_valued() || f->min_value() < 0)
      throw Error(Errc::InvalidArgument, "orbit exponents must be nonnegative integers");
    if (f->depth() > max_depth)
      throw Error(Errc::InsufficientLookahead, "orbit data depth " + std::to_string(f->depth()) +
                                                   " exceeds the configured bound " + std::to_string(max_depth));
  }
}

}  // namespace

OrbitCheck verify_orbit_relation(const Transducer& h, const OrbitData& data, const OrbitCheckOptions& options) {
  check_orbit_data(h, data, options.max_data_depth);
  OrbitCheck out;
  out.machine = equivalent_maps(shifted_map(h, true, data.k), shifted_map(h, false, data.l), options.delay_bound);

  const PresentationPtr& dom = h.domain();
  for (const Point& x : enumerate_points(dom, options.max_preperiod, options.max_period, options.max_points)) {
    ++out.points_checked;
    const std::size_t k = data.k.at(x).get_num().get_ui();
    const std::size_t l = data.l.at(x).get_num().get_ui();
    if (!(apply(h, x.shifted(1)).shifted(k) == apply(h, x).shifted(l))) {
      out.counterexample = x;
      break;
    }
  }
  using V = MapEquivalence::Verdict;
  if (out.machine.verdict == V::equal && out.counterexample)
    throw Error(Errc::InvalidResult, "machine check and point sweep disagree");
  if (out.machine.verdict == V::inconclusive && !out.counterexample)
    throw Error(Errc::InsufficientLookahead, "transducer comparison exceeded delay bound " +
                                                 std::to_string(out.machine.delay_bound));
  if (!out.counterexample && out.machine.point) out.counterexample = out.machine.point;
  out.holds = out.machine.verdict == V::equal;
  return out;
}

Function transfer_psi(const Transducer& h, const OrbitData& data, const Function& f) {
  check_orbit_data(h, data, std::numeric_limits<std::size_t>::max());
  require_same(h.codomain(), f.presentation(), "transfer_psi");
  const Presentation& dom = *h.domain();
  const std::size_t need = data.l.max_value().get_num().get_ui() + data.k.max_value().get_num().get_ui() + f.depth();

  // Smallest input length after which every admissible input has produced
  // at least `need` output symbols.
  std::map<std::pair<State, Symbol>, std::size_t> level{{{h.initial(), kNoSymbol}, 0}};
  std::size_t forced = 0;
  const std::size_t limit = h.state_count() * (dom.symbol_count() + 1) * (need + 1) + 1;
  while (true) {
    std::size_t least = std::numeric_limits<std::size_t>::max();
    for (const auto& [cfg, len] : level) least = std::min(least, len);
    if (least >= need) break;
    if (++forced > limit) throw Error(Errc::InsufficientLookahead, "transducer does not produce enough output");
    std::map<std::pair<State, Symbol>, std::size_t> next;
    for (const auto& [cfg, len] : level)
      for (Symbol a : allowed_after(dom, cfg.second)) {
        const auto& t = h.transition(cfg.first, a);
        const std::size_t l = std::min(len + t->output.size(), need);
        auto [it, fresh] = next.try_emplace({t->next, a}, l);
        if (!fresh) it->second = std::min(it->second, l);
      }
    level = std::move(next);
  }
  const std::size_t depth = std::max({forced + 1, data.k.depth(), data.l.depth()});
  const std::size_t fd = f.depth();
  return Function::tabulate(
      h.domain(), depth,
      [&](const Word& w) {
        const Word image = h.run(w).output;
        const Word image_shifted = h.run(Word(w.begin() + 1, w.end())).output;
        const std::size_t l = data.l(w).get_num().get_ui();
        const std::size_t k = data.k(w).get_num().get_ui();
        Rational v = 0;
        for (std::size_t i = 0; i < l; ++i) v += f(std::span<const Symbol>(image).subspan(i, fd));
        for (std::size_t j = 0; j < k; ++j) v -= f(std::span<const Symbol>(image_shifted).subspan(j, fd));
        return v;
      },
      f.ring());
}

bool is_eventual_conjugacy(const Transducer& h, const OrbitData& data, const Transducer& inverse,
                           const OrbitData& inverse_data) {
  return transfer_psi(h, data, Function::one(h.codomain())) == Function::one(h.domain()) &&
         transfer_psi(inverse, inverse_data, Function::one(inverse.codomain())) == Function::one(inverse.domain());
}

StrongCoe is_strong_coe(const Transducer& h, const OrbitData& data) {
  StrongCoe out{false, transfer_psi(h, data, Function::one(h.codomain())), std::nullopt, std::nullopt, 0};
  ZeroDecision z = class_equal(out.image_of_one, Function::one(h.domain()));
  out.strong = z.is_zero;
  out.witness = std::move(z.witness);
  out.cycle = std::move(z.cycle);
  out.cycle_sum = z.cycle_sum;
  return out;
}

BlockConjugacy block_conjugacy(const PresentationPtr& p, std::size_t k) {
  if (k == 0) throw Error(Errc::InvalidArgument, "block length must be positive");
  HigherBlock hb = higher_block(p, k);
  const std::size_t symbols = p->symbol_count();
  std::vector<WordSpace> spaces;
  std::vector<std::size_t> offset{0, 1};
  for (std::size_t len = 1; len <= k; ++len) {
    spaces.emplace_back(p, len);
    offset.push_back(offset.back() + spaces.back().size());
  }
  WordSpace edges(p, k + 1);
  const std::size_t states = offset[k + 1];
  std::vector<std::optional<Transition>> table(states * symbols);
  for (std::size_t len = 0; len <= k; ++len) {
    const std::size_t count = len == 0 ? 1 : spaces[len - 1].size();
    for (std::size_t r = 0; r < count; ++r) {
      const Word u = len == 0 ? Word{} : spaces[len - 1].unrank(r);
      const auto from = static_cast<State>(offset[len] + r);
      for (Symbol a = 0; a < symbols; ++a) {
        if (!u.empty() && !p->follows(u.back(), a)) continue;
        Word w = u;
        w.push_back(a);
        if (len < k) {
          table[from * symbols + a] = Transition{static_cast<State>(offset[len + 1] + spaces[len].rank(w)), {}};
        } else {
          const auto e = static_cast<Symbol>(edges.rank(w));
          const Word tail(w.begin() + 1, w.end());
          table[from * symbols + a] = Transition{static_cast<State>(offset[k] + spaces[k - 1].rank(tail)), {e}};
        }
      }
    }
  }
  Transducer forward(p, hb.presentation, states, 0, std::move(table));
  std::vector<Word> firsts;
  for (const Word& w : hb.edge_words) firsts.push_back({w[0]});
  Transducer inverse = Transducer::substitution(hb.presentation, p, firsts);
  OrbitData fd{Function::zero(p), Function::one(p)};
  OrbitData id{Function::zero(hb.presentation), Function::one(hb.presentation)};
  return BlockConjugacy{std::move(hb), std::move(forward), std::move(inverse), std::move(fd), std::move(id)};
}

}  // namespace sftlab
