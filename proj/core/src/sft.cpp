#include "sftlab/sft.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <sstream>

#include "sftlab/error.hpp"

namespace sftlab {

std::string_view kind_name(PresentationKind k) {
  return k == PresentationKind::vertex ? "vertex" : "edge";
}

std::size_t max_words() {
  if (const char* env = std::getenv("SFTLAB_MAX_WORDS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return std::size_t{1000000};
}

namespace {

// BFS parents over the vertex graph; returns false if some vertex is unreached.
bool bfs_tree(const intlat::Matrix& a, bool reverse, std::vector<std::size_t>& parent) {
  const std::size_t n = a.rows();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  parent.assign(n, kNone);
  parent[0] = 0;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v = 0; v < n; ++v) {
      const bool arc = reverse ? a(v, u) != 0 : a(u, v) != 0;
      if (arc && parent[v] == kNone) {
        parent[v] = u;
        queue.push_back(v);
      }
    }
  }
  return std::none_of(parent.begin(), parent.end(), [](std::size_t p) { return p == kNone; });
}

}  // namespace

PresentationPtr Presentation::validate(const intlat::Matrix& adjacency, PresentationKind kind,
                                       std::vector<std::string> labels) {
  if (!adjacency.is_square() || adjacency.rows() == 0)
    throw Error(Errc::NotSquare, "adjacency must be a nonempty square matrix");
  const std::size_t n = adjacency.rows();
  if (n > kMaxVertices)
    throw Error(Errc::TooLarge, "more than " + std::to_string(kMaxVertices) + " vertices");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (adjacency(i, j) < 0) throw Error(Errc::NegativeEntry, "negative adjacency entry");
      if (kind == PresentationKind::vertex && adjacency(i, j) > 1)
        throw Error(Errc::NotZeroOne, "vertex presentations need 0-1 entries");
    }
  // Checked before irreducibility so that reducible permutations (the
  // identity, say) are reported as permutations.
  bool permutation = true;
  for (std::size_t i = 0; i < n && permutation; ++i) {
    Integer row = 0;
    Integer col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row += adjacency(i, j);
      col += adjacency(j, i);
    }
    permutation = row == 1 && col == 1;
  }
  if (permutation) throw Error(Errc::PermutationMatrix, "adjacency is a permutation matrix");

  for (std::size_t i = 0; i < n; ++i) {
    bool row = false;
    bool col = false;
    for (std::size_t j = 0; j < n; ++j) {
      row = row || adjacency(i, j) != 0;
      col = col || adjacency(j, i) != 0;
    }
    if (!row || !col) throw Error(Errc::NotIrreducible, "zero row or column at vertex " + std::to_string(i + 1));
  }

  auto p = std::shared_ptr<Presentation>(new Presentation());
  p->kind_ = kind;
  p->adjacency_ = adjacency;
  if (!bfs_tree(adjacency, false, p->out_tree_) || !bfs_tree(adjacency, true, p->in_tree_))
    throw Error(Errc::NotIrreducible, "the graph is not strongly connected");

  if (kind == PresentationKind::vertex) {
    p->successors_.resize(n);
    p->predecessors_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (adjacency(i, j) != 0) {
          p->successors_[i].push_back(static_cast<Symbol>(j));
          p->predecessors_[j].push_back(static_cast<Symbol>(i));
        }
  } else {
    Integer total = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) total += adjacency(i, j);
    if (total > static_cast<long>(std::min<std::size_t>(max_words(), 1u << 24)))
      throw Error(Errc::TooLarge, "too many edges (" + total.get_str() + ")");
    std::vector<std::vector<Symbol>> out(n);
    std::vector<std::vector<Symbol>> in(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t count = adjacency(i, j).get_ui();
        for (std::size_t k = 0; k < count; ++k) {
          const auto e = static_cast<Symbol>(p->edges_.size());
          p->edges_.push_back({i, j, k});
          out[i].push_back(e);
          in[j].push_back(e);
        }
      }
    const std::size_t m = p->edges_.size();
    p->successors_.resize(m);
    p->predecessors_.resize(m);
    for (std::size_t e = 0; e < m; ++e) {
      p->successors_[e] = out[p->edges_[e].target];
      p->predecessors_[e] = in[p->edges_[e].source];
    }
  }

  const std::size_t symbols = p->successors_.size();
  if (labels.empty()) {
    for (std::size_t s = 0; s < symbols; ++s) labels.push_back(std::to_string(s + 1));
  }
  if (labels.size() != symbols) throw Error(Errc::InvalidArgument, "label count does not match symbol count");
  for (std::size_t s = 0; s < symbols; ++s) {
    const auto& l = labels[s];
    if (l.empty() || l == "-" || l.find_first_of(".: \t") != std::string::npos)
      throw Error(Errc::InvalidArgument, "invalid symbol label '" + l + "'");
    for (std::size_t t = 0; t < s; ++t)
      if (labels[t] == l) throw Error(Errc::InvalidArgument, "duplicate symbol label '" + l + "'");
    if (l.size() != 1) p->single_char_labels_ = false;
  }
  p->labels_ = std::move(labels);
  return p;
}

bool Presentation::follows(Symbol a, Symbol b) const {
  const auto& s = successors_[a];
  return std::binary_search(s.begin(), s.end(), b);
}

std::optional<Symbol> Presentation::symbol_of(std::string_view label) const {
  for (std::size_t s = 0; s < labels_.size(); ++s)
    if (labels_[s] == label) return static_cast<Symbol>(s);
  return std::nullopt;
}

bool Presentation::is_admissible(std::span<const Symbol> w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= symbol_count()) return false;
    if (i > 0 && !follows(w[i - 1], w[i])) return false;
  }
  return true;
}

bool Presentation::is_cyclically_admissible(std::span<const Symbol> w) const {
  return !w.empty() && is_admissible(w) && follows(w.back(), w.front());
}

std::string Presentation::format_word(std::span<const Symbol> w) const {
  if (w.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !single_char_labels_) out += '.';
    out += labels_.at(w[i]);
  }
  return out;
}

Word Presentation::parse_word(std::string_view text) const {
  Word w;
  if (text == "-" || text.empty()) return w;
  auto push = [&](std::string_view label) {
    const auto s = symbol_of(label);
    if (!s) throw Error(Errc::Parse, "unknown symbol '" + std::string(label) + "'");
    w.push_back(*s);
  };
  if (text.find('.') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t dot = text.find('.', start);
      push(text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
      if (dot == std::string_view::npos) break;
      start = dot + 1;
    }
  } else if (single_char_labels_) {
    for (std::size_t i = 0; i < text.size(); ++i) push(text.substr(i, 1));
  } else {
    push(text);
  }
  return w;
}

bool Presentation::same_as(const Presentation& other) const {
  return kind_ == other.kind_ && adjacency_ == other.adjacency_ && labels_ == other.labels_;
}

bool same_presentation(const PresentationPtr& a, const PresentationPtr& b) {
  return a == b || (a && b && a->same_as(*b));
}

void require_same(const PresentationPtr& a, const PresentationPtr& b, std::string_view what) {
  if (!same_presentation(a, b))
    throw Error(Errc::PresentationMismatch, std::string(what) + ": presentations differ");
}

// ---------------------------------------------------------------------------

WordSpace::WordSpace(PresentationPtr p, std::size_t k) : p_(std::move(p)), k_(k) {
  if (k_ == 0) throw Error(Errc::InvalidArgument, "word length must be positive");
  const std::size_t n = p_->symbol_count();
  const std::uint64_t cap = max_words();
  continuations_.assign(k_, std::vector<std::uint64_t>(n, 1));
  for (std::size_t m = 1; m < k_; ++m)
    for (Symbol s = 0; s < n; ++s) {
      std::uint64_t c = 0;
      for (Symbol t : p_->successors(s)) c = std::min<std::uint64_t>(cap + 1, c + continuations_[m - 1][t]);
      continuations_[m][s] = c;
    }
  std::uint64_t total = 0;
  for (Symbol s = 0; s < n; ++s) total = std::min<std::uint64_t>(cap + 1, total + continuations_[k_ - 1][s]);
  if (total > cap)
    throw Error(Errc::TooLarge, "|B_" + std::to_string(k_) + "| exceeds the word cap " + std::to_string(cap) +
                                    " (SFTLAB_MAX_WORDS)");
  size_ = static_cast<std::size_t>(total);
}

std::size_t WordSpace::rank(std::span<const Symbol> w) const {
  if (w.size() != k_ || !p_->is_admissible(w))
    throw Error(Errc::Inadmissible, "word is not an admissible word of length " + std::to_string(k_));
  std::uint64_t r = 0;
  for (Symbol s = 0; s < w[0]; ++s) r += continuations_[k_ - 1][s];
  for (std::size_t i = 1; i < k_; ++i)
    for (Symbol t : p_->successors(w[i - 1])) {
      if (t >= w[i]) break;
      r += continuations_[k_ - 1 - i][t];
    }
  return static_cast<std::size_t>(r);
}

Word WordSpace::unrank(std::size_t r) const {
  if (r >= size_) throw Error(Errc::InvalidArgument, "word rank out of range");
  Word w;
  std::uint64_t rest = r;
  const std::size_t n = p_->symbol_count();
  for (Symbol s = 0; s < n; ++s) {
    if (rest < continuations_[k_ - 1][s]) {
      w.push_back(s);
      break;
    }
    rest -= continuations_[k_ - 1][s];
  }
  for (std::size_t i = 1; i < k_; ++i)
    for (Symbol t : p_->successors(w.back())) {
      if (rest < continuations_[k_ - 1 - i][t]) {
        w.push_back(t);
        break;
      }
      rest -= continuations_[k_ - 1 - i][t];
    }
  return w;
}

void WordSpace::for_each(const std::function<void(std::size_t, const Word&)>& visit) const {
  Word w;
  w.reserve(k_);
  std::size_t r = 0;
  // Iterative DFS in lexicographic order.
  std::vector<std::size_t> next(k_, 0);
  const std::size_t n = p_->symbol_count();
  std::size_t depth = 0;
  while (true) {
    const std::size_t options = depth == 0 ? n : p_->successors(w.back()).size();
    if (next[depth] == options) {
      if (depth == 0) break;
      next[depth] = 0;
      --depth;
      w.pop_back();
      continue;
    }
    const Symbol s = depth == 0 ? static_cast<Symbol>(next[depth]) : p_->successors(w.back())[next[depth]];
    ++next[depth];
    w.push_back(s);
    if (depth + 1 == k_) {
      visit(r++, w);
      w.pop_back();
    } else {
      ++depth;
    }
  }
}

std::vector<Word> words(const PresentationPtr& p, std::size_t k) {
  WordSpace space(p, k);
  std::vector<Word> out;
  out.reserve(space.size());
  space.for_each([&](std::size_t, const Word& w) { out.push_back(w); });
  return out;
}

// ---------------------------------------------------------------------------

EventuallyPeriodicPoint EventuallyPeriodicPoint::make(const PresentationPtr& p, Word preperiod,
                                                      Word period) {
  if (period.empty()) throw Error(Errc::InvalidArgument, "period must be nonempty");
  Word check = preperiod;
  check.insert(check.end(), period.begin(), period.end());
  check.insert(check.end(), period.begin(), period.end());
  if (!p->is_admissible(check)) throw Error(Errc::Inadmissible, "point is not admissible");
  EventuallyPeriodicPoint x(std::move(preperiod), std::move(period));
  x.canonicalize();
  return x;
}

void EventuallyPeriodicPoint::canonicalize() {
  const std::size_t n = period_.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = period_[i] == period_[i - d];
    if (ok) {
      period_.resize(d);
      break;
    }
  }
  while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
    preperiod_.pop_back();
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
  }
}

Symbol EventuallyPeriodicPoint::at(std::size_t i) const {
  if (i < preperiod_.size()) return preperiod_[i];
  return period_[(i - preperiod_.size()) % period_.size()];
}

Word EventuallyPeriodicPoint::prefix(std::size_t n) const {
  Word w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = at(i);
  return w;
}

EventuallyPeriodicPoint EventuallyPeriodicPoint::shifted(std::size_t n) const {
  EventuallyPeriodicPoint x = *this;
  const std::size_t drop = std::min(n, x.preperiod_.size());
  x.preperiod_.erase(x.preperiod_.begin(), x.preperiod_.begin() + static_cast<long>(drop));
  const std::size_t rot = (n - drop) % x.period_.size();
  std::rotate(x.period_.begin(), x.period_.begin() + static_cast<long>(rot), x.period_.end());
  x.canonicalize();
  return x;
}

EventuallyPeriodicPoint EventuallyPeriodicPoint::prepended(const PresentationPtr& p,
                                                           std::span<const Symbol> w) const {
  Word u(w.begin(), w.end());
  u.insert(u.end(), preperiod_.begin(), preperiod_.end());
  return make(p, std::move(u), period_);
}

std::string EventuallyPeriodicPoint::to_string(const Presentation& p) const {
  return (preperiod_.empty() ? std::string() : p.format_word(preperiod_) + ":") + "(" +
         p.format_word(period_) + ")";
}

Point parse_point(const PresentationPtr& p, std::string_view text) {
  const std::size_t colon = text.find(':');
  auto strip = [](std::string_view s) {
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') return s.substr(1, s.size() - 2);
    return s;
  };
  if (colon == std::string_view::npos) return Point::make(p, {}, p->parse_word(strip(text)));
  return Point::make(p, p->parse_word(text.substr(0, colon)), p->parse_word(strip(text.substr(colon + 1))));
}

std::vector<Point> enumerate_points(const PresentationPtr& p, std::size_t max_pre, std::size_t max_period,
                                    std::size_t cap) {
  std::vector<Word> periods;
  for (std::size_t len = 1; len <= max_period; ++len) {
    for (const Word& v : words(p, len)) {
      if (!p->is_cyclically_admissible(v)) continue;
      bool primitive = true;
      for (std::size_t d = 1; d < len && primitive; ++d) {
        if (len % d != 0) continue;
        bool repeats = true;
        for (std::size_t i = d; i < len && repeats; ++i) repeats = v[i] == v[i - d];
        primitive = !repeats;
      }
      if (primitive) periods.push_back(v);
    }
  }
  std::vector<Point> out;
  for (std::size_t pre = 0; pre <= max_pre; ++pre) {
    const std::vector<Word> us = pre == 0 ? std::vector<Word>{Word{}} : words(p, pre);
    for (const Word& u : us)
      for (const Word& v : periods) {
        if (!u.empty() && (u.back() == v.back() || !p->follows(u.back(), v.front()))) continue;
        out.push_back(Point::make(p, u, v));
        if (out.size() >= cap) return out;
      }
  }
  return out;
}

Word cycle_through(const Presentation& p, Symbol s) {
  // BFS from the successors of s back to s.
  const std::size_t n = p.symbol_count();
  constexpr Symbol kNone = std::numeric_limits<Symbol>::max();
  std::vector<Symbol> parent(n, kNone);
  std::deque<Symbol> queue;
  for (Symbol t : p.successors(s)) {
    if (parent[t] != kNone) continue;
    parent[t] = t;
    queue.push_back(t);
  }
  while (!queue.empty()) {
    const Symbol u = queue.front();
    queue.pop_front();
    if (u == s) break;
    for (Symbol t : p.successors(u))
      if (parent[t] == kNone) {
        parent[t] = u;
        queue.push_back(t);
      }
  }
  Word path{s};
  Symbol cur = s;
  while (parent[cur] != cur) {
    cur = parent[cur];
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

HigherBlock higher_block(const PresentationPtr& p, std::size_t k) {
  WordSpace vertices(p, k);
  WordSpace edges(p, k + 1);
  if (vertices.size() > kMaxVertices)
    throw Error(Errc::TooLarge, "higher block graph would have " + std::to_string(vertices.size()) + " vertices");
  HigherBlock hb;
  hb.vertex_words = words(p, k);
  intlat::Matrix adj(vertices.size(), vertices.size());
  edges.for_each([&](std::size_t, const Word& w) {
    hb.edge_words.push_back(w);
    const std::span<const Symbol> all(w);
    adj(vertices.rank(all.first(k)), vertices.rank(all.last(k))) += 1;
  });
  hb.presentation = Presentation::validate(adj, PresentationKind::edge);
  return hb;
}

EdgeForm to_edge_form(const PresentationPtr& p) {
  if (p->kind() == PresentationKind::edge) return {p, {}};
  HigherBlock hb = higher_block(p, 1);
  EdgeForm ef{hb.presentation, {}};
  for (const Word& w : hb.edge_words) ef.symbol_pairs.emplace_back(w[0], w[1]);
  return ef;
}

}  // namespace sftlab
