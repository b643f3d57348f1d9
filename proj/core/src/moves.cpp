#include "sftlab/moves.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "sftlab/error.hpp"

namespace sftlab {

namespace {

std::string fresh_label(const Presentation& p) {
  std::string label = "0";
  while (p.symbol_of(label)) label += "'";
  return label;
}

}  // namespace

Expansion expand(const PresentationPtr& p, std::size_t vertex) {
  if (p->kind() != PresentationKind::vertex)
    throw Error(Errc::NotVertexKind, "expansion needs a vertex presentation");
  const std::size_t n = p->vertex_count();
  if (vertex >= n) throw Error(Errc::InvalidArgument, "expansion vertex out of range");
  const intlat::Matrix& A = p->adjacency();
  intlat::Matrix M(n + 1, n + 1);
  for (std::size_t j = 0; j < n; ++j) M(0, j + 1) = A(vertex, j);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == vertex) {
      M(i + 1, 0) = 1;
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) M(i + 1, j + 1) = A(i, j);
  }
  std::vector<std::string> labels{fresh_label(*p)};
  labels.insert(labels.end(), p->labels().begin(), p->labels().end());
  PresentationPtr big = Presentation::validate(M, PresentationKind::vertex, labels);

  const auto v = static_cast<Symbol>(vertex);
  std::vector<Word> xi_images(n);
  for (Symbol s = 0; s < n; ++s) xi_images[s] = s == v ? Word{s + 1, 0} : Word{s + 1};
  std::vector<Word> eta_images(n + 1);
  for (Symbol s = 1; s <= n; ++s) eta_images[s] = {s - 1};

  Function one_p = Function::one(p);
  Function one_big = Function::one(big);
  OrbitData xi_data{Function::zero(p), one_p + Function::indicator(p, {v})};
  OrbitData eta_data{Function::zero(big), one_big - Function::indicator(big, {0})};
  return Expansion{p,
                   vertex,
                   std::move(M),
                   big,
                   Transducer::substitution(p, big, xi_images),
                   Transducer::substitution(big, p, eta_images),
                   std::move(xi_data),
                   std::move(eta_data)};
}

Function psi_xi(const Expansion& e, const Function& f) {
  require_same(e.expanded, f.presentation(), "psi_xi");
  const std::size_t d = f.depth();
  const auto v = static_cast<Symbol>(e.vertex);
  return Function::tabulate(
      e.base, d + 1,
      [&](const Word& w) {
        const Word image = e.xi.run(w).output;
        const std::span<const Symbol> s(image);
        Rational value = f(s.first(d));
        if (w[0] == v) value += f(s.subspan(1, d));
        return value;
      },
      f.ring());
}

Function psi_eta(const Expansion& e, const Function& f) {
  require_same(e.base, f.presentation(), "psi_eta");
  const std::size_t d = f.depth();
  return Function::tabulate(
      e.expanded, 2 * d,
      [&](const Word& w) {
        if (w[0] == 0) return Rational(0);
        const Word image = e.eta.run(w).output;
        return f(std::span<const Symbol>(image).first(d));
      },
      f.ring());
}

// ---------------------------------------------------------------------------

namespace {

std::vector<EdgeInfo> enumerate_edges(const intlat::Matrix& m) {
  std::vector<EdgeInfo> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (unsigned long r = 0; r < m(i, j).get_ui(); ++r) out.push_back({i, j, r});
  return out;
}

// first[i][j] = index of the first edge from i to j.
std::vector<std::vector<std::size_t>> edge_offsets(const intlat::Matrix& m) {
  std::vector<std::vector<std::size_t>> first(m.rows(), std::vector<std::size_t>(m.cols()));
  std::size_t next = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      first[i][j] = next;
      next += m(i, j).get_ui();
    }
  return first;
}

// Matches the product edges of X Y with pairs (x-edge, y-edge).
std::vector<std::pair<std::size_t, std::size_t>> match_paths(const intlat::Matrix& X, const intlat::Matrix& Y,
                                                             const std::vector<EdgeInfo>& product_edges,
                                                             PairingOrder order) {
  const auto fx = edge_offsets(X);
  const auto fy = edge_offsets(Y);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(product_edges.size());
  std::size_t e = 0;
  while (e < product_edges.size()) {
    const std::size_t i = product_edges[e].source;
    const std::size_t j = product_edges[e].target;
    std::vector<std::pair<std::size_t, std::size_t>> paths;
    for (std::size_t k = 0; k < X.cols(); ++k)
      for (unsigned long a = 0; a < X(i, k).get_ui(); ++a)
        for (unsigned long b = 0; b < Y(k, j).get_ui(); ++b) paths.push_back({fx[i][k] + a, fy[k][j] + b});
    if (order == PairingOrder::reverse) std::reverse(paths.begin(), paths.end());
    for (const auto& path : paths) {
      if (e >= product_edges.size() || product_edges[e].source != i || product_edges[e].target != j)
        throw Error(Errc::InvalidResult, "edge count does not match the matrix product");
      out.push_back(path);
      ++e;
    }
  }
  return out;
}

PresentationPtr validate_product(const intlat::Matrix& m, const char* name) {
  try {
    return Presentation::validate(m, PresentationKind::edge);
  } catch (const Error& e) {
    throw Error(Errc::InvalidResult, std::string(name) + " is not a valid presentation: " + e.what());
  }
}

}  // namespace

ElementaryEquivalence elementary(const intlat::Matrix& C, const intlat::Matrix& D, PairingOrder order) {
  if (C.cols() != D.rows() || C.rows() != D.cols() || C.rows() == 0 || C.cols() == 0)
    throw Error(Errc::InvalidArgument, "C and D have incompatible shapes");
  if (!C.is_nonnegative() || !D.is_nonnegative())
    throw Error(Errc::NegativeEntry, "C and D must be nonnegative");
  ElementaryEquivalence ee;
  ee.C = C;
  ee.D = D;
  ee.A = C * D;
  ee.B = D * C;
  ee.order = order;
  ee.edge_a = validate_product(ee.A, "CD");
  ee.edge_b = validate_product(ee.B, "DC");
  const std::size_t n = C.rows();
  const std::size_t m = C.cols();
  ee.Z = intlat::Matrix(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      ee.Z(i, n + k) = C(i, k);
      ee.Z(n + k, i) = D(k, i);
    }
  const intlat::Matrix z2 = ee.Z * ee.Z;
  for (std::size_t i = 0; i < n + m; ++i)
    for (std::size_t j = 0; j < n + m; ++j) {
      Integer expect = 0;
      if (i < n && j < n) expect = ee.A(i, j);
      if (i >= n && j >= n) expect = ee.B(i - n, j - n);
      if (z2(i, j) != expect) throw Error(Errc::InvalidResult, "Z^2 is not diag(A, B)");
    }
  ee.c_edges = enumerate_edges(C);
  ee.d_edges = enumerate_edges(D);
  ee.a_pairs = match_paths(C, D, ee.edge_a->edges(), order);
  ee.b_pairs = match_paths(D, C, ee.edge_b->edges(), order);
  return ee;
}

namespace {

// Inverse of a pairing: (x-edge, y-edge) -> product edge.
std::map<std::pair<std::size_t, std::size_t>, Symbol> invert(const std::vector<std::pair<std::size_t, std::size_t>>& v) {
  std::map<std::pair<std::size_t, std::size_t>, Symbol> out;
  for (std::size_t e = 0; e < v.size(); ++e) out.emplace(v[e], static_cast<Symbol>(e));
  return out;
}

// Rewrites (x_1 y_1)(x_2 y_2)... into (y_1 x_2)(y_2 x_3)... and evaluates f.
Function rewrite(const PresentationPtr& from, const std::vector<std::pair<std::size_t, std::size_t>>& from_pairs,
                 const std::vector<std::pair<std::size_t, std::size_t>>& to_pairs, const Function& f) {
  const auto lookup = invert(to_pairs);
  const std::size_t d = f.depth();
  return Function::tabulate(
      from, d + 1,
      [&](const Word& w) {
        Word image(d);
        for (std::size_t i = 0; i < d; ++i) image[i] = lookup.at({from_pairs[w[i]].second, from_pairs[w[i + 1]].first});
        return f(image);
      },
      f.ring());
}

}  // namespace

Function phi(const ElementaryEquivalence& ee, const Function& f) {
  require_same(ee.edge_a, f.presentation(), "phi");
  return rewrite(ee.edge_b, ee.b_pairs, ee.a_pairs, f);
}

Function psi(const ElementaryEquivalence& ee, const Function& g) {
  require_same(ee.edge_b, g.presentation(), "psi");
  return rewrite(ee.edge_a, ee.a_pairs, ee.b_pairs, g);
}

// ---------------------------------------------------------------------------

namespace {

bool valid_edge_matrix(const intlat::Matrix& m) {
  try {
    Presentation::validate(m, PresentationKind::edge);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// Calls visit(v) for each v in [0, bound]^len, in lexicographic order.
template <typename Visit>
void for_each_vector(std::size_t len, long bound, Visit&& visit) {
  std::vector<long> v(len, 0);
  while (true) {
    visit(v);
    std::size_t i = len;
    while (i > 0 && v[i - 1] == bound) v[--i] = 0;
    if (i == 0) return;
    ++v[i - 1];
  }
}

// All D with C D = X and entries in [0, bound].
std::vector<intlat::Matrix> solve_factor(const intlat::Matrix& C, const intlat::Matrix& X, long bound) {
  const std::size_t n = C.rows();
  const std::size_t m = C.cols();
  std::vector<std::vector<std::vector<long>>> columns(X.cols());
  for (std::size_t j = 0; j < X.cols(); ++j) {
    for_each_vector(m, bound, [&](const std::vector<long>& d) {
      for (std::size_t i = 0; i < n; ++i) {
        Integer s = 0;
        for (std::size_t k = 0; k < m; ++k) s += C(i, k) * d[k];
        if (s != X(i, j)) return;
      }
      columns[j].push_back(d);
    });
    if (columns[j].empty()) return {};
  }
  std::vector<intlat::Matrix> out;
  std::vector<std::size_t> pick(X.cols(), 0);
  while (true) {
    intlat::Matrix D(m, X.cols());
    for (std::size_t j = 0; j < X.cols(); ++j)
      for (std::size_t k = 0; k < m; ++k) D(k, j) = columns[j][pick[j]][k];
    out.push_back(std::move(D));
    std::size_t j = X.cols();
    while (j > 0 && pick[j - 1] + 1 == columns[j - 1].size()) pick[--j] = 0;
    if (j == 0) break;
    ++pick[j - 1];
  }
  return out;
}

}  // namespace

SseSearchResult sse_search(const intlat::Matrix& A, const intlat::Matrix& B, const SseSearchOptions& options) {
  SseSearchResult result;
  struct Node {
    intlat::Matrix matrix;
    std::size_t parent;
    intlat::Matrix C;
    intlat::Matrix D;
    std::size_t depth;
  };
  std::vector<Node> nodes{{A, 0, {}, {}, 0}};
  auto known = [&](const intlat::Matrix& m) {
    return std::any_of(nodes.begin(), nodes.end(), [&](const Node& n) { return n.matrix == m; });
  };
  auto finish = [&](std::size_t at) {
    std::vector<std::size_t> path;
    for (; at != 0; at = nodes[at].parent) path.push_back(at);
    std::reverse(path.begin(), path.end());
    intlat::Matrix current = A;
    for (std::size_t i : path) {
      ElementaryEquivalence ee = elementary(nodes[i].C, nodes[i].D);
      if (!(ee.A == current)) throw Error(Errc::InvalidResult, "sse chain does not connect");
      current = ee.B;
      result.chain.push_back(std::move(ee));
    }
    if (!(current == B)) throw Error(Errc::InvalidResult, "sse chain does not end at B");
    result.found = true;
  };
  if (A == B) {
    result.explored = 1;
    result.found = true;
    return result;
  }
  for (std::size_t at = 0; at < nodes.size(); ++at) {
    if (nodes[at].depth >= options.chain_bound) continue;
    const intlat::Matrix X = nodes[at].matrix;
    const std::size_t n = X.rows();
    for (std::size_t m = 1; m <= options.inner_dim_bound; ++m) {
      bool stop = false;
      for_each_vector(n * m, options.entry_bound, [&](const std::vector<long>& entries) {
        if (stop) return;
        intlat::Matrix C(n, m);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t k = 0; k < m; ++k) C(i, k) = entries[i * m + k];
        for (std::size_t k = 0; k < m; ++k) {
          bool zero = true;
          for (std::size_t i = 0; i < n; ++i) zero = zero && C(i, k) == 0;
          if (zero) return;
        }
        for (intlat::Matrix& D : solve_factor(C, X, options.entry_bound)) {
          intlat::Matrix Y = D * C;
          if (known(Y) || !valid_edge_matrix(Y)) continue;
          nodes.push_back({std::move(Y), at, C, std::move(D), nodes[at].depth + 1});
          if (nodes.back().matrix == B) {
            finish(nodes.size() - 1);
            stop = true;
            return;
          }
          if (nodes.size() >= options.node_cap) {
            result.exhausted = true;
            stop = true;
            return;
          }
        }
      });
      if (stop) {
        result.explored = nodes.size();
        return result;
      }
    }
  }
  result.explored = nodes.size();
  return result;
}

}  // namespace sftlab
