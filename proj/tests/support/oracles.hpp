#ifndef SFTLAB_TESTS_ORACLES_HPP_
#define SFTLAB_TESTS_ORACLES_HPP_

// Slow, obviously-correct reference computations used to check the library.
// None of these share code with the implementations they check.

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "sftlab/cohomology.hpp"
#include "sftlab/function.hpp"
#include "sftlab/intlat.hpp"
#include "sftlab/sft.hpp"

namespace oracle {

using sftlab::Integer;
using sftlab::Rational;
using sftlab::Symbol;
using sftlab::Word;
using sftlab::intlat::Matrix;

/// Determinant by cofactor expansion along the first row.
inline Integer cofactor_det(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(std::move(row));
    }
    const Integer term = m[0][j] * cofactor_det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

inline Integer cofactor_det(const Matrix& a) {
  std::vector<std::vector<Integer>> m(a.rows(), std::vector<Integer>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
  return cofactor_det(m);
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (cur.size() == k) {
    visit(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, visit);
    cur.pop_back();
  }
}

/// Invariant factors from determinantal divisors: D_k = gcd of all k x k
/// minors, d_k = D_k / D_{k-1}. Returns the nonzero factors (units included).
inline std::vector<Integer> minor_gcd_factors(const Matrix& a) {
  std::vector<Integer> out;
  Integer prev = 1;
  const std::size_t kmax = std::min(a.rows(), a.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    Integer g = 0;
    std::vector<std::size_t> rows_cur, cols_cur;
    subsets(a.rows(), k, 0, rows_cur, [&](const std::vector<std::size_t>& rs) {
      std::vector<std::size_t> cs_cur;
      subsets(a.cols(), k, 0, cs_cur, [&](const std::vector<std::size_t>& cs) {
        std::vector<std::vector<Integer>> m(k, std::vector<Integer>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = a(rs[i], cs[j]);
        const Integer d = cofactor_det(m);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      });
    });
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

/// Paths with k edges, i.e. the sum of the entries of A^k. This is |B_k| of
/// the edge shift and |B_{k+1}| of the vertex shift.
inline Integer edge_path_count(const Matrix& a, std::size_t k) {
  const std::size_t n = a.rows();
  std::vector<Integer> v(n, Integer(1));
  for (std::size_t step = 0; step < k; ++step) {
    std::vector<Integer> next(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[i] += a(i, j) * v[j];
    v = std::move(next);
  }
  return std::accumulate(v.begin(), v.end(), Integer(0));
}

/// Number of vertex paths with k vertices in a 0-1 graph.
inline Integer vertex_path_count(const Matrix& a, std::size_t k) {
  return k == 0 ? Integer(1) : edge_path_count(a, k - 1);
}

/// All words of length k over n symbols that pass `allowed` on every
/// adjacent pair, by brute force over n^k sequences.
inline std::vector<Word> brute_words(std::size_t n, std::size_t k, const std::function<bool(Symbol, Symbol)>& allowed) {
  std::vector<Word> out;
  Word w(k, 0);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < k && ok; ++i) ok = allowed(w[i], w[i + 1]);
    if (ok) out.push_back(w);
    std::size_t i = k;
    while (i > 0 && w[i - 1] + 1 == n) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }
  return out;
}

/// Every simple cycle of the depth-d potential graph, as the cycle word of
/// first symbols. Exponential; only for small graphs.
inline std::vector<Word> simple_cycles(const sftlab::PotentialGraph& g) {
  std::vector<Word> out;
  const std::size_t n = g.vertex_count;
  std::vector<bool> on_path(n, false);
  Word word;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t v) {
    for (std::size_t e : g.out_edges[v]) {
      const std::size_t h = g.edges[e].head;
      if (h < start) continue;
      word.push_back(g.edges[e].first);
      if (h == start) {
        out.push_back(word);
      } else if (!on_path[h]) {
        on_path[h] = true;
        dfs(start, h);
        on_path[h] = false;
      }
      word.pop_back();
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    on_path[s] = true;
    dfs(s, s);
    on_path[s] = false;
  }
  return out;
}

/// f evaluated directly on a periodic orbit, symbol by symbol.
inline Rational direct_orbit_sum(const sftlab::Function& f, const Word& cycle) {
  Rational s = 0;
  const std::size_t d = f.depth();
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    Word window;
    for (std::size_t j = 0; j < d; ++j) window.push_back(cycle[(i + j) % cycle.size()]);
    s += f(window);
  }
  return s;
}

/// The first n symbols of u v v v ...
inline Word stream(const Word& u, const Word& v, std::size_t n) {
  Word out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(i < u.size() ? u[i] : v[(i - u.size()) % v.size()]);
  return out;
}

}  // namespace oracle

#endif  // SFTLAB_TESTS_ORACLES_HPP_
