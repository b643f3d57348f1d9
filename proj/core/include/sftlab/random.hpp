#ifndef SFTLAB_RANDOM_HPP_
#define SFTLAB_RANDOM_HPP_

// Seeded generators for property tests and the CLI self-test. Bounded
// integers use rejection sampling on the raw 64-bit stream so a seed gives
// the same instances on every platform.

#include <cstdint>
#include <limits>
#include <random>

#include "sftlab/error.hpp"
#include "sftlab/function.hpp"
#include "sftlab/intlat.hpp"
#include "sftlab/sft.hpp"

namespace sftlab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [lo, hi].
  long uniform(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<long>(engine_());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t r;
    do r = engine_();
    while (r >= limit);
    return lo + static_cast<long>(r % span);
  }
  bool coin(long num, long den) { return uniform(0, den - 1) < num; }

 private:
  std::mt19937_64 engine_;
};

/// Irreducible, non-permutation 0-1 matrix with 1 <= n <= max_n.
inline PresentationPtr random_vertex_presentation(Rng& rng, std::size_t max_n, std::size_t min_n = 1) {
  while (true) {
    const auto n = static_cast<std::size_t>(rng.uniform(static_cast<long>(min_n), static_cast<long>(max_n)));
    const long density = rng.uniform(30, 70);
    intlat::Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.coin(density, 100) ? 1 : 0;
    try {
      return Presentation::validate(m, PresentationKind::vertex);
    } catch (const Error&) {
    }
  }
}

/// Irreducible, non-permutation nonnegative matrix with entries <= max_entry.
inline PresentationPtr random_edge_presentation(Rng& rng, std::size_t max_n, long max_entry) {
  while (true) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_n)));
    intlat::Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.coin(1, 2) ? rng.uniform(1, max_entry) : 0;
    try {
      return Presentation::validate(m, PresentationKind::edge);
    } catch (const Error&) {
    }
  }
}

/// Integer-valued function of depth in [1, max_depth] with values in [lo, hi].
inline Function random_function(Rng& rng, const PresentationPtr& p, std::size_t max_depth, long lo, long hi) {
  const auto depth = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_depth)));
  return Function::tabulate(p, depth, [&](const Word&) { return Rational(rng.uniform(lo, hi)); });
}

/// Random nonnegative matrix of the given shape with entries <= max_entry.
inline intlat::Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long max_entry) {
  intlat::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(0, max_entry);
  return m;
}

/// Random admissible word of length n.
inline Word random_word(Rng& rng, const Presentation& p, std::size_t n) {
  Word w;
  if (n == 0) return w;
  w.push_back(static_cast<Symbol>(rng.uniform(0, static_cast<long>(p.symbol_count()) - 1)));
  while (w.size() < n) {
    const auto succ = p.successors(w.back());
    w.push_back(succ[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(succ.size()) - 1))]);
  }
  return w;
}

/// Random eventually periodic point: preperiod <= max_pre, period <= max_period.
inline Point random_point(Rng& rng, const PresentationPtr& p, std::size_t max_pre, std::size_t max_period) {
  while (true) {
    const auto pre = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(max_pre)));
    const auto per = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_period)));
    Word w = random_word(rng, *p, pre + per);
    Word u(w.begin(), w.begin() + static_cast<long>(pre));
    Word v(w.begin() + static_cast<long>(pre), w.end());
    if (p->is_cyclically_admissible(v)) return Point::make(p, std::move(u), std::move(v));
  }
}

}  // namespace sftlab

#endif  // SFTLAB_RANDOM_HPP_
