#ifndef SFTLAB_TESTS_COMMON_HPP_
#define SFTLAB_TESTS_COMMON_HPP_

#include <cstdlib>
#include <string>

#include "sftlab/function.hpp"
#include "sftlab/intlat.hpp"
#include "sftlab/sft.hpp"

namespace testing {

using namespace sftlab;

inline PresentationPtr fibonacci() {
  return Presentation::validate(intlat::Matrix::from_rows({{1, 1}, {1, 0}}), PresentationKind::vertex);
}

inline PresentationPtr full_shift(long n, PresentationKind kind = PresentationKind::vertex) {
  if (kind == PresentationKind::edge) return Presentation::validate(intlat::Matrix::from_rows({{n}}), kind);
  intlat::Matrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = 1;
  return Presentation::validate(m, kind);
}

inline Word word(const PresentationPtr& p, const std::string& text) { return p->parse_word(text); }

/// Base seed for property tests; override with SFTLAB_TEST_SEED.
inline std::uint64_t test_seed() {
  if (const char* s = std::getenv("SFTLAB_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611;
}

// Raises SFTLAB_MAX_WORDS for the lifetime of the guard. The phi/psi round
// trip on 4x4 factors with entries up to 2 can need a few million depth-4 words.
class ScopedWordCap {
 public:
  explicit ScopedWordCap(const std::string& cap) {
    if (const char* old = std::getenv("SFTLAB_MAX_WORDS")) previous_ = old;
    setenv("SFTLAB_MAX_WORDS", cap.c_str(), 1);
  }
  ~ScopedWordCap() {
    if (previous_.empty()) unsetenv("SFTLAB_MAX_WORDS");
    else setenv("SFTLAB_MAX_WORDS", previous_.c_str(), 1);
  }
  ScopedWordCap(const ScopedWordCap&) = delete;
  ScopedWordCap& operator=(const ScopedWordCap&) = delete;

 private:
  std::string previous_;
};

}  // namespace testing

#endif  // SFTLAB_TESTS_COMMON_HPP_
