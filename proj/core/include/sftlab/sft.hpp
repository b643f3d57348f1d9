#ifndef SFTLAB_SFT_HPP_
#define SFTLAB_SFT_HPP_

// Presentations of one-sided topological Markov shifts, admissible words and
// eventually periodic points.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sftlab/intlat.hpp"

namespace sftlab {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

enum class PresentationKind { vertex, edge };
std::string_view kind_name(PresentationKind k);

/// Upper bound on |B_k| for any enumeration. Reads SFTLAB_MAX_WORDS once,
/// default 10^6.
std::size_t max_words();
/// Largest supported vertex count.
inline constexpr std::size_t kMaxVertices = 64;

struct EdgeInfo {
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t parallel = 0;
};

class Presentation;
using PresentationPtr = std::shared_ptr<const Presentation>;

/// A validated presentation: irreducible, not a permutation matrix, and in
/// vertex form all entries are 0 or 1. Symbols are indices 0..symbol_count-1;
/// labels are what users see (vertex form defaults to "1".."N", edge form to
/// "1".."|E|" in (source, target, parallel) order).
class Presentation {
 public:
  static PresentationPtr validate(const intlat::Matrix& adjacency, PresentationKind kind,
                                  std::vector<std::string> labels = {});

  PresentationKind kind() const { return kind_; }
  std::size_t vertex_count() const { return adjacency_.rows(); }
  const intlat::Matrix& adjacency() const { return adjacency_; }
  std::size_t symbol_count() const { return successors_.size(); }

  /// Symbols that may follow s, ascending.
  std::span<const Symbol> successors(Symbol s) const { return successors_[s]; }
  std::span<const Symbol> predecessors(Symbol s) const { return predecessors_[s]; }
  bool follows(Symbol a, Symbol b) const;

  /// Edge form only.
  const std::vector<EdgeInfo>& edges() const { return edges_; }

  /// Irreducibility certificate on the vertex graph: parent of each vertex in
  /// a BFS out-arborescence and in-arborescence rooted at vertex 0.
  const std::vector<std::size_t>& out_tree() const { return out_tree_; }
  const std::vector<std::size_t>& in_tree() const { return in_tree_; }

  const std::string& label(Symbol s) const { return labels_[s]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Symbol> symbol_of(std::string_view label) const;

  bool is_admissible(std::span<const Symbol> w) const;
  /// w and w.w both admissible (w nonempty).
  bool is_cyclically_admissible(std::span<const Symbol> w) const;

  /// Labels concatenated when every label is a single character, joined by
  /// '.' otherwise.
  std::string format_word(std::span<const Symbol> w) const;
  /// Inverse of format_word; also accepts '.'-separated input. The empty word
  /// is written "-".
  Word parse_word(std::string_view text) const;

  /// Same kind, adjacency and labels.
  bool same_as(const Presentation& other) const;

 private:
  Presentation() = default;

  PresentationKind kind_ = PresentationKind::vertex;
  intlat::Matrix adjacency_;
  std::vector<EdgeInfo> edges_;
  std::vector<std::vector<Symbol>> successors_;
  std::vector<std::vector<Symbol>> predecessors_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> out_tree_;
  std::vector<std::size_t> in_tree_;
  bool single_char_labels_ = true;
};

bool same_presentation(const PresentationPtr& a, const PresentationPtr& b);
/// Throws PresentationMismatch unless same_presentation(a, b).
void require_same(const PresentationPtr& a, const PresentationPtr& b, std::string_view what);

/// B_k in frozen lexicographic order of symbol indices, with O(k * |symbols|)
/// ranking in both directions.
class WordSpace {
 public:
  WordSpace(PresentationPtr p, std::size_t k);

  const PresentationPtr& presentation() const { return p_; }
  std::size_t length() const { return k_; }
  std::size_t size() const { return size_; }

  /// Position of an admissible word of length k; throws Inadmissible.
  std::size_t rank(std::span<const Symbol> w) const;
  Word unrank(std::size_t r) const;

  /// Visits every word in order together with its rank.
  void for_each(const std::function<void(std::size_t, const Word&)>& visit) const;

 private:
  PresentationPtr p_;
  std::size_t k_;
  std::size_t size_ = 0;
  // continuations_[m][s]: admissible words of length m+1 starting with s.
  std::vector<std::vector<std::uint64_t>> continuations_;
};

/// All of B_k in frozen order.
std::vector<Word> words(const PresentationPtr& p, std::size_t k);

/// u v v v ... with u possibly empty and v nonempty, kept in canonical form:
/// v primitive and u as short as possible.
class EventuallyPeriodicPoint {
 public:
  static EventuallyPeriodicPoint make(const PresentationPtr& p, Word preperiod, Word period);

  const Word& preperiod() const { return preperiod_; }
  const Word& period() const { return period_; }
  Symbol at(std::size_t i) const;
  /// First n symbols.
  Word prefix(std::size_t n) const;

  EventuallyPeriodicPoint shifted(std::size_t n = 1) const;
  /// w followed by this point; w.x must be admissible.
  EventuallyPeriodicPoint prepended(const PresentationPtr& p, std::span<const Symbol> w) const;

  bool operator==(const EventuallyPeriodicPoint&) const = default;
  std::string to_string(const Presentation& p) const;

 private:
  EventuallyPeriodicPoint(Word u, Word v) : preperiod_(std::move(u)), period_(std::move(v)) {}
  void canonicalize();

  Word preperiod_;
  Word period_;
};

using Point = EventuallyPeriodicPoint;

/// Parses "u:v" (or "v" for a periodic point) with words in label syntax.
Point parse_point(const PresentationPtr& p, std::string_view text);

/// Every canonical point with |preperiod| <= max_pre and |period| <= max_period,
/// shortest first, stopping after `cap` points.
std::vector<Point> enumerate_points(const PresentationPtr& p, std::size_t max_pre,
                                    std::size_t max_period, std::size_t cap);

/// A shortest cyclically admissible word through s (ending in s).
Word cycle_through(const Presentation& p, Symbol s);

struct HigherBlock {
  PresentationPtr presentation;     // edge form, vertices B_k, edges B_{k+1}
  std::vector<Word> vertex_words;   // vertex i <-> B_k word of rank i
  std::vector<Word> edge_words;     // edge symbol e <-> B_{k+1} word of rank e
};

HigherBlock higher_block(const PresentationPtr& p, std::size_t k);

struct EdgeForm {
  PresentationPtr presentation;
  /// For a vertex input: edge symbol e <-> the admissible pair symbol_pairs[e].
  /// Empty for an edge input (identity map).
  std::vector<std::pair<Symbol, Symbol>> symbol_pairs;
};

EdgeForm to_edge_form(const PresentationPtr& p);

}  // namespace sftlab

#endif  // SFTLAB_SFT_HPP_
