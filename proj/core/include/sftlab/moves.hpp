#ifndef SFTLAB_MOVES_HPP_
#define SFTLAB_MOVES_HPP_

// Matrix moves: elementary equivalence A = CD, B = DC with the transfer maps
// phi and psi, and the Parry-Sullivan expansion with xi, eta, Psi_xi, Psi_eta.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sftlab/function.hpp"
#include "sftlab/intlat.hpp"
#include "sftlab/sft.hpp"
#include "sftlab/transducer.hpp"

namespace sftlab {

/// Expansion of a vertex presentation at `vertex` (0-based). The expanded
/// alphabet puts the new symbol first: symbol 0 is new, symbol i + 1 is the
/// original symbol i. With vertex v the expanded matrix has
///   row 0     = (0, A(v, .)),
///   row v + 1 = (1, 0, ..., 0),
///   row i + 1 = (0, A(i, .))  otherwise,
/// which for v = 0 is the textbook pattern with every index shifted by one.
struct Expansion {
  PresentationPtr base;
  std::size_t vertex = 0;
  intlat::Matrix matrix;
  PresentationPtr expanded;
  /// x -> x with v replaced by the word v 0.
  Transducer xi;
  /// Deletes the new symbol.
  Transducer eta;
  OrbitData xi_data;   // k = 0, l = 2 on U_v and 1 elsewhere
  OrbitData eta_data;  // k = 0, l = 0 on U_0 and 1 elsewhere
};

/// Throws NotVertexKind for edge presentations.
Expansion expand(const PresentationPtr& p, std::size_t vertex = 0);

/// Psi_xi(f)(x) = f(xi x) + [x_1 = v] f(sigma xi x), f on the expanded shift.
Function psi_xi(const Expansion& e, const Function& f);
/// Psi_eta(f)(y) = 0 on U_0 and f(eta y) elsewhere, f on the base shift.
Function psi_eta(const Expansion& e, const Function& f);

/// How the A-edges from i to j are matched with the paths c d through the
/// intermediate vertices. The two orders differ by an automorphism of the
/// edge shift, so phi images can land in different classes.
enum class PairingOrder { lexicographic, reverse };

struct ElementaryEquivalence {
  intlat::Matrix C;  // N x M
  intlat::Matrix D;  // M x N
  intlat::Matrix A;  // C D
  intlat::Matrix B;  // D C
  intlat::Matrix Z;  // [[0, C], [D, 0]]
  /// Edge shifts of A and B; functions for phi and psi live on these.
  PresentationPtr edge_a;
  PresentationPtr edge_b;
  /// C-edges (i, k, r) and D-edges (k, j, r) in lexicographic order.
  std::vector<EdgeInfo> c_edges;
  std::vector<EdgeInfo> d_edges;
  /// A-edge -> (C-edge, D-edge) and B-edge -> (D-edge, C-edge).
  std::vector<std::pair<std::size_t, std::size_t>> a_pairs;
  std::vector<std::pair<std::size_t, std::size_t>> b_pairs;
  PairingOrder order = PairingOrder::lexicographic;
};

/// Throws InvalidResult when CD or DC is not a valid presentation and
/// InvalidArgument for negative entries or mismatched shapes.
ElementaryEquivalence elementary(const intlat::Matrix& C, const intlat::Matrix& D,
                                 PairingOrder order = PairingOrder::lexicographic);

/// phi(f)(y) = f((c_1 d_2)(c_2 d_3)...) for y = (d_1 c_1)(d_2 c_2)... on X_B.
Function phi(const ElementaryEquivalence& ee, const Function& f);
/// psi(g)(x) = g((d_1 c_2)(d_2 c_3)...) for x = (c_1 d_1)(c_2 d_2)... on X_A.
Function psi(const ElementaryEquivalence& ee, const Function& g);

struct SseSearchOptions {
  std::size_t inner_dim_bound = 3;
  long entry_bound = 2;
  std::size_t chain_bound = 2;
  /// Stops after this many distinct intermediate matrices.
  std::size_t node_cap = 20000;
};

struct SseSearchResult {
  bool found = false;
  /// A = C_1 D_1, D_1 C_1 = C_2 D_2, ..., D_t C_t = B.
  std::vector<ElementaryEquivalence> chain;
  std::size_t explored = 0;
  bool exhausted = false;  // true if the node cap cut the search short
};

/// Bounded breadth-first search for a chain of elementary equivalences.
/// Failure to find one says nothing about strong shift equivalence.
SseSearchResult sse_search(const intlat::Matrix& A, const intlat::Matrix& B, const SseSearchOptions& options = {});

}  // namespace sftlab

#endif  // SFTLAB_MOVES_HPP_
