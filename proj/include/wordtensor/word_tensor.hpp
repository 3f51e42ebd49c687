#pragma once

#include <array>
#include <map>
#include <vector>

#include "wordtensor/bsc.hpp"
#include "wordtensor/fusion.hpp"
#include "wordtensor/word.hpp"

namespace wt {

using Triple = std::array<int, 3>;  // (phi, psi, zeta) bsc indices

// The 0/1 word tensor delta_{G,w}: entry 1 at (a, b, w(a,b)). Stored as the
// |G|^2 result table; dense |G|^3 views are produced on demand.
struct WordTensor {
  const FiniteGroup* group = nullptr;
  Word word;
  std::vector<std::vector<Element>> result;  // result[a][b] = w(a,b)

  int order() const { return group->order(); }
  double norm_sq() const {
    return static_cast<double>(order()) * order();
  }
  // Rank of the defining sum of |G|^2 elementary tensors.
  long long naive_rank_bound() const {
    return static_cast<long long>(order()) * order();
  }
};

WordTensor word_tensor(const FiniteGroup& g, const Word& w);

enum class SupportKind { Exact, CFC };

struct SupportSet {
  SupportKind kind = SupportKind::Exact;
  std::vector<Triple> triples;             // sorted
  std::map<Triple, double> norms;          // squared projection norms (Exact)

  bool contains(const Triple& t) const {
    return std::binary_search(triples.begin(), triples.end(), t);
  }
};

// Exact bsc^3-support: squared norms of the orthogonal projections of the
// tensor onto R_phi (x) R_psi (x) R_zeta, streamed one output-basis slice at
// a time. A triple enters the support iff norm^2 > tau * ||T||^2.
SupportSet exact_bsc3_support(const WordTensor& t, const BscSystem& sys,
                              double tau = tol::kTensorSupport);

// Combinatorial fusion cover from the fusion structure alone.
SupportSet cfc_support(const FiniteGroup& g, const Word& w,
                       const BscSystem& sys);

// Dense |G|^3 single-bsc projection of the multiplication tensor:
// entries (D/(d |G|)) chi_phi(a b c^-1), flattened as ((a*n)+b)*n+c.
std::vector<double> single_bsc_projection(const BscSystem& sys, int bsc);

struct RankBounds {
  long long naive_sum = 0;       // sum over support of min2{D} (finest cover)
  long long corollary_bound = 0; // |G|(|G|-1)+1
};
RankBounds rank_upper_bounds(const BscSystem& sys, const SupportSet& support);

}  // namespace wt
