#pragma once

#include <cstdint>
#include <vector>

#include "wordtensor/word_tensor.hpp"

namespace wt {

// A box Phi x Psi x Xi of bsc-index subsets, all non-empty.
struct Box {
  std::vector<int> phi, psi, xi;  // sorted

  bool contains(const Triple& t) const;
  bool subset_of(const Box& other) const;
  bool operator==(const Box& other) const = default;
  bool operator<(const Box& other) const;
};

struct BoxSet {
  std::vector<Box> boxes;

  int size() const { return static_cast<int>(boxes.size()); }
};

// min2{a, b, c} = min(ab, ac, bc) over summed coefficient-space dimensions.
long long box_rank(const Box& b, const std::vector<int>& dims);
long long boxset_rank(const BoxSet& bs, const std::vector<int>& dims);

bool covers(const BoxSet& bs, const std::vector<Triple>& support);
// Each box of `bs` contained in some box of `other`.
bool dominated_by(const BoxSet& bs, const BoxSet& other);
// Domination with an injective assignment (bipartite matching).
bool smaller_than(const BoxSet& bs, const BoxSet& other);
// At most one of the three components of each box is the full bsc set.
bool is_thin(const BoxSet& bs, int num_bscs);

enum class SolveMode { Exact, Heuristic };

struct BoxRankSolution {
  BoxSet cover;
  long long rank = 0;
  bool optimal = false;
  long long finest = 0;     // rank of the singleton cover (= naive_sum)
  long long coarsest = 0;   // rank of the single bounding box
};

// Minimize box-set rank over covers of the support. The search space is
// partitions of the support into groups replaced by their bounding boxes
// (shrinking a box never increases its rank, so partitions suffice).
// Exact: branch-and-bound, optimal, |support| <= 16. Heuristic: greedy
// agglomerative merging plus seeded local search over a fixed move budget;
// warm-start box-sets (e.g. published covers) join the candidate pool.
BoxRankSolution minimize_box_rank(const std::vector<Triple>& support,
                                  const std::vector<int>& dims, SolveMode mode,
                                  std::uint64_t seed = 0,
                                  const std::vector<BoxSet>& warm_starts = {});

// Oracle used by tests: exhaustive enumeration of all set partitions.
BoxRankSolution minimize_box_rank_bruteforce(const std::vector<Triple>& support,
                                             const std::vector<int>& dims);

}  // namespace wt
