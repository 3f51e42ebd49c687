#include "wordtensor/boxes.hpp"

#include <algorithm>
#include <stdexcept>

#include "wordtensor/rng.hpp"

namespace wt {

namespace {

bool sorted_contains(const std::vector<int>& v, int x) {
  return std::binary_search(v.begin(), v.end(), x);
}

bool sorted_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

long long min2(long long a, long long b, long long c) {
  return std::min({a * b, a * c, b * c});
}

long long dim_sum(const std::vector<int>& set, const std::vector<int>& dims) {
  long long s = 0;
  for (int i : set) s += dims[i];
  return s;
}

}  // namespace

bool Box::contains(const Triple& t) const {
  return sorted_contains(phi, t[0]) && sorted_contains(psi, t[1]) &&
         sorted_contains(xi, t[2]);
}

bool Box::subset_of(const Box& other) const {
  return sorted_subset(phi, other.phi) && sorted_subset(psi, other.psi) &&
         sorted_subset(xi, other.xi);
}

bool Box::operator<(const Box& other) const {
  if (phi != other.phi) return phi < other.phi;
  if (psi != other.psi) return psi < other.psi;
  return xi < other.xi;
}

long long box_rank(const Box& b, const std::vector<int>& dims) {
  if (b.phi.empty() || b.psi.empty() || b.xi.empty())
    throw std::invalid_argument("box_rank: empty component set");
  return min2(dim_sum(b.phi, dims), dim_sum(b.psi, dims), dim_sum(b.xi, dims));
}

long long boxset_rank(const BoxSet& bs, const std::vector<int>& dims) {
  long long s = 0;
  for (const Box& b : bs.boxes) s += box_rank(b, dims);
  return s;
}

bool covers(const BoxSet& bs, const std::vector<Triple>& support) {
  for (const Triple& t : support) {
    bool hit = false;
    for (const Box& b : bs.boxes)
      if (b.contains(t)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

bool dominated_by(const BoxSet& bs, const BoxSet& other) {
  for (const Box& b : bs.boxes) {
    bool hit = false;
    for (const Box& o : other.boxes)
      if (b.subset_of(o)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

namespace {

// Hopcroft-Karp is overkill at these sizes; augmenting paths suffice.
bool try_augment(int u, const std::vector<std::vector<int>>& adj,
                 std::vector<int>& match_right, std::vector<char>& visited) {
  for (int v : adj[u]) {
    if (visited[v]) continue;
    visited[v] = 1;
    if (match_right[v] < 0 ||
        try_augment(match_right[v], adj, match_right, visited)) {
      match_right[v] = u;
      return true;
    }
  }
  return false;
}

}  // namespace

bool smaller_than(const BoxSet& bs, const BoxSet& other) {
  int n = bs.size(), m = other.size();
  if (n > m) return false;
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (bs.boxes[i].subset_of(other.boxes[j])) adj[i].push_back(j);
  std::vector<int> match_right(m, -1);
  for (int i = 0; i < n; ++i) {
    std::vector<char> visited(m, 0);
    if (!try_augment(i, adj, match_right, visited)) return false;
  }
  return true;
}

bool is_thin(const BoxSet& bs, int num_bscs) {
  for (const Box& b : bs.boxes) {
    int full = 0;
    full += static_cast<int>(b.phi.size()) == num_bscs;
    full += static_cast<int>(b.psi.size()) == num_bscs;
    full += static_cast<int>(b.xi.size()) == num_bscs;
    if (full > 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Solver internals: partitions of the support with bitmask bounding boxes.

namespace {

struct Group {
  std::uint64_t a = 0, b = 0, c = 0;
  long long da = 0, db = 0, dc = 0;
  long long rank = 0;
};

struct Instance {
  std::vector<Triple> support;
  const std::vector<int>* dims;
  int nb = 0;

  long long add_cost(const Group& g, const Triple& t) const {
    const auto& d = *dims;
    long long da = g.da + ((g.a >> t[0]) & 1 ? 0 : d[t[0]]);
    long long db = g.db + ((g.b >> t[1]) & 1 ? 0 : d[t[1]]);
    long long dc = g.dc + ((g.c >> t[2]) & 1 ? 0 : d[t[2]]);
    return min2(da, db, dc) - g.rank;
  }
  void add(Group& g, const Triple& t) const {
    const auto& d = *dims;
    if (!((g.a >> t[0]) & 1)) g.da += d[t[0]];
    if (!((g.b >> t[1]) & 1)) g.db += d[t[1]];
    if (!((g.c >> t[2]) & 1)) g.dc += d[t[2]];
    g.a |= 1ULL << t[0];
    g.b |= 1ULL << t[1];
    g.c |= 1ULL << t[2];
    g.rank = min2(g.da, g.db, g.dc);
  }
  Group singleton(const Triple& t) const {
    Group g;
    add(g, t);
    return g;
  }
};

std::vector<int> mask_to_set(std::uint64_t m) {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i)
    if ((m >> i) & 1) out.push_back(i);
  return out;
}

BoxSet groups_to_boxset(const std::vector<Group>& groups) {
  BoxSet bs;
  for (const Group& g : groups)
    bs.boxes.push_back({mask_to_set(g.a), mask_to_set(g.b), mask_to_set(g.c)});
  std::sort(bs.boxes.begin(), bs.boxes.end());
  bs.boxes.erase(std::unique(bs.boxes.begin(), bs.boxes.end()), bs.boxes.end());
  return bs;
}

long long total_rank(const std::vector<Group>& groups) {
  long long s = 0;
  for (const Group& g : groups) s += g.rank;
  return s;
}

// (rank, #boxes, lexicographic boxes) comparison for deterministic ties.
bool better(const BoxRankSolution& a, const BoxRankSolution& b) {
  if (a.rank != b.rank) return a.rank < b.rank;
  if (a.cover.size() != b.cover.size()) return a.cover.size() < b.cover.size();
  return a.cover.boxes < b.cover.boxes;
}

BoxRankSolution solution_from_groups(const Instance& inst,
                                     const std::vector<Group>& groups) {
  BoxRankSolution s;
  s.cover = groups_to_boxset(groups);
  s.rank = boxset_rank(s.cover, *inst.dims);
  return s;
}

// Partition from an assignment vector group_of[i] (values need not be dense).
std::vector<Group> groups_from_assignment(const Instance& inst,
                                          const std::vector<int>& group_of) {
  int k = *std::max_element(group_of.begin(), group_of.end()) + 1;
  std::vector<Group> groups(k);
  std::vector<char> used(k, 0);
  for (std::size_t i = 0; i < inst.support.size(); ++i) {
    inst.add(groups[group_of[i]], inst.support[i]);
    used[group_of[i]] = 1;
  }
  std::vector<Group> out;
  for (int i = 0; i < k; ++i)
    if (used[i]) out.push_back(groups[i]);
  return out;
}

// Greedy agglomerative descent: repeatedly apply the merge with the best
// strict rank decrease.
std::vector<Group> greedy_merge(const Instance& inst,
                                std::vector<Group> groups) {
  bool improved = true;
  while (improved && groups.size() > 1) {
    improved = false;
    long long best_delta = 0;
    std::pair<int, int> best{-1, -1};
    for (std::size_t i = 0; i < groups.size(); ++i)
      for (std::size_t j = i + 1; j < groups.size(); ++j) {
        const auto& d = *inst.dims;
        Group merged = groups[i];
        // Merge masks directly.
        Group gj = groups[j];
        std::uint64_t a = merged.a | gj.a, b = merged.b | gj.b,
                      c = merged.c | gj.c;
        long long da = dim_sum(mask_to_set(a), d), db = dim_sum(mask_to_set(b), d),
                  dc = dim_sum(mask_to_set(c), d);
        long long delta = min2(da, db, dc) - groups[i].rank - groups[j].rank;
        if (delta < best_delta) {
          best_delta = delta;
          best = {static_cast<int>(i), static_cast<int>(j)};
        }
      }
    if (best.first >= 0) {
      auto [i, j] = best;
      const auto& d = *inst.dims;
      Group merged;
      merged.a = groups[i].a | groups[j].a;
      merged.b = groups[i].b | groups[j].b;
      merged.c = groups[i].c | groups[j].c;
      merged.da = dim_sum(mask_to_set(merged.a), d);
      merged.db = dim_sum(mask_to_set(merged.b), d);
      merged.dc = dim_sum(mask_to_set(merged.c), d);
      merged.rank = min2(merged.da, merged.db, merged.dc);
      groups.erase(groups.begin() + j);
      groups[i] = merged;
      improved = true;
    }
  }
  return groups;
}

// Local search over assignments: move one triple, merge two groups, or split
// one triple out. Moves with delta <= 0 are accepted (plateau walking);
// the best assignment seen is tracked.
void local_search(const Instance& inst, std::vector<int>& group_of,
                  std::uint64_t seed, int budget, BoxRankSolution& best) {
  int n = static_cast<int>(inst.support.size());
  Rng rng(seed);
  auto eval = [&](const std::vector<int>& asg) {
    return total_rank(groups_from_assignment(inst, asg));
  };
  long long cur = eval(group_of);
  for (int step = 0; step < budget; ++step) {
    std::vector<int> cand = group_of;
    int kind = static_cast<int>(rng.below(3));
    int max_g = *std::max_element(cand.begin(), cand.end());
    if (kind == 0) {  // move one triple to an existing or new group
      int i = static_cast<int>(rng.below(n));
      cand[i] = static_cast<int>(rng.below(max_g + 2));
    } else if (kind == 1) {  // merge two groups
      int g1 = static_cast<int>(rng.below(max_g + 1));
      int g2 = static_cast<int>(rng.below(max_g + 1));
      if (g1 == g2) continue;
      for (int& x : cand)
        if (x == g2) x = g1;
    } else {  // split one triple out
      int i = static_cast<int>(rng.below(n));
      cand[i] = max_g + 1;
    }
    long long val = eval(cand);
    if (val <= cur) {
      cur = val;
      group_of = std::move(cand);
      if (cur <= best.rank) {
        auto sol = solution_from_groups(inst, groups_from_assignment(inst, group_of));
        if (better(sol, best)) best = sol;
      }
    }
  }
}

struct ExactSearch {
  const Instance& inst;
  std::vector<Group> groups;
  long long partial = 0;
  BoxRankSolution best;

  explicit ExactSearch(const Instance& i) : inst(i) {}

  // Valid lower bound: the final rank is at least the current partial rank
  // plus, for any single unplaced triple, the cheapest way to ever place it
  // (group bounding boxes only grow, so current marginals are lower bounds).
  long long lower_bound(std::size_t next) const {
    long long extra = 0;
    for (std::size_t i = next; i < inst.support.size(); ++i) {
      const Triple& t = inst.support[i];
      long long m = inst.singleton(t).rank;
      for (const Group& g : groups) m = std::min(m, inst.add_cost(g, t));
      extra = std::max(extra, m);
      if (partial + extra > best.rank) break;
    }
    return partial + extra;
  }

  void dfs(std::size_t i) {
    if (partial > best.rank) return;
    if (i == inst.support.size()) {
      auto sol = solution_from_groups(inst, groups);
      if (better(sol, best)) best = sol;
      return;
    }
    if (lower_bound(i) > best.rank) return;
    const Triple& t = inst.support[i];
    // Join existing groups, cheapest marginal first.
    std::vector<std::pair<long long, int>> order;
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
      order.push_back({inst.add_cost(groups[gi], t), static_cast<int>(gi)});
    std::sort(order.begin(), order.end());
    for (auto [cost, gi] : order) {
      Group saved = groups[gi];
      partial += cost;
      inst.add(groups[gi], t);
      dfs(i + 1);
      groups[gi] = saved;
      partial -= cost;
    }
    // Open a new group.
    Group ng = inst.singleton(t);
    partial += ng.rank;
    groups.push_back(ng);
    dfs(i + 1);
    groups.pop_back();
    partial -= ng.rank;
  }
};

}  // namespace

BoxRankSolution minimize_box_rank(const std::vector<Triple>& support,
                                  const std::vector<int>& dims, SolveMode mode,
                                  std::uint64_t seed,
                                  const std::vector<BoxSet>& warm_starts) {
  if (support.empty())
    throw std::invalid_argument("minimize_box_rank: empty support");
  if (dims.size() > 64)
    throw std::invalid_argument("minimize_box_rank: more than 64 bscs");
  Instance inst;
  inst.support = support;
  std::sort(inst.support.begin(), inst.support.end());
  inst.support.erase(std::unique(inst.support.begin(), inst.support.end()),
                     inst.support.end());
  inst.dims = &dims;
  inst.nb = static_cast<int>(dims.size());

  // Baselines: finest (singletons) and coarsest (one bounding box).
  std::vector<Group> finest;
  Group bounding;
  for (const Triple& t : inst.support) {
    finest.push_back(inst.singleton(t));
    inst.add(bounding, t);
  }
  long long finest_rank = total_rank(finest);
  long long coarsest_rank = bounding.rank;

  BoxRankSolution best = solution_from_groups(inst, finest);
  {
    auto coarse = solution_from_groups(inst, {bounding});
    if (better(coarse, best)) best = coarse;
  }
  best.finest = finest_rank;
  best.coarsest = coarsest_rank;

  // Candidate pool: greedy descent from finest, plus warm starts.
  auto consider_groups = [&](const std::vector<Group>& gs) {
    auto sol = solution_from_groups(inst, gs);
    if (better(sol, best)) best = sol;
  };
  consider_groups(greedy_merge(inst, finest));

  std::vector<std::vector<int>> start_assignments;
  {
    // Greedy result as assignment.
    std::vector<int> asg(inst.support.size());
    auto merged = greedy_merge(inst, finest);
    for (std::size_t i = 0; i < inst.support.size(); ++i)
      for (std::size_t gi = 0; gi < merged.size(); ++gi) {
        const Triple& t = inst.support[i];
        if (((merged[gi].a >> t[0]) & 1) && ((merged[gi].b >> t[1]) & 1) &&
            ((merged[gi].c >> t[2]) & 1)) {
          asg[i] = static_cast<int>(gi);
          break;
        }
      }
    start_assignments.push_back(std::move(asg));
  }
  for (const BoxSet& ws : warm_starts) {
    if (!covers(ws, inst.support)) continue;
    std::vector<int> asg(inst.support.size(), 0);
    for (std::size_t i = 0; i < inst.support.size(); ++i)
      for (int bi = 0; bi < ws.size(); ++bi)
        if (ws.boxes[bi].contains(inst.support[i])) {
          asg[i] = bi;
          break;
        }
    consider_groups(groups_from_assignment(inst, asg));
    start_assignments.push_back(std::move(asg));
  }

  if (mode == SolveMode::Exact) {
    if (inst.support.size() > 16)
      throw std::invalid_argument(
          "minimize_box_rank: Exact mode limited to |support| <= 16, got " +
          std::to_string(inst.support.size()));
    // Big singleton ranks first for stronger early pruning.
    std::sort(inst.support.begin(), inst.support.end(),
              [&](const Triple& x, const Triple& y) {
                long long rx = inst.singleton(x).rank,
                          ry = inst.singleton(y).rank;
                if (rx != ry) return rx > ry;
                return x < y;
              });
    ExactSearch search(inst);
    search.best = best;
    search.dfs(0);
    best = search.best;
    best.optimal = true;
  } else {
    for (std::size_t s = 0; s < start_assignments.size(); ++s)
      local_search(inst, start_assignments[s], seed + s, 100000, best);
    best.optimal = false;
  }
  best.finest = finest_rank;
  best.coarsest = coarsest_rank;
  return best;
}

BoxRankSolution minimize_box_rank_bruteforce(const std::vector<Triple>& support,
                                             const std::vector<int>& dims) {
  Instance inst;
  inst.support = support;
  std::sort(inst.support.begin(), inst.support.end());
  inst.dims = &dims;
  inst.nb = static_cast<int>(dims.size());
  int n = static_cast<int>(inst.support.size());
  std::vector<int> asg(n, 0);
  BoxRankSolution best;
  best.rank = -1;
  // Restricted growth strings enumerate every set partition once.
  auto rec = [&](auto&& self, int i, int max_used) -> void {
    if (i == n) {
      auto sol = solution_from_groups(inst, groups_from_assignment(inst, asg));
      if (best.rank < 0 || better(sol, best)) best = sol;
      return;
    }
    for (int g = 0; g <= max_used + 1; ++g) {
      asg[i] = g;
      self(self, i + 1, std::max(max_used, g));
    }
  };
  rec(rec, 0, -1);
  best.optimal = true;
  return best;
}

}  // namespace wt
