#include <algorithm>

#include "doctest.h"

#include "wordtensor/boxes.hpp"
#include "wordtensor/rng.hpp"

using namespace wt;

TEST_SUITE_BEGIN("boxes");

TEST_CASE("box rank") {
  std::vector<int> dims = {1, 2, 2};
  CHECK(box_rank({{0}, {1}, {2}}, dims) == 2);  // dims (1,2,2) -> min(2,2,4)
  CHECK(box_rank({{0}, {0}, {0}}, dims) == 1);  // Triv^3 singleton

  std::vector<int> d8 = {1, 1, 1, 1, 4, 4, 4};
  CHECK(box_rank({{0, 1, 2, 3}, {5}, {5}}, d8) == 16);
  CHECK(box_rank({{0}, {0, 1, 2, 3}, {0, 1, 2, 3}}, d8) == 4);
  CHECK(box_rank({{0, 1, 5}, {4}, {4}}, d8) == 16);
  CHECK_THROWS_AS(box_rank({{0}, {}, {0}}, d8), std::invalid_argument);

  BoxSet bs;
  bs.boxes = {{{0}, {0}, {0}}, {{0, 1, 2, 3}, {5}, {5}}};
  CHECK(boxset_rank(bs, d8) == 17);
}

TEST_CASE("cover and domination predicates") {
  std::vector<Triple> support = {{0, 0, 0}, {1, 1, 1}, {0, 1, 1}};
  BoxSet finest;
  for (const Triple& t : support)
    finest.boxes.push_back({{t[0]}, {t[1]}, {t[2]}});
  CHECK(covers(finest, support));

  BoxSet coarse;
  coarse.boxes = {{{0, 1}, {0, 1}, {0, 1}}};
  CHECK(covers(coarse, support));
  CHECK(dominated_by(finest, coarse));
  CHECK_FALSE(dominated_by(coarse, finest));
  CHECK(dominated_by(finest, finest));
  CHECK(smaller_than(finest, finest));
  // Injectivity matters: three singletons cannot map into one box injectively.
  CHECK_FALSE(smaller_than(finest, coarse));

  CHECK(is_thin(finest, 2));
  CHECK_FALSE(is_thin(coarse, 2));  // all three components full
  CHECK(is_thin(coarse, 3));
}

TEST_CASE("rank does not increase under smaller_than") {
  std::vector<int> dims = {1, 1, 4, 9, 9};
  BoxSet small, large;
  small.boxes = {{{0}, {2}, {2}}, {{1}, {3}, {3}}};
  large.boxes = {{{0, 1}, {2, 3}, {2, 3}}, {{1, 2}, {3, 4}, {3, 4}}};
  REQUIRE(smaller_than(small, large));
  CHECK(boxset_rank(small, dims) <= boxset_rank(large, dims));
}

namespace {

std::vector<Triple> random_support(Rng& rng, int nb, int count) {
  std::vector<Triple> s;
  for (int i = 0; i < count; ++i)
    s.push_back({static_cast<int>(rng.below(nb)),
                 static_cast<int>(rng.below(nb)),
                 static_cast<int>(rng.below(nb))});
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

TEST_CASE("exact solver matches exhaustive partition enumeration") {
  Rng rng(2026);
  std::vector<int> dims = {1, 1, 2, 4, 4, 8};
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Triple> support = random_support(rng, 6, 8);
    BoxRankSolution exact =
        minimize_box_rank(support, dims, SolveMode::Exact, 1);
    BoxRankSolution brute = minimize_box_rank_bruteforce(support, dims);
    CHECK(exact.rank == brute.rank);
    CHECK(exact.optimal);
    CHECK(covers(exact.cover, support));
  }
}

TEST_CASE("solver invariants") {
  Rng rng(7);
  std::vector<int> dims = {1, 1, 1, 1, 4, 4, 4};
  std::vector<Triple> support = random_support(rng, 7, 14);
  BoxRankSolution sol = minimize_box_rank(support, dims, SolveMode::Exact, 1);
  CHECK(covers(sol.cover, support));
  CHECK(sol.rank <= sol.finest);
  CHECK(sol.rank <= sol.coarsest);
  BoxRankSolution heur =
      minimize_box_rank(support, dims, SolveMode::Heuristic, 1);
  CHECK(heur.rank >= sol.rank);
  CHECK(covers(heur.cover, support));

  CHECK_THROWS_AS(minimize_box_rank({}, dims, SolveMode::Exact, 1),
                  std::invalid_argument);
  std::vector<Triple> big(17);
  for (int i = 0; i < 17; ++i) big[i] = {i % 7, i / 7, (i + 2) % 5};
  CHECK_THROWS_AS(minimize_box_rank(big, dims, SolveMode::Exact, 1),
                  std::invalid_argument);
}

TEST_CASE("warm starts bound the heuristic") {
  // A cover whose rank the heuristic must not exceed.
  std::vector<int> dims = {1, 1, 1, 1, 4, 4, 4};
  std::vector<Triple> support;
  for (int i = 0; i < 4; ++i) support.push_back({i, 0, i});
  for (int i : {4, 6})
    for (int j = 0; j < 4; ++j)
      for (int k : {4, 6}) support.push_back({i, j, k});
  BoxSet cover;
  cover.boxes = {{{0, 1, 2, 3}, {0}, {0, 1, 2, 3}},
                 {{4, 6}, {0, 1, 2, 3}, {4, 6}}};
  REQUIRE(covers(cover, support));
  long long cover_rank = boxset_rank(cover, dims);
  BoxRankSolution sol =
      minimize_box_rank(support, dims, SolveMode::Heuristic, 3, {cover});
  CHECK(sol.rank <= cover_rank);
}

TEST_SUITE_END();
