#include <algorithm>

#include "doctest.h"

#include "wordtensor/analysis.hpp"
#include "wordtensor/strassen.hpp"

using namespace wt;
using Eigen::MatrixXd;

TEST_SUITE_BEGIN("analysis");

TEST_CASE("heatmaps") {
  FiniteGroup g = make_builtin_group("D8");
  BscSystem sys = compute_bscs(g);
  Weights w = init_mono_bsc(sys, {4, 1}, 0.3, 2);
  w.a.row(1).setZero();
  HeatmapData h = heatmap(sys, w);
  REQUIRE(h.group_offsets.size() == static_cast<std::size_t>(sys.size() + 1));
  CHECK(h.column_names.front() == "phi0:0");

  // Row 0 lives in the phi4 column group only.
  int start4 = h.group_offsets[4], end4 = h.group_offsets[5];
  double inside = h.a.row(0).segment(start4, end4 - start4).sum();
  CHECK(inside > 0);
  CHECK(h.a.row(0).sum() == doctest::Approx(inside).epsilon(1e-10));
  // Zeroed row stays zero.
  CHECK(h.a.row(1).sum() == 0.0);

  // Energy conservation per row.
  for (int i = 0; i < w.width(); ++i) {
    CHECK(h.b.row(i).squaredNorm() ==
          doctest::Approx(w.b.row(i).squaredNorm()).epsilon(1e-10));
    CHECK(h.c.row(i).squaredNorm() ==
          doctest::Approx(w.c.row(i).squaredNorm()).epsilon(1e-10));
  }

  FiniteGroup other = make_builtin_group("S3");
  BscSystem so = compute_bscs(other);
  CHECK_THROWS_AS(heatmap(so, w), std::invalid_argument);
}

TEST_CASE("domination reports") {
  FiniteGroup g = make_builtin_group("D8");
  BscSystem sys = compute_bscs(g);
  Weights w = construct_full_multiplication_weights(g, sys);

  // Diagonal singleton candidate cover.
  CandidateCover diag;
  diag.name = "diagonal";
  for (int b = 0; b < sys.size(); ++b)
    diag.cover.boxes.push_back({{b}, {b}, {b}});

  DominationReport rep = domination_report(sys, w, {diag});
  REQUIRE(rep.entries.size() == 1);
  CHECK(rep.entries[0].dominated);
  CHECK(rep.observed_thin);
  // Self-domination always holds.
  DominationReport self =
      domination_report(sys, w, {{"self", rep.observed}});
  CHECK(self.entries[0].dominated);

  // Random initializations are not thin in most seeds (at a threshold far
  // below generic energy fractions, supports are full almost surely).
  int not_thin = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Weights r = init_gaussian(g, 6, 0.3, seed);
    DominationReport rr = domination_report(sys, r, {}, 1e-8);
    not_thin += !rr.observed_thin;
  }
  CHECK(not_thin >= 19);
}

TEST_CASE("bsc subspace recovery") {
  FiniteGroup g = make_builtin_group("Q8");
  BscSystem sys = compute_bscs(g);
  Weights w = construct_full_multiplication_weights(g, sys);
  RecoveryReport rep = recover_bsc_subspaces(sys, w);
  CHECK(rep.unrecovered_bscs.empty());
  REQUIRE(rep.clusters.size() == static_cast<std::size_t>(sys.size()));
  std::vector<int> matched;
  for (const RecoveredSubspace& r : rep.clusters) {
    matched.push_back(r.matched_bsc);
    CHECK(r.principal_angle < 1e-8);
  }
  std::sort(matched.begin(), matched.end());
  CHECK(matched == std::vector<int>{0, 1, 2, 3, 4});

  // Missing width leaves bscs unrecovered.
  Weights part = init_mono_bsc(sys, {0, 1, 4, 4}, 0.3, 6);
  RecoveryReport rep2 = recover_bsc_subspaces(sys, part);
  CHECK(rep2.unrecovered_bscs == std::vector<int>{2, 3});
}

TEST_SUITE_END();
