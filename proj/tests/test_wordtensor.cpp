#include <algorithm>

#include "doctest.h"

#include "wordtensor/word_tensor.hpp"

using namespace wt;
using Eigen::MatrixXd;

TEST_SUITE_BEGIN("wordtensor");

TEST_CASE("word tensor entries") {
  FiniteGroup z2 = make_cyclic(2);
  WordTensor t = word_tensor(z2, parse_word("ab"));
  CHECK(t.result[0][0] == 0);
  CHECK(t.result[0][1] == 1);
  CHECK(t.result[1][0] == 1);
  CHECK(t.result[1][1] == 0);
  CHECK(t.norm_sq() == 4.0);          // one 1 per (a, b) pair
  CHECK(t.naive_rank_bound() == 4);   // |G|^2 elementary terms
}

TEST_CASE("multiplication word support is diagonal") {
  for (const char* name : {"Z6", "S3", "Q8", "D4"}) {
    FiniteGroup g = make_builtin_group(name);
    BscSystem sys = compute_bscs(g);
    for (const char* wtext : {"ab", "ab^-1", "a^-1b"}) {
      SupportSet s = exact_bsc3_support(word_tensor(g, parse_word(wtext)), sys);
      REQUIRE(static_cast<int>(s.triples.size()) == sys.size());
      for (const Triple& t : s.triples) {
        CHECK(t[0] == t[2]);
        CHECK(t[1] == t[2]);
      }
    }
  }
}

TEST_CASE("parseval over the bsc^3 decomposition") {
  for (const char* name : {"S3", "D8"}) {
    FiniteGroup g = make_builtin_group(name);
    BscSystem sys = compute_bscs(g);
    WordTensor t = word_tensor(g, parse_word("a^2b^3"));
    SupportSet s = exact_bsc3_support(t, sys, 1e-30);
    double total = 0;
    for (const auto& [k, v] : s.norms) total += v;
    CHECK(std::abs(total - t.norm_sq()) / t.norm_sq() < 1e-8);
  }
}

TEST_CASE("m52 short-word support details") {
  FiniteGroup g = make_builtin_group("M52");
  BscSystem sys = compute_bscs(g);
  SupportSet s = exact_bsc3_support(word_tensor(g, parse_word("a^2b")), sys);
  CHECK(s.contains({2, 6, 6}));
  CHECK_FALSE(s.contains({1, 10, 10}));
  SupportSet cfc = cfc_support(g, parse_word("a^2b"), sys);
  CHECK(cfc.contains({1, 10, 10}));
  // CFC strictly larger than the exact support.
  CHECK(std::includes(cfc.triples.begin(), cfc.triples.end(),
                      s.triples.begin(), s.triples.end()));
  CHECK(cfc.triples.size() > s.triples.size());
}

TEST_CASE("only the all-trivial triple outputs to Triv") {
  FiniteGroup g = make_builtin_group("D8");
  BscSystem sys = compute_bscs(g);
  SupportSet s =
      exact_bsc3_support(word_tensor(g, parse_word("aba^-1ba^2b^3ab^-1")), sys);
  for (const Triple& t : s.triples)
    if (t[2] == 0) CHECK(t == Triple{0, 0, 0});
}

TEST_CASE("support threshold stability") {
  FiniteGroup g = make_builtin_group("D8");
  BscSystem sys = compute_bscs(g);
  WordTensor t = word_tensor(g, parse_word("a^2b"));
  auto base = exact_bsc3_support(t, sys, 1e-12).triples;
  for (double tau : {1e-14, 1e-10, 1e-8})
    CHECK(exact_bsc3_support(t, sys, tau).triples == base);
}

TEST_CASE("vanishing cross terms are exactly zero") {
  // For the long word on D8, seven CFC triples carry no projection mass;
  // cross-check one of them against direct axis-wise projector application.
  FiniteGroup g = make_builtin_group("D8");
  BscSystem sys = compute_bscs(g);
  int n = g.order();
  WordTensor t = word_tensor(g, parse_word("aba^-1ba^2b^3ab^-1"));
  SupportSet s = exact_bsc3_support(t, sys, 1e-30);
  CHECK_FALSE(s.contains({5, 1, 5}));
  CHECK(s.contains({5, 0, 5}));

  auto project_triple_norm = [&](const Triple& tr) {
    // P_phi along each axis of the dense tensor.
    std::vector<MatrixXd> p;
    for (int axis = 0; axis < 3; ++axis) {
      const MatrixXd& basis = sys.bscs[tr[axis]].basis;
      p.push_back(basis.transpose() * basis);
    }
    std::vector<double> dense(n * n * n, 0.0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) dense[(a * n + b) * n + t.result[a][b]] = 1.0;
    std::vector<double> tmp(n * n * n, 0.0);
    // axis 0
    for (int a = 0; a < n; ++a)
      for (int a2 = 0; a2 < n; ++a2) {
        double w = p[0](a, a2);
        if (w == 0.0) continue;
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            tmp[(a * n + b) * n + c] += w * dense[(a2 * n + b) * n + c];
      }
    std::vector<double> tmp2(n * n * n, 0.0);
    for (int b = 0; b < n; ++b)
      for (int b2 = 0; b2 < n; ++b2) {
        double w = p[1](b, b2);
        if (w == 0.0) continue;
        for (int a = 0; a < n; ++a)
          for (int c = 0; c < n; ++c)
            tmp2[(a * n + b) * n + c] += w * tmp[(a * n + b2) * n + c];
      }
    double norm = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          double acc = 0;
          for (int c2 = 0; c2 < n; ++c2)
            acc += p[2](c, c2) * tmp2[(a * n + b) * n + c2];
          norm += acc * acc;
        }
    return norm;
  };
  CHECK(project_triple_norm({5, 1, 5}) < 1e-20);
  CHECK(project_triple_norm({5, 0, 5}) > 1.0);
}

TEST_CASE("single-bsc projections of the multiplication tensor") {
  FiniteGroup g = make_builtin_group("D8");
  BscSystem sys = compute_bscs(g);
  int n = g.order();

  auto triv = single_bsc_projection(sys, 0);
  for (double v : triv) CHECK(v == doctest::Approx(1.0 / n));

  // Summing over all bscs reproduces the 0/1 tensor entrywise.
  std::vector<double> sum(n * n * n, 0.0);
  for (int b = 0; b < sys.size(); ++b) {
    auto part = single_bsc_projection(sys, b);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += part[i];
  }
  double worst = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double want = g.mult(a, b) == c ? 1.0 : 0.0;
        worst = std::max(worst,
                         std::abs(sum[(a * n + b) * n + c] - want));
      }
  CHECK(worst < 1e-10);

  // Against the axis-wise projection oracle, via the coefficient transform.
  WordTensor t = word_tensor(g, parse_word("ab"));
  SupportSet s = exact_bsc3_support(t, sys);
  for (int b : {0, 4}) {
    auto part = single_bsc_projection(sys, b);
    double norm = 0;
    for (double v : part) norm += v * v;
    CHECK(std::abs(norm - s.norms.at({b, b, b})) < 1e-8);
  }
}

TEST_CASE("d16 single-bsc projection matches axis-wise oracle") {
  FiniteGroup g = make_builtin_group("D16");
  BscSystem sys = compute_bscs(g);
  int n = g.order();
  auto direct = single_bsc_projection(sys, 4);
  // Oracle: apply the three isotypic projectors axis-wise to the 0/1 tensor.
  const MatrixXd& basis = sys.bscs[4].basis;
  MatrixXd p = basis.transpose() * basis;
  std::vector<double> oracle(n * n * n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int c = g.mult(a, b);
      for (int a2 = 0; a2 < n; ++a2)
        for (int b2 = 0; b2 < n; ++b2) {
          double w = p(a2, a) * p(b2, b);
          if (std::abs(w) < 1e-14) continue;
          for (int c2 = 0; c2 < n; ++c2)
            oracle[(a2 * n + b2) * n + c2] += w * p(c2, c);
        }
    }
  double worst = 0;
  for (std::size_t i = 0; i < oracle.size(); ++i)
    worst = std::max(worst, std::abs(oracle[i] - direct[i]));
  CHECK(worst < 1e-8);
  CHECK_THROWS(single_bsc_projection(sys, 99));
}

TEST_CASE("rank upper bounds") {
  FiniteGroup q8 = make_builtin_group("Q8");
  BscSystem sysq = compute_bscs(q8);
  SupportSet sq = exact_bsc3_support(word_tensor(q8, parse_word("ab")), sysq);
  RankBounds rbq = rank_upper_bounds(sysq, sq);
  CHECK(rbq.corollary_bound == 57);  // 8*7+1

  FiniteGroup d8 = make_builtin_group("D8");
  BscSystem sys8 = compute_bscs(d8);
  SupportSet s8 = exact_bsc3_support(word_tensor(d8, parse_word("ab")), sys8);
  RankBounds rb8 = rank_upper_bounds(sys8, s8);
  CHECK(rb8.corollary_bound == 241);  // 16*15+1
  // Diagonal support: naive sum = sum of D^2 computed independently.
  long long oracle = 0;
  for (const Bsc& b : sys8.bscs) oracle += static_cast<long long>(b.D) * b.D;
  CHECK(oracle == 52);
  CHECK(rb8.naive_sum == oracle);
}

TEST_SUITE_END();
