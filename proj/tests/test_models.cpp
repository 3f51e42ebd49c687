#include <algorithm>

#include "doctest.h"

#include "wordtensor/models.hpp"
#include "wordtensor/rng.hpp"

using namespace wt;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_SUITE_BEGIN("models");

namespace {

Weights random_weights(const FiniteGroup& g, int m, std::uint64_t seed) {
  return init_gaussian(g, m, 1.0 / std::sqrt(m), seed);
}

// Width-|G|^2 exact implementation of the multiplication tensor from
// one-hot rows.
Weights exact_solution(const FiniteGroup& g) {
  int n = g.order();
  Weights w;
  w.group = &g;
  w.a = MatrixXd::Zero(n * n, n);
  w.b = MatrixXd::Zero(n * n, n);
  w.c = MatrixXd::Zero(n * n, n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      int r = a * n + b;
      w.a(r, a) = 1;
      w.b(r, b) = 1;
      w.c(r, g.mult(a, b)) = 1;
    }
  return w;
}

}  // namespace

TEST_CASE("forward passes") {
  FiniteGroup z3 = make_cyclic(3);
  Weights w;
  w.group = &z3;
  w.a = MatrixXd::Ones(1, 3);
  w.b = MatrixXd::Ones(1, 3);
  w.c = MatrixXd::Ones(1, 3);
  VectorXd out = forward_onehot(ModelKind::HD(), w, 0, 1);
  CHECK((out.array() - 1.0).abs().maxCoeff() == 0.0);

  Weights zero;
  zero.group = &z3;
  zero.a = MatrixXd::Zero(2, 3);
  zero.b = MatrixXd::Zero(2, 3);
  zero.c = MatrixXd::Zero(2, 3);
  CHECK(forward_onehot(ModelKind::TLP(Activation::Square), zero, 1, 2).norm() ==
        0.0);

  CHECK_THROWS(forward(ModelKind::HD(), w, VectorXd::Zero(5), VectorXd::Zero(3)));
}

TEST_CASE("triple-sum identity") {
  FiniteGroup z4 = make_cyclic(4);
  Weights w = random_weights(z4, 5, 99);
  Rng rng(123);
  for (int trial = 0; trial < 5; ++trial) {
    VectorXd x(4), y(4), z(4);
    for (int i = 0; i < 4; ++i) {
      x[i] = rng.normal();
      y[i] = rng.normal();
      z[i] = rng.normal();
    }
    double lhs = forward(ModelKind::HD(), w, x, y).dot(z);
    double rhs = 0;
    VectorXd ax = w.a * x, by = w.b * y, cz = w.c * z;
    for (int i = 0; i < 5; ++i) rhs += ax[i] * by[i] * cz[i];
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("hd tensor evaluates like the forward pass") {
  FiniteGroup g = make_builtin_group("S3");
  Weights w = random_weights(g, 4, 5);
  auto t = hd_tensor(w);
  int n = g.order();
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      VectorXd f = forward_onehot(ModelKind::HD(), w, a, b);
      for (Element c = 0; c < n; ++c)
        CHECK(t[(a * n + b) * n + c] == doctest::Approx(f[c]).epsilon(1e-13));
    }
}

TEST_CASE("loss and accuracy reference values") {
  FiniteGroup g = make_builtin_group("S3");
  Dataset full = build_dataset(g, parse_word("ab"));

  Weights zero;
  zero.group = &g;
  zero.a = MatrixXd::Zero(3, 6);
  zero.b = MatrixXd::Zero(3, 6);
  zero.c = MatrixXd::Zero(3, 6);
  CHECK(loss(ModelKind::HD(), zero, full.samples) ==
        doctest::Approx(1.0 / 6).epsilon(1e-12));
  int label_zero = 0;
  for (const Sample& s : full.samples) label_zero += s.c == 0;
  CHECK(accuracy(ModelKind::HD(), zero, full.samples) ==
        doctest::Approx(static_cast<double>(label_zero) / full.size()));

  Weights exact = exact_solution(g);
  CHECK(loss(ModelKind::HD(), exact, full.samples) < 1e-24);
  CHECK(accuracy(ModelKind::HD(), exact, full.samples) == 1.0);

  CHECK_THROWS(loss(ModelKind::HD(), zero, {}));
}

TEST_CASE("gradients agree with central differences") {
  FiniteGroup g = make_cyclic(6);
  Dataset full = build_dataset(g, parse_word("a^2b"));
  std::vector<Sample> samples(full.samples.begin(), full.samples.begin() + 20);
  const double h = 1e-6;
  for (ModelKind kind : {ModelKind::HD(), ModelKind::TLP(Activation::Square),
                         ModelKind::TLP(Activation::Sigmoid),
                         ModelKind::TLP(Activation::ReLU)}) {
    Weights w = random_weights(g, 4, 17);
    Weights grad = gradient(kind, w, samples);
    double worst_rel = 0;
    auto probe = [&](MatrixXd& m, const MatrixXd& gm) {
      for (int i : {0, 2})
        for (int j : {1, 4}) {
          double save = m(i, j);
          m(i, j) = save + h;
          double up = loss(kind, w, samples);
          m(i, j) = save - h;
          double dn = loss(kind, w, samples);
          m(i, j) = save;
          double fd = (up - dn) / (2 * h);
          double denom = std::max({std::abs(fd), std::abs(gm(i, j)), 1e-4});
          worst_rel = std::max(worst_rel, std::abs(fd - gm(i, j)) / denom);
        }
    };
    probe(w.a, grad.a);
    probe(w.b, grad.b);
    probe(w.c, grad.c);
    CHECK(worst_rel < 1e-5);
  }
}

TEST_CASE("gradient vanishes at an exact solution") {
  FiniteGroup g = make_cyclic(3);
  Dataset full = build_dataset(g, parse_word("ab"));
  Weights w = exact_solution(g);
  Weights grad = gradient(ModelKind::HD(), w, full.samples);
  CHECK(grad.a.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(grad.b.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(grad.c.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("mono-bsc gradients stay in the subspace") {
  FiniteGroup g = make_builtin_group("D8");
  BscSystem sys = compute_bscs(g);
  std::vector<int> rows = {4, 4, 4, 5, 5, 0};
  Weights w = init_mono_bsc(sys, rows, 0.3, 21);
  Dataset full = build_dataset(g, parse_word("ab"));
  Weights grad = gradient(ModelKind::HD(), w, full.samples);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const MatrixXd& basis = sys.bscs[rows[i]].basis;
    for (const MatrixXd* m : {&grad.a, &grad.b, &grad.c}) {
      VectorXd row = m->row(i).transpose();
      double off = row.squaredNorm() - (basis * row).squaredNorm();
      CHECK(off < 1e-10);
    }
  }
}

TEST_CASE("initializers") {
  FiniteGroup g = make_builtin_group("S4");
  Weights w1 = init_gaussian(g, 8, 0.25, 7);
  Weights w2 = init_gaussian(g, 8, 0.25, 7);
  CHECK(w1.a == w2.a);  // bit-for-bit reproducible
  CHECK(w1.b == w2.b);
  CHECK(w1.c == w2.c);
  CHECK(init_gaussian(g, 8, 0.25, 8).a != w1.a);

  // Empirical std within 10% of 1/sqrt(m) at m = 64, |G| = 24.
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    Weights w = init_gaussian(g, 64, 1.0 / 8.0, seed);
    double var = (w.a.squaredNorm() + w.b.squaredNorm() + w.c.squaredNorm()) /
                 (3.0 * 64 * 24);
    CHECK(std::sqrt(var) == doctest::Approx(1.0 / 8.0).epsilon(0.10));
  }

  BscSystem sys = compute_bscs(g);
  Weights mono = init_mono_bsc(sys, {2, 3, 3}, 0.2, 11);
  for (int i = 0; i < 3; ++i) {
    int b = i == 0 ? 2 : 3;
    CHECK(bsc_support(sys, mono.a.row(i).transpose()) == std::vector<int>{b});
    CHECK(bsc_support(sys, mono.c.row(i).transpose()) == std::vector<int>{b});
  }
}

TEST_CASE("weight box-sets") {
  FiniteGroup g = make_builtin_group("D8");
  BscSystem sys = compute_bscs(g);
  Weights mono = init_mono_bsc(sys, {1, 4}, 0.3, 13);
  BoxSet bs = weight_boxset(sys, mono);
  REQUIRE(bs.size() == 2);
  CHECK(bs.boxes[0] == Box{{1}, {1}, {1}});
  CHECK(bs.boxes[1] == Box{{4}, {4}, {4}});

  // Rows with a zero factor contribute nothing.
  Weights z = mono;
  z.b.row(0).setZero();
  CHECK(weight_boxset(sys, z).size() == 1);

  // Generic Gaussian rows have full support: every projection is nonzero
  // almost surely, so at a threshold far below typical energy fractions
  // essentially every box is the full bscs(G)^3.
  int full_boxes = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Weights w = init_gaussian(g, 2, 0.3, seed);
    for (const Box& b : weight_boxset(sys, w, 1e-8).boxes) {
      ++total;
      full_boxes += static_cast<int>(b.phi.size()) == sys.size() &&
                    static_cast<int>(b.psi.size()) == sys.size() &&
                    static_cast<int>(b.xi.size()) == sys.size();
    }
  }
  CHECK(full_boxes >= total - 1);
}

TEST_CASE("tlp square simulates hd at twice the width") {
  FiniteGroup g = make_builtin_group("S3");
  Weights w = random_weights(g, 6, 3);
  Weights tlp = hd_to_tlp_square(w);
  CHECK(tlp.width() == 12);
  Dataset full = build_dataset(g, parse_word("ab"));
  double worst = 0;
  for (const Sample& s : full.samples) {
    VectorXd hd = forward_onehot(ModelKind::HD(), w, s.a, s.b);
    VectorXd sq = forward_onehot(ModelKind::TLP(Activation::Square), tlp, s.a, s.b);
    worst = std::max(worst, (hd - sq).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-12);

  Weights zero;
  zero.group = &g;
  zero.a = MatrixXd::Zero(2, 6);
  zero.b = zero.a;
  zero.c = zero.a;
  Weights zt = hd_to_tlp_square(zero);
  CHECK(zt.a.cwiseAbs().maxCoeff() == 0.0);
  CHECK(zt.width() == 4);
}

TEST_CASE("row permutations leave outputs unchanged") {
  // Equal up to summation round-off; the reduction order in C^T h depends
  // on row order, so agreement is to a few ulp rather than bitwise.
  FiniteGroup g = make_cyclic(5);
  Weights w = random_weights(g, 4, 31);
  Weights p = w;
  std::vector<int> perm = {2, 0, 3, 1};
  for (int i = 0; i < 4; ++i) {
    p.a.row(i) = w.a.row(perm[i]);
    p.b.row(i) = w.b.row(perm[i]);
    p.c.row(i) = w.c.row(perm[i]);
  }
  for (Element a = 0; a < 5; ++a)
    for (Element b = 0; b < 5; ++b) {
      VectorXd f1 = forward_onehot(ModelKind::HD(), w, a, b);
      VectorXd f2 = forward_onehot(ModelKind::HD(), p, a, b);
      CHECK((f1 - f2).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("small gd steps decrease the loss at non-stationary points") {
  FiniteGroup g = make_cyclic(4);
  Dataset full = build_dataset(g, parse_word("ab"));
  int decreased = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Weights w = random_weights(g, 3, seed);
    double before = loss(ModelKind::HD(), w, full.samples);
    Weights grad = gradient(ModelKind::HD(), w, full.samples);
    w.a -= 1e-4 * grad.a;
    w.b -= 1e-4 * grad.b;
    w.c -= 1e-4 * grad.c;
    decreased += loss(ModelKind::HD(), w, full.samples) < before;
  }
  CHECK(decreased >= 99);
}

TEST_SUITE_END();
