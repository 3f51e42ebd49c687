#include <algorithm>

#include "doctest.h"

#include "wordtensor/training.hpp"
#include "wordtensor/word_tensor.hpp"

using namespace wt;
using Eigen::MatrixXd;

TEST_SUITE_BEGIN("training");

TEST_CASE("bsc losses of the zero configuration") {
  FiniteGroup g = make_builtin_group("D8");
  BscSystem sys = compute_bscs(g);
  Dataset full = build_dataset(g, parse_word("ab"));
  Weights zero;
  zero.group = &g;
  zero.a = MatrixXd::Zero(2, 16);
  zero.b = zero.a;
  zero.c = zero.a;
  for (const Bsc& b : sys.bscs)
    CHECK(bsc_loss(sys, zero, b.index, full) ==
          doctest::Approx(b.D / 256.0).epsilon(1e-10));
}

TEST_CASE("loss decompositions are exact") {
  FiniteGroup g = make_builtin_group("D8");
  BscSystem sys = compute_bscs(g);
  Dataset full = build_dataset(g, parse_word("ab"));
  Weights w = init_gaussian(g, 6, 0.25, 5);
  double total = loss(ModelKind::HD(), w, full.samples);

  double sum_bsc = 0;
  for (int b = 0; b < sys.size(); ++b) sum_bsc += bsc_loss(sys, w, b, full);
  CHECK(std::abs(sum_bsc - total) < 1e-12);

  double sum_triples = 0;
  for (int i = 0; i < sys.size(); ++i)
    for (int j = 0; j < sys.size(); ++j)
      for (int k = 0; k < sys.size(); ++k)
        sum_triples += bsc3_loss(sys, w, {i, j, k}, full);
  CHECK(std::abs(sum_triples - total) < 1e-12);
}

TEST_CASE("mono-aligned configurations have diagonal bsc3 losses") {
  FiniteGroup g = make_builtin_group("D8");
  BscSystem sys = compute_bscs(g);
  Dataset full = build_dataset(g, parse_word("ab"));
  Weights w = init_mono_bsc(sys, {4, 4, 1}, 0.3, 9);
  for (int i = 0; i < sys.size(); ++i)
    for (int j = 0; j < sys.size(); ++j)
      for (int k = 0; k < sys.size(); ++k) {
        if (i == j && j == k) continue;
        CHECK(bsc3_loss(sys, w, {i, j, k}, full) < 1e-24);
      }
}

TEST_CASE("training loop basics") {
  FiniteGroup g = make_cyclic(4);
  Dataset full = build_dataset(g, parse_word("ab"));
  Dataset empty_test;
  empty_test.group = &g;

  TrainConfig cfg;
  cfg.lr = 0.2;
  cfg.epochs = 3000;
  cfg.log_every = 500;
  cfg.stop_loss = 1e-13;
  RunRecord run = train(cfg, full, empty_test, init_gaussian(g, 8, 0.5, 3));
  CHECK(run.history.front().train_loss > run.history.back().train_loss);
  CHECK(run.epochs_run <= 3000);

  // Divergence is detected and reported.
  TrainConfig bad = cfg;
  bad.lr = 1e4;
  bad.epochs = 200;
  RunRecord diverged = train(bad, full, empty_test, init_gaussian(g, 8, 0.5, 3));
  CHECK(diverged.stop_reason == "diverged");

  // Plateau abort fires on a stuck run (width 0-ish: width 1 on Z4).
  TrainConfig plat = cfg;
  plat.epochs = 50000;
  plat.plateau_patience = 500;
  plat.stop_loss = 1e-30;
  RunRecord stuck = train(plat, full, empty_test, init_gaussian(g, 1, 0.5, 3));
  CHECK(stuck.stop_reason == "plateau");
  CHECK(stuck.epochs_run < 50000);
}

TEST_CASE("grokking metrics from a run record") {
  RunRecord run;
  for (long long e = 0; e <= 500; e += 50) {
    EpochRecord er;
    er.epoch = e;
    er.train_acc = e >= 100 ? 1.0 : 0.2;
    er.test_acc = e >= 350 ? 1.0 : 0.3;
    run.history.push_back(er);
  }
  GrokkingMetrics gm = grokking_metrics(run);
  CHECK(gm.epoch_train_acc == 100);
  CHECK(gm.epoch_test_acc == 350);
  CHECK(gm.lag() == 250);
}

TEST_CASE("decoupling of mono-aligned dynamics") {
  FiniteGroup g = make_cyclic(6);
  BscSystem sys = compute_bscs(g);
  std::vector<int> rows = {0, 2, 2, 3};
  DecouplingReport rep =
      decoupling_check(sys, parse_word("ab"), rows, 0.4, 77, 0.1,
                       /*steps=*/1000, /*compare_steps=*/200);
  CHECK(rep.max_off_subspace_energy < 1e-8);
  CHECK(rep.max_trajectory_deviation < 1e-10);
}

TEST_CASE("attractiveness probe") {
  FiniteGroup g = make_builtin_group("D8");
  BscSystem sys = compute_bscs(g);
  std::vector<int> rows = {4, 4, 4, 4, 5, 5, 5, 5, 0, 1};
  Weights aligned = init_mono_bsc(sys, rows, 0.3, 15);

  AttractivenessReport zero =
      attractiveness_probe(sys, parse_word("ab"), aligned, rows, 0.0, 0.1, 1);
  CHECK(zero.generic);
  CHECK(zero.error_before < 1e-28);
  CHECK(zero.delta() == doctest::Approx(0.0));

  int negative = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    AttractivenessReport rep = attractiveness_probe(
        sys, parse_word("ab"), aligned, rows, 1e-4, 0.1, seed);
    REQUIRE(rep.generic);
    negative += rep.delta() < 0;
  }
  CHECK(negative >= 18);

  // |delta| scales roughly quadratically in epsilon.
  AttractivenessReport big = attractiveness_probe(
      sys, parse_word("ab"), aligned, rows, 1e-4, 0.1, 4);
  AttractivenessReport small = attractiveness_probe(
      sys, parse_word("ab"), aligned, rows, 1e-5, 0.1, 4);
  double ratio = std::abs(big.delta()) / std::abs(small.delta());
  CHECK(ratio > 100.0 / 3);
  CHECK(ratio < 100.0 * 3);
}

TEST_CASE("single-bsc coefficient runs match full-space bsc loss") {
  FiniteGroup g = make_cyclic(4);
  BscSystem sys = compute_bscs(g);
  int phi = 2;  // the unique type II bsc of Z4
  REQUIRE(sys.bscs[phi].type == BscType::II);

  SweepConfig cfg;
  cfg.epochs = 20000;
  cfg.lr = 0.2;
  SweepRun run = single_bsc_run(sys, phi, 3, 12345, cfg);
  CHECK(run.final_bsc_loss < 1e-6);

  // Cross-check the coefficient-space loss against the full-space one at a
  // mono-aligned configuration.
  Dataset full = build_dataset(g, parse_word("ab"));
  std::vector<int> rows(3, phi);
  Weights w = init_mono_bsc(sys, rows, 0.5, 4);
  double full_loss = loss(ModelKind::HD(), w, full.samples);
  double bsc = bsc_loss(sys, w, phi, full);
  double offset = (g.order() - sys.bscs[phi].D) /
                  (static_cast<double>(g.order()) * g.order());
  CHECK(std::abs((full_loss - offset) - bsc) < 1e-12);
}

TEST_CASE("sweep reports the minimal sufficient width") {
  FiniteGroup g = make_cyclic(4);
  BscSystem sys = compute_bscs(g);
  SweepConfig cfg;
  cfg.epochs = 30000;
  cfg.lr = 0.2;
  cfg.seeds = 6;
  cfg.plateau_patience = 2000;
  SweepResult res = single_bsc_sweep(sys, 2, {3, 4}, cfg);
  CHECK(res.min_width == 3);
  CHECK(res.best_loss_at(3) < 1e-6);
}

TEST_SUITE_END();
