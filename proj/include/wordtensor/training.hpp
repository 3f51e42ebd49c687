#pragma once

#include <optional>
#include <string>

#include "wordtensor/models.hpp"

namespace wt {

enum class Optimizer { GD, AdamW };

struct TrainConfig {
  ModelKind model = ModelKind::HD();
  Optimizer optimizer = Optimizer::GD;
  double lr = 0.1;
  long long epochs = 200000;
  double beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8, weight_decay = 0.0;
  int batch = 0;  // 0 = full batch
  std::uint64_t seed = 0;
  double stop_loss = 1e-12;      // early stop on the monitored loss
  int log_every = 50;
  // Plateau abort: stop when the monitored loss fails to improve by factor
  // `plateau_factor` over `plateau_patience` epochs (0 disables).
  long long plateau_patience = 20000;
  double plateau_factor = 0.999;
  // When set, the monitored loss is the bsc-loss of this bsc (valid for
  // mono-bsc-aligned runs, where the remaining components are constant).
  int monitor_bsc = -1;
  const BscSystem* sys = nullptr;  // required for monitor_bsc / bsc logging
  bool log_bsc_losses = false;
};

struct EpochRecord {
  long long epoch = 0;
  double train_loss = 0, test_loss = 0;
  double train_acc = 0, test_acc = 0;
  std::vector<double> bsc_losses;
};

struct RunRecord {
  std::vector<EpochRecord> history;
  Weights terminal;
  long long epochs_run = 0;
  double final_monitored_loss = 0;
  std::string stop_reason;  // "epochs" | "stop_loss" | "plateau" | "diverged"
  double wall_seconds = 0;
};

struct GrokkingMetrics {
  // First logged epochs with accuracy >= threshold; -1 if never crossed.
  long long epoch_train_acc = -1;
  long long epoch_test_acc = -1;
  long long lag() const {
    return (epoch_train_acc < 0 || epoch_test_acc < 0)
               ? -1
               : epoch_test_acc - epoch_train_acc;
  }
};

RunRecord train(const TrainConfig& cfg, const Dataset& train_set,
                const Dataset& test_set, Weights w);

GrokkingMetrics grokking_metrics(const RunRecord& run, double threshold = 0.99);

// Loss component of the output bsc phi on the full dataset (HD model).
double bsc_loss(const BscSystem& sys, const Weights& w, int phi,
                const Dataset& full);
// Loss component of the (phi, psi, zeta) tensor block on the full dataset.
double bsc3_loss(const BscSystem& sys, const Weights& w, const Triple& t,
                 const Dataset& full);

struct DecouplingReport {
  double max_off_subspace_energy = 0;  // after `steps` GD steps
  double max_trajectory_deviation = 0; // concat vs per-bsc runs
};
// Pure-GD stability of mono-bsc alignment: runs `steps` full-batch GD steps
// on the full dataset and compares against independently trained per-bsc
// sub-models over `compare_steps` steps.
DecouplingReport decoupling_check(const BscSystem& sys, const Word& word,
                                  const std::vector<int>& row_bsc,
                                  double init_std, std::uint64_t seed,
                                  double lr, long long steps,
                                  long long compare_steps);

struct AttractivenessReport {
  bool generic = false;   // linear-independence precondition
  double error_before = 0;
  double error_after = 0;
  double delta() const { return error_after - error_before; }
};
// Adds an epsilon-scaled perturbation orthogonal to the aligned subspaces,
// takes one GD step, and reports the change in normal error.
AttractivenessReport attractiveness_probe(const BscSystem& sys,
                                          const Word& word,
                                          const Weights& aligned,
                                          const std::vector<int>& row_bsc,
                                          double epsilon, double lr,
                                          std::uint64_t seed);

// ---- single-bsc width sweep ----------------------------------------------
//
// Mono-bsc GD for the multiplication word runs in the D-dimensional
// coefficient coordinates of R_phi (an isometry, so the dynamics match the
// full-space run row for row).

struct SweepRun {
  int width = 0;
  std::uint64_t seed = 0;
  double final_bsc_loss = 0;
  long long epochs_run = 0;
};

struct SweepResult {
  std::vector<SweepRun> runs;
  // Smallest width with a run whose terminal bsc-loss < target; -1 if none.
  int min_width = -1;
  double best_loss_at(int width) const;
};

struct SweepConfig {
  double lr = 0.1;
  long long epochs = 200000;
  int seeds = 20;
  double target = 1e-6;
  double init_std = -1.0;  // <0: 1/sqrt(width)
  long long plateau_patience = 4000;
  double plateau_factor = 0.999;
  int threads = 0;  // 0 = hardware concurrency
};

SweepResult single_bsc_sweep(const BscSystem& sys, int phi,
                             const std::vector<int>& widths,
                             const SweepConfig& cfg);

// One mono-bsc coefficient-space training run; returns terminal bsc-loss.
SweepRun single_bsc_run(const BscSystem& sys, int phi, int width,
                        std::uint64_t seed, const SweepConfig& cfg);

}  // namespace wt
