#pragma once

#include <string>
#include <vector>

#include "wordtensor/models.hpp"

namespace wt {

// Magnitudes of the weight rows' coefficients on the orthonormal R_phi
// bases, columns grouped by bsc in index order.
struct HeatmapData {
  Eigen::MatrixXd a, b, c;            // m x |G|
  std::vector<int> group_offsets;     // column start per bsc, plus |G| at end
  std::vector<std::string> column_names;  // "phi<i>:<j>"
};

HeatmapData heatmap(const BscSystem& sys, const Weights& w);

struct CandidateCover {
  std::string name;
  BoxSet cover;
};

struct DominationEntry {
  std::string name;
  bool dominated = false;
  bool smaller = false;  // injective domination
};

struct DominationReport {
  BoxSet observed;
  bool observed_thin = false;
  std::vector<DominationEntry> entries;
  // Support threshold sensitivity: tau values for which the observed box-set
  // stays identical to the one at the default threshold.
  std::vector<std::pair<double, bool>> tau_stability;
};

DominationReport domination_report(const BscSystem& sys, const Weights& w,
                                   const std::vector<CandidateCover>& candidates,
                                   double tau = tol::kRowSupport);

struct RecoveredSubspace {
  std::vector<int> rows;
  int matched_bsc = -1;
  double principal_angle = 0.0;  // largest principal angle to R_phi
};

struct RecoveryReport {
  std::vector<RecoveredSubspace> clusters;
  std::vector<int> unrecovered_bscs;
};

// Cluster rows of a (near) mono-bsc-aligned terminal configuration by
// pairwise orthogonality and match each cluster's span to a bsc subspace.
RecoveryReport recover_bsc_subspaces(const BscSystem& sys, const Weights& w,
                                     double ortho_threshold = 1e-3);

}  // namespace wt
