#include "wordtensor/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wt {

using Eigen::MatrixXd;
using Eigen::VectorXd;

HeatmapData heatmap(const BscSystem& sys, const Weights& w) {
  if (!w.group || w.group->name() != sys.group->name() ||
      w.group->order() != sys.group->order())
    throw std::invalid_argument("heatmap: weights and bscs from different groups");
  int n = sys.group->order();
  int m = w.width();
  HeatmapData h;
  h.a.resize(m, n);
  h.b.resize(m, n);
  h.c.resize(m, n);
  int col = 0;
  for (int bi = 0; bi < sys.size(); ++bi) {
    const MatrixXd& basis = sys.bscs[bi].basis;
    h.group_offsets.push_back(col);
    for (int j = 0; j < basis.rows(); ++j)
      h.column_names.push_back("phi" + std::to_string(bi) + ":" +
                               std::to_string(j));
    h.a.middleCols(col, basis.rows()) =
        (basis * w.a.transpose()).transpose().cwiseAbs();
    h.b.middleCols(col, basis.rows()) =
        (basis * w.b.transpose()).transpose().cwiseAbs();
    h.c.middleCols(col, basis.rows()) =
        (basis * w.c.transpose()).transpose().cwiseAbs();
    col += static_cast<int>(basis.rows());
  }
  h.group_offsets.push_back(col);
  return h;
}

DominationReport domination_report(const BscSystem& sys, const Weights& w,
                                   const std::vector<CandidateCover>& candidates,
                                   double tau) {
  DominationReport rep;
  rep.observed = weight_boxset(sys, w, tau);
  rep.observed_thin = is_thin(rep.observed, sys.size());
  for (const CandidateCover& c : candidates) {
    DominationEntry e;
    e.name = c.name;
    e.dominated = dominated_by(rep.observed, c.cover);
    e.smaller = smaller_than(rep.observed, c.cover);
    rep.entries.push_back(std::move(e));
  }
  for (double t : {1e-3, 3e-3, 1e-2, 3e-2, 5e-2}) {
    BoxSet at_t = weight_boxset(sys, w, t);
    rep.tau_stability.push_back({t, at_t.boxes == rep.observed.boxes});
  }
  return rep;
}

RecoveryReport recover_bsc_subspaces(const BscSystem& sys, const Weights& w,
                                     double ortho_threshold) {
  int m = w.width();
  int n = sys.group->order();

  // Union-find over rows; rows join when any matched pair of their A/B/C
  // vectors has a normalized inner product above threshold.
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

  auto close = [&](const MatrixXd& mat, int i, int j) {
    double ni = mat.row(i).norm(), nj = mat.row(j).norm();
    if (ni == 0 || nj == 0) return false;
    return std::abs(mat.row(i).dot(mat.row(j))) / (ni * nj) > ortho_threshold;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (close(w.a, i, j) || close(w.b, i, j) || close(w.c, i, j))
        unite(i, j);

  std::vector<std::vector<int>> clusters;
  {
    std::vector<int> root_to_cluster(m, -1);
    for (int i = 0; i < m; ++i) {
      int r = find(i);
      if (root_to_cluster[r] < 0) {
        root_to_cluster[r] = static_cast<int>(clusters.size());
        clusters.emplace_back();
      }
      clusters[root_to_cluster[r]].push_back(i);
    }
  }

  RecoveryReport rep;
  std::vector<char> matched(sys.size(), 0);
  for (const auto& rows : clusters) {
    // Span of all A/B/C rows of the cluster.
    MatrixXd stack(3 * rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      stack.row(3 * r) = w.a.row(rows[r]);
      stack.row(3 * r + 1) = w.b.row(rows[r]);
      stack.row(3 * r + 2) = w.c.row(rows[r]);
    }
    if (stack.cwiseAbs().maxCoeff() == 0.0) continue;
    Eigen::ColPivHouseholderQR<MatrixXd> qr(stack.transpose());
    qr.setThreshold(1e-8);
    int rank = static_cast<int>(qr.rank());
    MatrixXd q = qr.householderQ() * MatrixXd::Identity(n, rank);

    RecoveredSubspace rec;
    rec.rows = rows;
    double best_angle = M_PI / 2;
    for (int b = 0; b < sys.size(); ++b) {
      // Largest principal angle of the cluster span against R_phi, via the
      // sine (residual) form, which stays accurate near zero angle.
      const MatrixXd& basis = sys.bscs[b].basis;
      MatrixXd residual = q - basis.transpose() * (basis * q);
      Eigen::JacobiSVD<MatrixXd> svd(residual);
      double sine = std::clamp(svd.singularValues().maxCoeff(), 0.0, 1.0);
      double angle = std::asin(sine);
      if (angle < best_angle) {
        best_angle = angle;
        rec.matched_bsc = b;
      }
    }
    rec.principal_angle = best_angle;
    if (rec.matched_bsc >= 0) matched[rec.matched_bsc] = 1;
    rep.clusters.push_back(std::move(rec));
  }
  for (int b = 0; b < sys.size(); ++b)
    if (!matched[b]) rep.unrecovered_bscs.push_back(b);
  return rep;
}

}  // namespace wt
