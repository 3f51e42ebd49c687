#include "wordtensor/fusion.hpp"

#include <cmath>
#include <stdexcept>

namespace wt {

namespace {

// Decompose a real class function (given on class representatives) into
// irreducible characters; multiplicities must round to non-negative
// integers. Returns the set of bscs containing a constituent.
std::vector<int> decompose_to_bscs(const BscSystem& sys,
                                   const Eigen::VectorXd& class_fn) {
  const FiniteGroup& g = *sys.group;
  const CharacterTable& t = sys.table;
  int k = t.num_irreps();
  std::vector<char> present(sys.size(), 0);
  for (int i = 0; i < k; ++i) {
    std::complex<double> acc(0, 0);
    for (int j = 0; j < k; ++j)
      acc += static_cast<double>(t.class_sizes[j]) * class_fn[j] *
             std::conj(t.chars(i, j));
    acc /= g.order();
    double m = std::round(acc.real());
    if (std::abs(acc - m) > tol::kIntegerResidual || m < -0.5)
      throw std::runtime_error("fusion: non-integer multiplicity residual " +
                               std::to_string(std::abs(acc - m)));
    if (m > 0.5) present[sys.irrep_to_bsc[i]] = 1;
  }
  std::vector<int> out;
  for (int i = 0; i < sys.size(); ++i)
    if (present[i]) out.push_back(i);
  return out;
}

Eigen::VectorXd bsc_class_character(const BscSystem& sys, int b) {
  const FiniteGroup& g = *sys.group;
  int k = sys.table.num_irreps();
  Eigen::VectorXd out(k);
  for (int j = 0; j < k; ++j)
    out[j] = sys.bscs[b].character[g.classes()[j][0]];
  return out;
}

}  // namespace

FusionTable fusion_table(const BscSystem& sys) {
  FusionTable f;
  int m = sys.size();
  f.entry.assign(m, std::vector<std::vector<int>>(m));
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd ci = bsc_class_character(sys, i);
    for (int j = i; j < m; ++j) {
      Eigen::VectorXd prod =
          ci.cwiseProduct(bsc_class_character(sys, j));
      f.entry[i][j] = decompose_to_bscs(sys, prod);
      f.entry[j][i] = f.entry[i][j];
    }
  }
  return f;
}

std::vector<int> bsc_power_support(const BscSystem& sys, int zeta, int n) {
  int k = sys.table.num_irreps();
  Eigen::VectorXd acc = Eigen::VectorXd::Ones(k);
  Eigen::VectorXd base = bsc_class_character(sys, zeta);
  for (int i = 0; i < n; ++i) acc = acc.cwiseProduct(base);
  return decompose_to_bscs(sys, acc);
}

}  // namespace wt
