#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "wordtensor/group.hpp"

namespace wt {

// Complex character table of a finite group. Row i is the character of the
// i-th irreducible representation evaluated on conjugacy-class
// representatives; classes follow FiniteGroup::classes() order.
struct CharacterTable {
  const FiniteGroup* group = nullptr;
  Eigen::MatrixXcd chars;        // k x k, chars(i, j) = chi_i(class j)
  std::vector<int> degrees;      // chi_i(e), integer-rounded and checked
  std::vector<int> class_sizes;

  int num_irreps() const { return static_cast<int>(degrees.size()); }
  std::complex<double> value(int irrep, Element g) const {
    return chars(irrep, group->class_of(g));
  }
};

// Simultaneous diagonalization of the class-sum multiplication matrices via
// a random real linear combination; retries with fresh coefficients if the
// spectrum fails to separate. Orthogonality relations are verified.
CharacterTable compute_character_table(const FiniteGroup& g);

// Frobenius-Schur indicator (1/|G|) sum_g chi(g^2), rounded to {-1, 0, +1}
// with checked residual.
int frobenius_schur(const CharacterTable& table, int irrep);

}  // namespace wt
