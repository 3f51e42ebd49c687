#pragma once

#include <vector>

#include "wordtensor/bsc.hpp"

namespace wt {

// For each bsc pair, the set of bscs occurring in their tensor product,
// decided by integer decomposition of the product character.
struct FusionTable {
  std::vector<std::vector<std::vector<int>>> entry;  // entry[i][j], sorted

  int size() const { return static_cast<int>(entry.size()); }
  const std::vector<int>& at(int i, int j) const { return entry[i][j]; }
};

FusionTable fusion_table(const BscSystem& sys);

// bscs occurring in the n-th tensor power of bsc zeta (n >= 0; the 0-th
// power is the trivial representation).
std::vector<int> bsc_power_support(const BscSystem& sys, int zeta, int n);

}  // namespace wt
