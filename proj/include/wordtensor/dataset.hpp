#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wordtensor/word.hpp"

namespace wt {

struct Sample {
  Element a, b, c;  // c = w(a, b)
};

// The full (or split) dataset of a (group, word) pair. The full dataset
// enumerates (a, b) row-major and has exactly |G|^2 samples.
struct Dataset {
  const FiniteGroup* group = nullptr;
  std::vector<Sample> samples;

  int size() const { return static_cast<int>(samples.size()); }
};

Dataset build_dataset(const FiniteGroup& g, const Word& w);

// Uniformly random split reproducible from seed; train gets
// round(alpha * size) samples. alpha must lie in (0, 1].
std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double alpha,
                                          std::uint64_t seed);

// One-hot helpers: input of length 2|G| = 1_a | 1_b, label of length |G|.
Eigen::VectorXd one_hot_input(const FiniteGroup& g, Element a, Element b);
Eigen::VectorXd one_hot_label(const FiniteGroup& g, Element c);
Element argmax_decode(const Eigen::VectorXd& out);  // ties -> lowest index

}  // namespace wt
