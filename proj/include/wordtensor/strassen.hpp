#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wordtensor/models.hpp"

namespace wt {

// A bilinear algorithm for d x d matrix multiplication: C = sum_l
// <U_l, A> <V_l, B> W_l with entrywise inner products.
struct MatMulDecomposition {
  int d = 1;
  int rank = 1;
  std::vector<Eigen::MatrixXd> u, v, w;
};

MatMulDecomposition matmul_naive(int d);     // rank d^3
MatMulDecomposition strassen2();             // rank 7
MatMulDecomposition laderman3();             // rank 23
// Recursive Strassen composition for d = 2^k (rank 7^k).
MatMulDecomposition strassen_power(int k);
// Shipped table per block size: 1 -> naive, 2 -> strassen2, 3 -> laderman3,
// powers of two -> strassen_power, otherwise naive.
MatMulDecomposition best_decomposition(int d);

// Max abs error of C = AB over random trials.
double verify_decomposition(const MatMulDecomposition& dec, int trials = 100,
                            std::uint64_t seed = 1);

// Single-bsc HD weights realizing the bsc projection of the multiplication
// tensor (D/(d|G|)) chi_phi(a b c^-1). Width m_d for type I, 3 m_{d/2} for
// type II, 8 m_{d/2} for type III; the scale is folded into the C rows.
// `base` must have block size d (type I) or d/2 (types II/III).
Weights construct_single_bsc_weights(const FiniteGroup& g,
                                     const BscSystem& sys, int bsc,
                                     const MatMulDecomposition& base);

// Reference 16-product expansion for type III (width 16 m_{d/2}).
Weights construct_type3_naive_weights(const FiniteGroup& g,
                                      const BscSystem& sys, int bsc,
                                      const MatMulDecomposition& base);

// Concatenation of per-bsc constructions with the shipped decompositions;
// realizes the full multiplication tensor with zero loss.
Weights construct_full_multiplication_weights(const FiniteGroup& g,
                                              const BscSystem& sys);

struct ConstructionReport {
  int width = 0;
  double bsc_loss = 0;      // vs the bsc projection of the word tensor
  double tensor_error = 0;  // max abs entry deviation
};
ConstructionReport verify_construction(const BscSystem& sys, int bsc,
                                       const Weights& w);

}  // namespace wt
