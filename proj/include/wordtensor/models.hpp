#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "wordtensor/boxes.hpp"
#include "wordtensor/dataset.hpp"

namespace wt {

enum class Activation { ReLU, Square, Sigmoid };

struct ModelKind {
  bool hadamard = true;
  Activation activation = Activation::Square;  // TLP only

  static ModelKind HD() { return {true, Activation::Square}; }
  static ModelKind TLP(Activation act) { return {false, act}; }
};

// Shared weight space of the HD and TLP models: three m x |G| matrices.
struct Weights {
  Eigen::MatrixXd a, b, c;
  const FiniteGroup* group = nullptr;

  int width() const { return static_cast<int>(a.rows()); }
  void check_consistent() const;
};

double activate(Activation act, double x);
double activate_grad(Activation act, double x);  // ReLU subgradient 0 at 0

// f(x, y) = C^T (Ax . By) for HD; C^T sigma(Ax + By) for TLP.
Eigen::VectorXd forward(const ModelKind& kind, const Weights& w,
                        const Eigen::VectorXd& x, const Eigen::VectorXd& y);
// One-hot fast path.
Eigen::VectorXd forward_onehot(const ModelKind& kind, const Weights& w,
                               Element a, Element b);

double loss(const ModelKind& kind, const Weights& w,
            const std::vector<Sample>& samples);
double accuracy(const ModelKind& kind, const Weights& w,
                const std::vector<Sample>& samples);

// Analytic gradient of the MSE loss over the samples.
Weights gradient(const ModelKind& kind, const Weights& w,
                 const std::vector<Sample>& samples);

// Dense |G|^3 tensor sum_i A_i (x) B_i (x) C_i, flattened ((a*n)+b)*n+c.
std::vector<double> hd_tensor(const Weights& w);

// Box-set of an HD model: per row, the product of the bsc-supports of the
// three rows. Rows with any zero factor contribute nothing.
BoxSet weight_boxset(const BscSystem& sys, const Weights& w,
                     double tau = tol::kRowSupport);

Weights init_gaussian(const FiniteGroup& g, int width, double std_dev,
                      std::uint64_t seed);
// Rows drawn Gaussian in the coordinates of the assigned bsc's basis.
Weights init_mono_bsc(const BscSystem& sys, const std::vector<int>& row_bsc,
                      double std_dev, std::uint64_t seed);

// Width-doubling transformation realizing the HD model inside TLP(square):
// A' = [A;A]/2, B' = [B;-B]/2, C' = [C;-C].
Weights hd_to_tlp_square(const Weights& w);

}  // namespace wt
