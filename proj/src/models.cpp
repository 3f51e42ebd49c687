#include "wordtensor/models.hpp"

#include <cmath>
#include <stdexcept>

#include "wordtensor/rng.hpp"

namespace wt {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void Weights::check_consistent() const {
  if (a.rows() != b.rows() || a.rows() != c.rows() || a.rows() < 1)
    throw std::invalid_argument("weights: A, B, C must share a row count >= 1");
  if (group &&
      (a.cols() != group->order() || b.cols() != group->order() ||
       c.cols() != group->order()))
    throw std::invalid_argument("weights: column count != |G|");
}

double activate(Activation act, double x) {
  switch (act) {
    case Activation::ReLU: return x > 0 ? x : 0.0;
    case Activation::Square: return x * x;
    case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
  }
  return 0.0;
}

double activate_grad(Activation act, double x) {
  switch (act) {
    case Activation::ReLU: return x > 0 ? 1.0 : 0.0;
    case Activation::Square: return 2.0 * x;
    case Activation::Sigmoid: {
      double s = 1.0 / (1.0 + std::exp(-x));
      return s * (1.0 - s);
    }
  }
  return 0.0;
}

Eigen::VectorXd forward(const ModelKind& kind, const Weights& w,
                        const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != w.a.cols() || y.size() != w.b.cols())
    throw std::invalid_argument("forward: input dimension mismatch");
  VectorXd ax = w.a * x, by = w.b * y;
  VectorXd hidden(w.width());
  if (kind.hadamard) {
    hidden = ax.cwiseProduct(by);
  } else {
    for (int i = 0; i < w.width(); ++i)
      hidden[i] = activate(kind.activation, ax[i] + by[i]);
  }
  return w.c.transpose() * hidden;
}

Eigen::VectorXd forward_onehot(const ModelKind& kind, const Weights& w,
                               Element a, Element b) {
  VectorXd ax = w.a.col(a), by = w.b.col(b);
  VectorXd hidden(w.width());
  if (kind.hadamard) {
    hidden = ax.cwiseProduct(by);
  } else {
    for (int i = 0; i < w.width(); ++i)
      hidden[i] = activate(kind.activation, ax[i] + by[i]);
  }
  return w.c.transpose() * hidden;
}

double loss(const ModelKind& kind, const Weights& w,
            const std::vector<Sample>& samples) {
  if (samples.empty()) throw std::invalid_argument("loss: empty sample set");
  int n = static_cast<int>(w.a.cols());
  double acc = 0.0;
  for (const Sample& s : samples) {
    VectorXd f = forward_onehot(kind, w, s.a, s.b);
    f[s.c] -= 1.0;
    acc += f.squaredNorm();
  }
  return acc / (static_cast<double>(n) * samples.size());
}

double accuracy(const ModelKind& kind, const Weights& w,
                const std::vector<Sample>& samples) {
  if (samples.empty()) throw std::invalid_argument("accuracy: empty sample set");
  int hits = 0;
  for (const Sample& s : samples)
    hits += argmax_decode(forward_onehot(kind, w, s.a, s.b)) == s.c;
  return static_cast<double>(hits) / samples.size();
}

Weights gradient(const ModelKind& kind, const Weights& w,
                 const std::vector<Sample>& samples) {
  int n = static_cast<int>(w.a.cols());
  int m = w.width();
  Weights g;
  g.group = w.group;
  g.a = MatrixXd::Zero(m, n);
  g.b = MatrixXd::Zero(m, n);
  g.c = MatrixXd::Zero(m, n);
  double scale = 2.0 / (static_cast<double>(n) * samples.size());
  VectorXd ax(m), by(m), hidden(m), df(n), dh(m);
  for (const Sample& s : samples) {
    ax = w.a.col(s.a);
    by = w.b.col(s.b);
    if (kind.hadamard)
      hidden = ax.cwiseProduct(by);
    else
      for (int i = 0; i < m; ++i)
        hidden[i] = activate(kind.activation, ax[i] + by[i]);
    df = w.c.transpose() * hidden;
    df[s.c] -= 1.0;
    df *= scale;
    g.c += hidden * df.transpose();
    dh = w.c * df;
    if (kind.hadamard) {
      g.a.col(s.a) += dh.cwiseProduct(by);
      g.b.col(s.b) += dh.cwiseProduct(ax);
    } else {
      for (int i = 0; i < m; ++i)
        dh[i] *= activate_grad(kind.activation, ax[i] + by[i]);
      g.a.col(s.a) += dh;
      g.b.col(s.b) += dh;
    }
  }
  return g;
}

std::vector<double> hd_tensor(const Weights& w) {
  int n = static_cast<int>(w.a.cols());
  if (n > 64)
    throw std::invalid_argument(
        "hd_tensor: dense |G|^3 views are capped at |G| <= 64");
  std::vector<double> t(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int i = 0; i < w.width(); ++i)
    for (int a = 0; a < n; ++a) {
      double wa = w.a(i, a);
      if (wa == 0.0) continue;
      for (int b = 0; b < n; ++b) {
        double wab = wa * w.b(i, b);
        if (wab == 0.0) continue;
        double* slice = &t[(static_cast<std::size_t>(a) * n + b) * n];
        for (int c = 0; c < n; ++c) slice[c] += wab * w.c(i, c);
      }
    }
  return t;
}

BoxSet weight_boxset(const BscSystem& sys, const Weights& w, double tau) {
  BoxSet bs;
  for (int i = 0; i < w.width(); ++i) {
    Box box;
    box.phi = bsc_support(sys, w.a.row(i).transpose(), tau);
    box.psi = bsc_support(sys, w.b.row(i).transpose(), tau);
    box.xi = bsc_support(sys, w.c.row(i).transpose(), tau);
    if (box.phi.empty() || box.psi.empty() || box.xi.empty()) continue;
    bs.boxes.push_back(std::move(box));
  }
  std::sort(bs.boxes.begin(), bs.boxes.end());
  bs.boxes.erase(std::unique(bs.boxes.begin(), bs.boxes.end()),
                 bs.boxes.end());
  return bs;
}

Weights init_gaussian(const FiniteGroup& g, int width, double std_dev,
                      std::uint64_t seed) {
  Rng rng(seed);
  Weights w;
  w.group = &g;
  int n = g.order();
  w.a.resize(width, n);
  w.b.resize(width, n);
  w.c.resize(width, n);
  for (MatrixXd* m : {&w.a, &w.b, &w.c})
    for (int i = 0; i < width; ++i)
      for (int j = 0; j < n; ++j) (*m)(i, j) = std_dev * rng.normal();
  return w;
}

Weights init_mono_bsc(const BscSystem& sys, const std::vector<int>& row_bsc,
                      double std_dev, std::uint64_t seed) {
  Rng rng(seed);
  Weights w;
  w.group = sys.group;
  int n = sys.group->order();
  int m = static_cast<int>(row_bsc.size());
  w.a = MatrixXd::Zero(m, n);
  w.b = MatrixXd::Zero(m, n);
  w.c = MatrixXd::Zero(m, n);
  for (MatrixXd* mat : {&w.a, &w.b, &w.c})
    for (int i = 0; i < m; ++i) {
      const MatrixXd& basis = sys.bscs[row_bsc[i]].basis;
      for (int l = 0; l < basis.rows(); ++l)
        mat->row(i) += std_dev * rng.normal() * basis.row(l);
    }
  return w;
}

Weights hd_to_tlp_square(const Weights& w) {
  Weights out;
  out.group = w.group;
  int m = w.width(), n = static_cast<int>(w.a.cols());
  out.a.resize(2 * m, n);
  out.b.resize(2 * m, n);
  out.c.resize(2 * m, n);
  out.a << 0.5 * w.a, 0.5 * w.a;
  out.b << 0.5 * w.b, -0.5 * w.b;
  out.c << w.c, -w.c;
  return out;
}

}  // namespace wt
