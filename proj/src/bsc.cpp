#include "wordtensor/bsc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wt {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using std::complex;

Eigen::MatrixXd isotypic_projector(const FiniteGroup& g,
                                   const CharacterTable& table,
                                   const std::vector<int>& irreps) {
  int n = g.order();
  // Convolution kernel e(x) = sum_psi (d_psi / |G|) chi_psi(x^-1); the
  // projector entry (x, y) is e(x y^-1), equivalently conj-symmetric
  // chi(y x^-1) for self-conjugate unions.
  std::vector<complex<double>> kernel(n, 0.0);
  for (int irrep : irreps) {
    double scale = static_cast<double>(table.degrees[irrep]) / n;
    for (Element x = 0; x < n; ++x)
      kernel[x] += scale * table.value(irrep, g.inv(x));
  }
  MatrixXd p(n, n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      p(x, y) = kernel[g.mult(x, g.inv(y))].real();
  return p;
}

namespace {

MatrixXd basis_from_projector(const MatrixXd& p, int want_rank) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(p);
  const auto& vals = es.eigenvalues();
  int n = static_cast<int>(vals.size());
  int rank = 0;
  for (int i = 0; i < n; ++i) {
    double v = vals[i];
    if (v > 0.5) {
      if (std::abs(v - 1.0) > tol::kOrthogonalityAccept)
        throw std::runtime_error("isotypic projector: eigenvalue " +
                                 std::to_string(v) + " far from {0,1}");
      ++rank;
    } else if (std::abs(v) > tol::kOrthogonalityAccept) {
      throw std::runtime_error("isotypic projector: eigenvalue " +
                               std::to_string(v) + " far from {0,1}");
    }
  }
  if (rank != want_rank)
    throw std::runtime_error("isotypic projector: numerical rank " +
                             std::to_string(rank) + " != D = " +
                             std::to_string(want_rank));
  // Eigenvalues ascend, so the top `rank` eigenvectors span the image.
  MatrixXd basis(want_rank, p.rows());
  for (int i = 0; i < want_rank; ++i)
    basis.row(i) = es.eigenvectors().col(n - want_rank + i).transpose();
  return basis;
}

bool char_vec_less_desc(const VectorXd& a, const VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    if (std::abs(d) > 1e-6) return d > 0;
  }
  return false;
}

}  // namespace

BscSystem compute_bscs(const FiniteGroup& g_in) {
  BscSystem sys;
  sys.group_storage = std::make_shared<const FiniteGroup>(g_in);
  const FiniteGroup& g = *sys.group_storage;
  sys.group = &g;
  sys.table = compute_character_table(g);
  int k = sys.table.num_irreps();
  sys.fs.resize(k);
  for (int i = 0; i < k; ++i) sys.fs[i] = frobenius_schur(sys.table, i);

  std::vector<char> used(k, 0);
  std::vector<Bsc> bscs;
  for (int i = 0; i < k; ++i) {
    if (used[i]) continue;
    Bsc b;
    b.constituents = {i};
    used[i] = 1;
    int d = sys.table.degrees[i];
    if (sys.fs[i] == 1) {
      b.type = BscType::I;
      b.d = d;
      b.D = d * d;
    } else if (sys.fs[i] == -1) {
      b.type = BscType::III;
      b.d = d;
      b.D = d * d;
    } else {
      // Pair the complex irrep with its conjugate.
      int partner = -1;
      for (int j = 0; j < k && partner < 0; ++j) {
        if (used[j] || j == i) continue;
        bool match = true;
        for (int c = 0; c < k && match; ++c)
          match = std::abs(sys.table.chars(j, c) -
                           std::conj(sys.table.chars(i, c))) < 1e-6;
        if (match) partner = j;
      }
      if (partner < 0)
        throw std::runtime_error(
            "assemble_bscs: complex irrep without conjugate partner "
            "(character table corrupt)");
      used[partner] = 1;
      b.constituents.push_back(partner);
      b.type = BscType::II;
      b.d = 2 * d;
      b.D = b.d * b.d / 2;
    }
    b.character = VectorXd::Zero(g.order());
    for (Element x = 0; x < g.order(); ++x) {
      complex<double> v = 0.0;
      for (int c : b.constituents) v += sys.table.value(c, x);
      if (std::abs(v.imag()) > 1e-8)
        throw std::runtime_error("assemble_bscs: non-real bsc character");
      b.character[x] = v.real();
    }
    bscs.push_back(std::move(b));
  }

  auto is_triv = [&](const Bsc& b) {
    return b.D == 1 && (b.character.array() - 1.0).abs().maxCoeff() < 1e-6;
  };
  std::sort(bscs.begin(), bscs.end(), [&](const Bsc& x, const Bsc& y) {
    bool tx = is_triv(x), ty = is_triv(y);
    if (tx != ty) return tx;
    if (x.D != y.D) return x.D < y.D;
    return char_vec_less_desc(x.character, y.character);
  });

  long long total_d = 0;
  sys.irrep_to_bsc.assign(k, -1);
  for (int i = 0; i < static_cast<int>(bscs.size()); ++i) {
    bscs[i].index = i;
    bscs[i].basis = basis_from_projector(
        isotypic_projector(g, sys.table, bscs[i].constituents), bscs[i].D);
    for (int c : bscs[i].constituents) sys.irrep_to_bsc[c] = i;
    total_d += bscs[i].D;
  }
  if (total_d != g.order())
    throw std::runtime_error("assemble_bscs: sum of D != |G|");
  sys.bscs = std::move(bscs);
  return sys;
}

Eigen::VectorXd project_vector(const BscSystem& sys, const Eigen::VectorXd& v,
                               int bsc) {
  const MatrixXd& basis = sys.bscs[bsc].basis;
  return basis.transpose() * (basis * v);
}

Eigen::VectorXd bsc_energies(const BscSystem& sys, const Eigen::VectorXd& v) {
  VectorXd out = VectorXd::Zero(sys.size());
  double total = v.squaredNorm();
  if (total == 0.0) return out;
  for (int i = 0; i < sys.size(); ++i)
    out[i] = (sys.bscs[i].basis * v).squaredNorm() / total;
  return out;
}

std::vector<int> bsc_support(const BscSystem& sys, const Eigen::VectorXd& v,
                             double tau) {
  VectorXd e = bsc_energies(sys, v);
  std::vector<int> out;
  for (int i = 0; i < sys.size(); ++i)
    if (e[i] > tau) out.push_back(i);
  return out;
}

StructureConstants structure_constants(const FiniteGroup& g, const Bsc& phi) {
  int n = g.order();
  int D = phi.D;
  const MatrixXd& v = phi.basis;  // D x n
  StructureConstants sc;
  sc.r.assign(D, MatrixXd::Zero(D, D));

  // r^k_{ij} = sum_{g,h} v^i_g v^j_h v^k_{gh}.
  MatrixXd shifted(D, n);
  for (Element a = 0; a < n; ++a) {
    for (int kk = 0; kk < D; ++kk)
      for (Element h = 0; h < n; ++h) shifted(kk, h) = v(kk, g.mult(a, h));
    MatrixXd t = v * shifted.transpose();  // t(j, k) = sum_h v^j_h v^k_{ah}
    for (int kk = 0; kk < D; ++kk)
      for (int i = 0; i < D; ++i) sc.r[kk].row(i) += v(i, a) * t.col(kk).transpose();
  }

  // s^k_i = sum_g v^i_g v^k_{g^-1}.
  MatrixXd v_inv(D, n);
  for (Element a = 0; a < n; ++a) v_inv.col(a) = v.col(g.inv(a));
  sc.s = v_inv * v.transpose();  // s(k, i)

  // Reconstruction residuals.
  double r_res = 0.0;
  for (Element a = 0; a < n; ++a) {
    MatrixXd pred(D, n);  // pred(k, h) = v_a^T R_k V(:, h)
    for (int kk = 0; kk < D; ++kk)
      pred.row(kk) = (v.col(a).transpose() * sc.r[kk]) * v;
    for (int kk = 0; kk < D; ++kk)
      for (Element h = 0; h < n; ++h)
        r_res = std::max(r_res,
                         std::abs(pred(kk, h) - v(kk, g.mult(a, h))));
  }
  sc.r_residual = r_res;
  sc.s_residual = (sc.s * v - v_inv).cwiseAbs().maxCoeff();
  if (sc.r_residual > tol::kStructureResidual ||
      sc.s_residual > tol::kStructureResidual)
    throw std::runtime_error("structure_constants: residual above tolerance");
  return sc;
}

}  // namespace wt
