#include "wordtensor/chartable.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wordtensor/rng.hpp"
#include "wordtensor/tolerances.hpp"

namespace wt {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using std::complex;

// Class-algebra structure constants a[i][j][k]: Z_i Z_j = sum_k a_ijk Z_k,
// computed with a fixed representative per class.
std::vector<MatrixXd> class_sum_matrices(const FiniteGroup& g) {
  const auto& classes = g.classes();
  int k = static_cast<int>(classes.size());
  std::vector<MatrixXd> mats(k, MatrixXd::Zero(k, k));
  for (int i = 0; i < k; ++i)
    for (int kk = 0; kk < k; ++kk) {
      Element z = classes[kk][0];
      for (Element x : classes[i]) {
        int j = g.class_of(g.mult(g.inv(x), z));
        // a_{ij}^{kk} counts x in C_i with x^{-1} z in C_j.
        mats[i](j, kk) += 1.0;
      }
    }
  return mats;
}

// Column orthogonality polish: rows of X = diag(sqrt(|C_j|/|G|)) scaling of
// the character matrix form a unitary matrix; symmetric orthogonalization
// projects the numerical table back onto that manifold.
void polish(MatrixXcd& chars, const std::vector<int>& sizes, int order) {
  int k = chars.rows();
  Eigen::VectorXd w(k);
  for (int j = 0; j < k; ++j)
    w[j] = std::sqrt(static_cast<double>(sizes[j]) / order);
  MatrixXcd x = chars * w.asDiagonal();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(x * x.adjoint());
  MatrixXcd inv_sqrt = es.eigenvectors() *
                       es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                       es.eigenvectors().adjoint();
  x = inv_sqrt * x;
  chars = x * w.cwiseInverse().asDiagonal();
}

}  // namespace

CharacterTable compute_character_table(const FiniteGroup& g) {
  const auto& classes = g.classes();
  int k = static_cast<int>(classes.size());
  auto mats = class_sum_matrices(g);

  int identity_class = g.class_of(g.identity());

  Eigen::EigenSolver<MatrixXd> solver;
  MatrixXcd vecs;
  bool separated = false;
  for (int attempt = 0; attempt < 10 && !separated; ++attempt) {
    Rng rng(0x5eedULL + attempt);
    MatrixXd m = MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) m += rng.normal() * mats[i];
    solver.compute(m, /*computeEigenvectors=*/true);
    VectorXcd vals = solver.eigenvalues();
    double scale = vals.cwiseAbs().maxCoeff() + 1.0;
    separated = true;
    for (int i = 0; i < k && separated; ++i)
      for (int j = i + 1; j < k; ++j)
        if (std::abs(vals[i] - vals[j]) < 1e-7 * scale) {
          separated = false;
          break;
        }
    if (separated) vecs = solver.eigenvectors();
  }
  if (!separated)
    throw std::runtime_error(
        "character table: class-sum spectrum not separated after 10 attempts");

  CharacterTable table;
  table.group = &g;
  table.chars.resize(k, k);
  table.degrees.resize(k);
  table.class_sizes.resize(k);
  for (int j = 0; j < k; ++j)
    table.class_sizes[j] = static_cast<int>(classes[j].size());

  for (int i = 0; i < k; ++i) {
    VectorXcd u = vecs.col(i);
    u /= u[identity_class];  // scale so the identity-class entry is 1
    // u_j = |C_j| chi(g_j) / d; recover d from the norm relation
    // sum_j |C_j| |chi(g_j)|^2 = |G|.
    double s = 0.0;
    for (int j = 0; j < k; ++j)
      s += std::norm(u[j]) / table.class_sizes[j];
    double d = std::sqrt(g.order() / s);
    double d_round = std::round(d);
    if (std::abs(d - d_round) > tol::kIntegerResidual || d_round < 1)
      throw std::runtime_error("character table: non-integer degree " +
                               std::to_string(d));
    table.degrees[i] = static_cast<int>(d_round);
    for (int j = 0; j < k; ++j)
      table.chars(i, j) = u[j] * (d_round / table.class_sizes[j]);
  }

  polish(table.chars, table.class_sizes, g.order());

  // Re-round degrees after the polish and verify sum d_i^2 = |G|.
  long long sum_sq = 0;
  for (int i = 0; i < k; ++i) {
    double d = table.chars(i, identity_class).real();
    double d_round = std::round(d);
    if (std::abs(d - d_round) > tol::kIntegerResidual)
      throw std::runtime_error("character table: degree drifted after polish");
    table.degrees[i] = static_cast<int>(d_round);
    sum_sq += table.degrees[i] * table.degrees[i];
  }
  if (sum_sq != g.order())
    throw std::runtime_error("character table: sum of squared degrees " +
                             std::to_string(sum_sq) + " != |G|");

  // Row orthogonality check.
  for (int i = 0; i < k; ++i)
    for (int i2 = 0; i2 < k; ++i2) {
      complex<double> dot(0, 0);
      for (int j = 0; j < k; ++j)
        dot += static_cast<double>(table.class_sizes[j]) * table.chars(i, j) *
               std::conj(table.chars(i2, j));
      dot /= g.order();
      double want = (i == i2) ? 1.0 : 0.0;
      if (std::abs(dot - want) > tol::kOrthogonalityAccept)
        throw std::runtime_error("character table: orthogonality residual " +
                                 std::to_string(std::abs(dot - want)));
    }

  // Deterministic irrep order: trivial first, then by (degree, character
  // vector over elements, lexicographic descending).
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  auto char_on_elements = [&](int i) {
    std::vector<complex<double>> v(g.order());
    for (Element x = 0; x < g.order(); ++x) v[x] = table.chars(i, g.class_of(x));
    return v;
  };
  auto is_trivial = [&](int i) {
    if (table.degrees[i] != 1) return false;
    for (int j = 0; j < k; ++j)
      if (std::abs(table.chars(i, j) - 1.0) > 1e-6) return false;
    return true;
  };
  std::vector<std::vector<complex<double>>> on_el(k);
  for (int i = 0; i < k; ++i) on_el[i] = char_on_elements(i);
  std::sort(perm.begin(), perm.end(), [&](int lhs, int rhs) {
    bool tl = is_trivial(lhs), tr = is_trivial(rhs);
    if (tl != tr) return tl;
    if (table.degrees[lhs] != table.degrees[rhs])
      return table.degrees[lhs] < table.degrees[rhs];
    for (int x = 0; x < g.order(); ++x) {
      double dr = on_el[lhs][x].real() - on_el[rhs][x].real();
      if (std::abs(dr) > 1e-6) return dr > 0;
      double di = on_el[lhs][x].imag() - on_el[rhs][x].imag();
      if (std::abs(di) > 1e-6) return di > 0;
    }
    return false;
  });
  MatrixXcd sorted(k, k);
  std::vector<int> deg(k);
  for (int i = 0; i < k; ++i) {
    sorted.row(i) = table.chars.row(perm[i]);
    deg[i] = table.degrees[perm[i]];
  }
  table.chars = std::move(sorted);
  table.degrees = std::move(deg);
  return table;
}

int frobenius_schur(const CharacterTable& table, int irrep) {
  const FiniteGroup& g = *table.group;
  std::complex<double> s(0, 0);
  for (Element x = 0; x < g.order(); ++x)
    s += table.value(irrep, g.mult(x, x));
  s /= static_cast<double>(g.order());
  double r = std::round(s.real());
  if (std::abs(s - r) > tol::kIntegerResidual || std::abs(r) > 1.0)
    throw std::runtime_error("frobenius_schur: residual too large");
  return static_cast<int>(r);
}

}  // namespace wt
