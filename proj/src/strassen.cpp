#include "wordtensor/strassen.hpp"

#include <cmath>
#include <stdexcept>

#include "wordtensor/rng.hpp"
#include "wordtensor/word_tensor.hpp"

namespace wt {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using std::complex;

namespace {

MatrixXd coeff(int d, std::initializer_list<std::array<int, 3>> terms) {
  MatrixXd m = MatrixXd::Zero(d, d);
  for (const auto& t : terms) m(t[0] - 1, t[1] - 1) = t[2];
  return m;
}

}  // namespace

MatMulDecomposition matmul_naive(int d) {
  MatMulDecomposition dec;
  dec.d = d;
  dec.rank = d * d * d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        MatrixXd u = MatrixXd::Zero(d, d), v = MatrixXd::Zero(d, d),
                 w = MatrixXd::Zero(d, d);
        u(i, j) = 1;
        v(j, k) = 1;
        w(i, k) = 1;
        dec.u.push_back(u);
        dec.v.push_back(v);
        dec.w.push_back(w);
      }
  return dec;
}

MatMulDecomposition strassen2() {
  MatMulDecomposition dec;
  dec.d = 2;
  dec.rank = 7;
  auto add = [&](std::initializer_list<std::array<int, 3>> u,
                 std::initializer_list<std::array<int, 3>> v,
                 std::initializer_list<std::array<int, 3>> w) {
    dec.u.push_back(coeff(2, u));
    dec.v.push_back(coeff(2, v));
    dec.w.push_back(coeff(2, w));
  };
  // M1 = (A11+A22)(B11+B22) -> C11 + C22
  add({{1, 1, 1}, {2, 2, 1}}, {{1, 1, 1}, {2, 2, 1}}, {{1, 1, 1}, {2, 2, 1}});
  // M2 = (A21+A22)B11 -> C21 - C22
  add({{2, 1, 1}, {2, 2, 1}}, {{1, 1, 1}}, {{2, 1, 1}, {2, 2, -1}});
  // M3 = A11(B12-B22) -> C12 + C22
  add({{1, 1, 1}}, {{1, 2, 1}, {2, 2, -1}}, {{1, 2, 1}, {2, 2, 1}});
  // M4 = A22(B21-B11) -> C11 + C21
  add({{2, 2, 1}}, {{2, 1, 1}, {1, 1, -1}}, {{1, 1, 1}, {2, 1, 1}});
  // M5 = (A11+A12)B22 -> -C11 + C12
  add({{1, 1, 1}, {1, 2, 1}}, {{2, 2, 1}}, {{1, 1, -1}, {1, 2, 1}});
  // M6 = (A21-A11)(B11+B12) -> C22
  add({{2, 1, 1}, {1, 1, -1}}, {{1, 1, 1}, {1, 2, 1}}, {{2, 2, 1}});
  // M7 = (A12-A22)(B21+B22) -> C11
  add({{1, 2, 1}, {2, 2, -1}}, {{2, 1, 1}, {2, 2, 1}}, {{1, 1, 1}});
  return dec;
}

MatMulDecomposition laderman3() {
  MatMulDecomposition dec;
  dec.d = 3;
  dec.rank = 23;
  auto add = [&](std::initializer_list<std::array<int, 3>> u,
                 std::initializer_list<std::array<int, 3>> v,
                 std::initializer_list<std::array<int, 3>> w) {
    dec.u.push_back(coeff(3, u));
    dec.v.push_back(coeff(3, v));
    dec.w.push_back(coeff(3, w));
  };
  add({{1,1,1},{1,2,1},{1,3,1},{2,1,-1},{2,2,-1},{3,2,-1},{3,3,-1}},
      {{2,2,1}}, {{1,2,1}});
  add({{1,1,1},{2,1,-1}}, {{1,2,-1},{2,2,1}}, {{2,1,1},{2,2,1}});
  add({{2,2,1}},
      {{1,1,-1},{1,2,1},{2,1,1},{2,2,-1},{2,3,-1},{3,1,-1},{3,3,1}},
      {{2,1,1}});
  add({{1,1,-1},{2,1,1},{2,2,1}}, {{1,1,1},{1,2,-1},{2,2,1}},
      {{1,2,1},{2,1,1},{2,2,1}});
  add({{2,1,1},{2,2,1}}, {{1,1,-1},{1,2,1}}, {{1,2,1},{2,2,1}});
  add({{1,1,1}}, {{1,1,1}},
      {{1,1,1},{1,2,1},{1,3,1},{2,1,1},{2,2,1},{3,1,1},{3,3,1}});
  add({{1,1,-1},{3,1,1},{3,2,1}}, {{1,1,1},{1,3,-1},{2,3,1}},
      {{1,3,1},{3,1,1},{3,3,1}});
  add({{1,1,-1},{3,1,1}}, {{1,3,1},{2,3,-1}}, {{3,1,1},{3,3,1}});
  add({{3,1,1},{3,2,1}}, {{1,1,-1},{1,3,1}}, {{1,3,1},{3,3,1}});
  add({{1,1,1},{1,2,1},{1,3,1},{2,2,-1},{2,3,-1},{3,1,-1},{3,2,-1}},
      {{2,3,1}}, {{1,3,1}});
  add({{3,2,1}},
      {{1,1,-1},{1,3,1},{2,1,1},{2,2,-1},{2,3,-1},{3,1,-1},{3,2,1}},
      {{3,1,1}});
  add({{1,3,-1},{3,2,1},{3,3,1}}, {{2,2,1},{3,1,1},{3,2,-1}},
      {{1,2,1},{3,1,1},{3,2,1}});
  add({{1,3,1},{3,3,-1}}, {{2,2,1},{3,2,-1}}, {{3,1,1},{3,2,1}});
  add({{1,3,1}}, {{3,1,1}},
      {{1,1,1},{1,2,1},{1,3,1},{2,1,1},{2,3,1},{3,1,1},{3,2,1}});
  add({{3,2,1},{3,3,1}}, {{3,1,-1},{3,2,1}}, {{1,2,1},{3,2,1}});
  add({{1,3,-1},{2,2,1},{2,3,1}}, {{2,3,1},{3,1,1},{3,3,-1}},
      {{1,3,1},{2,1,1},{2,3,1}});
  add({{1,3,1},{2,3,-1}}, {{2,3,1},{3,3,-1}}, {{2,1,1},{2,3,1}});
  add({{2,2,1},{2,3,1}}, {{3,1,-1},{3,3,1}}, {{1,3,1},{2,3,1}});
  add({{1,2,1}}, {{2,1,1}}, {{1,1,1}});
  add({{2,3,1}}, {{3,2,1}}, {{2,2,1}});
  add({{2,1,1}}, {{1,3,1}}, {{2,3,1}});
  add({{3,1,1}}, {{1,2,1}}, {{3,2,1}});
  add({{3,3,1}}, {{3,3,1}}, {{3,3,1}});
  return dec;
}

MatMulDecomposition strassen_power(int k) {
  if (k < 1) throw std::invalid_argument("strassen_power: k >= 1");
  MatMulDecomposition dec = strassen2();
  MatMulDecomposition base = strassen2();
  for (int level = 1; level < k; ++level) {
    MatMulDecomposition next;
    next.d = dec.d * 2;
    next.rank = dec.rank * base.rank;
    for (int l1 = 0; l1 < dec.rank; ++l1)
      for (int l2 = 0; l2 < base.rank; ++l2) {
        auto kron = [&](const MatrixXd& x, const MatrixXd& y) {
          MatrixXd out(x.rows() * y.rows(), x.cols() * y.cols());
          for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j < x.cols(); ++j)
              out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) =
                  x(i, j) * y;
          return out;
        };
        next.u.push_back(kron(dec.u[l1], base.u[l2]));
        next.v.push_back(kron(dec.v[l1], base.v[l2]));
        next.w.push_back(kron(dec.w[l1], base.w[l2]));
      }
    dec = std::move(next);
  }
  return dec;
}

MatMulDecomposition best_decomposition(int d) {
  if (d == 1) return matmul_naive(1);
  if (d == 2) return strassen2();
  if (d == 3) return laderman3();
  if ((d & (d - 1)) == 0) {
    int k = 0;
    for (int x = d; x > 1; x >>= 1) ++k;
    return strassen_power(k);
  }
  return matmul_naive(d);
}

double verify_decomposition(const MatMulDecomposition& dec, int trials,
                            std::uint64_t seed) {
  Rng rng(seed);
  int d = dec.d;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    MatrixXd a(d, d), b(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        a(i, j) = rng.normal();
        b(i, j) = rng.normal();
      }
    MatrixXd c = MatrixXd::Zero(d, d);
    for (int l = 0; l < dec.rank; ++l)
      c += dec.u[l].cwiseProduct(a).sum() * dec.v[l].cwiseProduct(b).sum() *
           dec.w[l];
    worst = std::max(worst, (c - a * b).cwiseAbs().maxCoeff());
  }
  return worst;
}

// ---------------------------------------------------------------------------

namespace {

struct RealFormBlocks {
  std::vector<MatrixXd> re, im;  // (d/2) x (d/2) per element
};

// Split the real form [[Re, -Im], [Im, Re]] of a type-II bsc.
RealFormBlocks split_type2(const std::vector<MatrixXcd>& rep) {
  int d = static_cast<int>(rep[0].rows());
  int h = d / 2;
  RealFormBlocks out;
  for (const MatrixXcd& m : rep) {
    if (m.imag().cwiseAbs().maxCoeff() > 1e-12)
      throw std::runtime_error("type II real form has imaginary entries");
    MatrixXd r = m.real();
    if ((r.topLeftCorner(h, h) - r.bottomRightCorner(h, h))
                .cwiseAbs()
                .maxCoeff() > 1e-10 ||
        (r.topRightCorner(h, h) + r.bottomLeftCorner(h, h))
                .cwiseAbs()
                .maxCoeff() > 1e-10)
      throw std::runtime_error("type II rep not in real block form");
    out.re.push_back(r.topLeftCorner(h, h));
    out.im.push_back(r.bottomLeftCorner(h, h));
  }
  return out;
}

struct QuaternionBlocks {
  std::vector<MatrixXd> a1, a2, b1, b2;  // (d/2) x (d/2) per element
};

// Split the canonical quaternionic form [[alpha, beta], [-conj(beta),
// conj(alpha)]] of a type-III bsc.
QuaternionBlocks split_type3(const std::vector<MatrixXcd>& rep) {
  int d = static_cast<int>(rep[0].rows());
  int h = d / 2;
  QuaternionBlocks out;
  for (const MatrixXcd& m : rep) {
    MatrixXcd alpha = m.topLeftCorner(h, h);
    MatrixXcd beta = m.topRightCorner(h, h);
    if ((m.bottomLeftCorner(h, h) + beta.conjugate()).cwiseAbs().maxCoeff() >
            1e-10 ||
        (m.bottomRightCorner(h, h) - alpha.conjugate()).cwiseAbs().maxCoeff() >
            1e-10)
      throw std::runtime_error("type III rep not in quaternionic form");
    out.a1.push_back(alpha.real());
    out.a2.push_back(alpha.imag());
    out.b1.push_back(beta.real());
    out.b2.push_back(beta.imag());
  }
  return out;
}

double dot(const MatrixXd& x, const MatrixXd& y) {
  return x.cwiseProduct(y).sum();
}

Weights alloc_weights(const FiniteGroup& g, int width) {
  Weights w;
  w.group = &g;
  w.a = MatrixXd::Zero(width, g.order());
  w.b = MatrixXd::Zero(width, g.order());
  w.c = MatrixXd::Zero(width, g.order());
  return w;
}

void append(Weights& dst, const Weights& src) {
  int m0 = dst.width(), m1 = src.width();
  Weights merged = alloc_weights(*dst.group, m0 + m1);
  merged.a << dst.a, src.a;
  merged.b << dst.b, src.b;
  merged.c << dst.c, src.c;
  dst = std::move(merged);
}

}  // namespace

Weights construct_single_bsc_weights(const FiniteGroup& g,
                                     const BscSystem& sys, int bsc,
                                     const MatMulDecomposition& base) {
  const Bsc& phi = sys.bscs[bsc];
  auto rep = explicit_bsc_matrices(g, sys, bsc);
  int n = g.order();
  double scale = static_cast<double>(phi.D) / (phi.d * n);

  if (phi.type == BscType::I) {
    if (base.d != phi.d)
      throw std::invalid_argument("type I construction needs block size d");
    std::vector<MatrixXd> r(n), r_inv_t(n);
    for (Element x = 0; x < n; ++x) {
      if (rep[x].imag().cwiseAbs().maxCoeff() > 1e-12)
        throw std::runtime_error("type I rep has imaginary entries");
      r[x] = rep[x].real();
    }
    for (Element x = 0; x < n; ++x) r_inv_t[x] = r[g.inv(x)].transpose();
    Weights w = alloc_weights(g, base.rank);
    for (int l = 0; l < base.rank; ++l)
      for (Element x = 0; x < n; ++x) {
        w.a(l, x) = dot(base.u[l], r[x]);
        w.b(l, x) = dot(base.v[l], r[x]);
        w.c(l, x) = scale * dot(base.w[l], r_inv_t[x]);
      }
    return w;
  }

  int h = phi.d / 2;
  if (base.d != h)
    throw std::invalid_argument("type II/III construction needs block size d/2");

  if (phi.type == BscType::II) {
    RealFormBlocks blk = split_type2(rep);
    // tr(RF(a) RF(b) RF(c^-1)) = tr(gamma (R'-I')) + tr(delta (R'+I'))
    //                            - 4 tr(eps R'),
    // gamma = (R_a+I_a)(R_b+I_b), delta = (R_a-I_a)(R_b-I_b), eps = I_a I_b.
    Weights w = alloc_weights(g, 3 * base.rank);
    for (int l = 0; l < base.rank; ++l)
      for (Element x = 0; x < n; ++x) {
        const MatrixXd& re = blk.re[x];
        const MatrixXd& im = blk.im[x];
        MatrixXd rp = blk.re[g.inv(x)].transpose();
        MatrixXd ip = blk.im[g.inv(x)].transpose();
        // gamma block
        w.a(l, x) = dot(base.u[l], re + im);
        w.b(l, x) = dot(base.v[l], re + im);
        w.c(l, x) = scale * dot(base.w[l], rp - ip);
        // delta block
        w.a(base.rank + l, x) = dot(base.u[l], re - im);
        w.b(base.rank + l, x) = dot(base.v[l], re - im);
        w.c(base.rank + l, x) = scale * dot(base.w[l], rp + ip);
        // eps block
        w.a(2 * base.rank + l, x) = dot(base.u[l], im);
        w.b(2 * base.rank + l, x) = dot(base.v[l], im);
        w.c(2 * base.rank + l, x) = -4.0 * scale * dot(base.w[l], rp);
      }
    return w;
  }

  // Type III: eight half-size products of quaternion components.
  QuaternionBlocks q = split_type3(rep);
  // Left/right factors of the products m_1..m_8 and the recombination of
  // (alpha1, alpha2, beta1, beta2)(ab) = sum_i lambda[i] m_i.
  // chi(a b c^-1) = 2 tr over the quaternion scalar part, with component
  // signs (+,-,-,-) against the c^-1 components.
  static const double lambda[8][4] = {
      {1, 0, 0, 0},  {0, 1, 0, 0},  {0, 0, 1, 0},  {0, 0, 0, 1},
      {-1, 1, 1, 1}, {-1, -1, 1, -1}, {-1, 1, -1, -1}, {-1, -1, -1, 1}};
  auto comp = [&](int which, Element x) -> const MatrixXd& {
    switch (which) {
      case 0: return q.a1[x];
      case 1: return q.a2[x];
      case 2: return q.b1[x];
      default: return q.b2[x];
    }
  };
  Weights w = alloc_weights(g, 8 * base.rank);
  for (Element x = 0; x < n; ++x) {
    Element xi = g.inv(x);
    MatrixXd f[8], gm[8], z[8];
    f[0] = 2.0 * q.a1[x];
    gm[0] = q.a1[x];
    f[1] = -2.0 * q.b2[x];
    gm[1] = q.b1[x];
    f[2] = -2.0 * q.a2[x];
    gm[2] = q.b2[x];
    f[3] = -2.0 * q.b1[x];
    gm[3] = q.a2[x];
    MatrixXd sum_pppp = q.a1[x] + q.a2[x] + q.b1[x] + q.b2[x];
    MatrixXd sum_pmpm = q.a1[x] - q.a2[x] + q.b1[x] - q.b2[x];
    MatrixXd sum_ppmm = q.a1[x] + q.a2[x] - q.b1[x] - q.b2[x];
    MatrixXd sum_pmmp = q.a1[x] - q.a2[x] - q.b1[x] + q.b2[x];
    f[4] = 0.25 * sum_pppp;
    gm[4] = sum_pppp;
    f[5] = 0.25 * sum_pmpm;
    gm[5] = sum_pmpm;
    f[6] = 0.25 * sum_ppmm;
    gm[6] = sum_ppmm;
    f[7] = 0.25 * sum_pmmp;
    gm[7] = sum_pmmp;
    for (int i = 0; i < 8; ++i) {
      z[i] = lambda[i][0] * comp(0, xi).transpose() -
             lambda[i][1] * comp(1, xi).transpose() -
             lambda[i][2] * comp(2, xi).transpose() -
             lambda[i][3] * comp(3, xi).transpose();
      for (int l = 0; l < base.rank; ++l) {
        w.a(i * base.rank + l, x) = dot(base.u[l], f[i]);
        w.b(i * base.rank + l, x) = dot(base.v[l], gm[i]);
        w.c(i * base.rank + l, x) = 2.0 * scale * dot(base.w[l], z[i]);
      }
    }
  }
  return w;
}

Weights construct_type3_naive_weights(const FiniteGroup& g,
                                      const BscSystem& sys, int bsc,
                                      const MatMulDecomposition& base) {
  const Bsc& phi = sys.bscs[bsc];
  if (phi.type != BscType::III)
    throw std::invalid_argument("naive quaternionic construction needs type III");
  int h = phi.d / 2;
  if (base.d != h)
    throw std::invalid_argument("construction needs block size d/2");
  QuaternionBlocks q = split_type3(explicit_bsc_matrices(g, sys, bsc));
  int n = g.order();
  double scale = static_cast<double>(phi.D) / (phi.d * n);
  auto comp = [&](int which, Element x) -> const MatrixXd& {
    switch (which) {
      case 0: return q.a1[x];
      case 1: return q.a2[x];
      case 2: return q.b1[x];
      default: return q.b2[x];
    }
  };
  // Quaternion structure: e_u e_v = sign * e_t.
  static const int unit_tab[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_tab[4][4] = {{+1, +1, +1, +1},
                                     {+1, -1, +1, -1},
                                     {+1, -1, -1, +1},
                                     {+1, +1, -1, -1}};
  Weights w = alloc_weights(g, 16 * base.rank);
  int row = 0;
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v) {
      int t = unit_tab[u][v];
      // Scalar part of e_u e_v e_t: e_t^2 = -1 unless t = 0.
      double c_uvw = sign_tab[u][v] * (t == 0 ? 1.0 : -1.0);
      for (int l = 0; l < base.rank; ++l, ++row)
        for (Element x = 0; x < n; ++x) {
          w.a(row, x) = dot(base.u[l], comp(u, x));
          w.b(row, x) = dot(base.v[l], comp(v, x));
          w.c(row, x) =
              2.0 * scale * c_uvw * dot(base.w[l], comp(t, g.inv(x)).transpose());
        }
    }
  return w;
}

Weights construct_full_multiplication_weights(const FiniteGroup& g,
                                              const BscSystem& sys) {
  Weights out;
  bool first = true;
  for (int b = 0; b < sys.size(); ++b) {
    const Bsc& phi = sys.bscs[b];
    int block = phi.type == BscType::I ? phi.d : phi.d / 2;
    Weights part = construct_single_bsc_weights(g, sys, b,
                                                best_decomposition(block));
    if (first) {
      out = std::move(part);
      first = false;
    } else {
      append(out, part);
    }
  }
  return out;
}

ConstructionReport verify_construction(const BscSystem& sys, int bsc,
                                       const Weights& w) {
  ConstructionReport rep;
  rep.width = w.width();
  std::vector<double> target = single_bsc_projection(sys, bsc);
  std::vector<double> got = hd_tensor(w);
  double err = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    double d = got[i] - target[i];
    err = std::max(err, std::abs(d));
    sq += d * d;
  }
  rep.tensor_error = err;
  int n = sys.group->order();
  // bsc-loss of the construction: deviation from the projected tensor plus
  // nothing off-subspace when rows lie in R_phi; report the tensor form.
  rep.bsc_loss = sq / (static_cast<double>(n) * n * n);
  return rep;
}

}  // namespace wt
