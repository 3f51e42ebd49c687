#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

#include "wordtensor/bsc.hpp"

namespace wt {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using std::complex;

namespace {

constexpr complex<double> kI{0.0, 1.0};

using RepMats = std::vector<MatrixXcd>;

// Real form of a complex representation psi: blocks [[Re, -Im], [Im, Re]].
RepMats real_form(const RepMats& psi) {
  RepMats out;
  out.reserve(psi.size());
  for (const auto& m : psi) {
    int d = static_cast<int>(m.rows());
    MatrixXd rf(2 * d, 2 * d);
    rf.topLeftCorner(d, d) = m.real();
    rf.topRightCorner(d, d) = -m.imag();
    rf.bottomLeftCorner(d, d) = m.imag();
    rf.bottomRightCorner(d, d) = m.real();
    out.push_back(rf.cast<complex<double>>());
  }
  return out;
}

// ---- Young's orthogonal representations of S_n -------------------------

std::vector<std::vector<int>> partitions_of(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest, int maxpart) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, rest - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

// A standard tableau stored as value -> (row, col), values 1..n.
using Tableau = std::vector<std::pair<int, int>>;

void enumerate_syt(const std::vector<int>& shape, std::vector<Tableau>& out) {
  int n = 0;
  for (int r : shape) n += r;
  std::vector<int> fill(shape.size(), 0);
  Tableau t(n + 1);
  auto rec = [&](auto&& self, int v) -> void {
    if (v > n) {
      out.push_back(t);
      return;
    }
    for (std::size_t r = 0; r < shape.size(); ++r) {
      if (fill[r] >= shape[r]) continue;
      if (r > 0 && fill[r] >= fill[r - 1]) continue;
      t[v] = {static_cast<int>(r), fill[r]};
      ++fill[r];
      self(self, v + 1);
      --fill[r];
    }
  };
  rec(rec, 1);
}

// Matrices of the adjacent transpositions (k, k+1), k = 0..n-2 (0-based
// points), in Young's orthogonal form.
std::vector<MatrixXd> yor_generators(const std::vector<int>& shape, int n) {
  std::vector<Tableau> syt;
  enumerate_syt(shape, syt);
  int dim = static_cast<int>(syt.size());
  std::map<Tableau, int> index;
  for (int i = 0; i < dim; ++i) index[syt[i]] = i;

  std::vector<MatrixXd> gens;
  for (int k = 1; k < n; ++k) {  // swaps values k, k+1
    MatrixXd m = MatrixXd::Zero(dim, dim);
    for (int t = 0; t < dim; ++t) {
      auto [r1, c1] = syt[t][k];
      auto [r2, c2] = syt[t][k + 1];
      double dist = (c2 - r2) - (c1 - r1);
      if (r1 == r2) {
        m(t, t) = 1.0;
      } else if (c1 == c2) {
        m(t, t) = -1.0;
      } else {
        Tableau swapped = syt[t];
        std::swap(swapped[k], swapped[k + 1]);
        int t2 = index.at(swapped);
        m(t, t) = 1.0 / dist;
        m(t2, t) = std::sqrt(1.0 - 1.0 / (dist * dist));
      }
    }
    gens.push_back(std::move(m));
  }
  return gens;
}

// One-line image vector of a permutation group element, read from labels
// like "2314" produced by make_symmetric.
std::vector<int> perm_of_label(const std::string& label) {
  std::vector<int> p;
  for (char c : label) p.push_back(c - '1');
  return p;
}

MatrixXd yor_matrix(const std::vector<MatrixXd>& gens,
                    const std::vector<int>& perm) {
  int dim = static_cast<int>(gens.empty() ? 1 : gens[0].rows());
  int n = static_cast<int>(perm.size());
  MatrixXd out = MatrixXd::Identity(dim, dim);
  // Bubble-sort p to the identity recording adjacent swaps; p equals the
  // recorded swaps composed in reverse order.
  std::vector<int> p = perm;
  std::vector<int> swaps;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int x = 0; x + 1 < n; ++x) {
      if (p[x] > p[x + 1]) {
        std::swap(p[x], p[x + 1]);
        swaps.push_back(x);
        moved = true;
      }
    }
  }
  for (auto it = swaps.rbegin(); it != swaps.rend(); ++it)
    out = out * gens[*it];
  return out;
}

std::vector<RepMats> symmetric_candidates(const FiniteGroup& g, int n) {
  std::vector<RepMats> out;
  for (const auto& shape : partitions_of(n)) {
    auto gens = yor_generators(shape, n);
    RepMats rep;
    rep.reserve(g.order());
    for (Element x = 0; x < g.order(); ++x)
      rep.push_back(yor_matrix(gens, perm_of_label(g.labels()[x]))
                        .cast<complex<double>>());
    out.push_back(std::move(rep));
  }
  return out;
}

// ---- other built-in families -------------------------------------------

std::vector<RepMats> dihedral_candidates(const FiniteGroup& g, int n) {
  std::vector<RepMats> out;
  for (int j = 1; 2 * j < n; ++j) {
    RepMats rep(g.order());
    for (int k = 0; k < n; ++k) {
      double th = 2.0 * M_PI * j * k / n;
      MatrixXd rot(2, 2), refl(2, 2);
      rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
      // s r^k maps to diag(1,-1) R(theta).
      refl << std::cos(th), -std::sin(th), -std::sin(th), -std::cos(th);
      rep[k] = rot.cast<complex<double>>();
      rep[n + k] = refl.cast<complex<double>>();
    }
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<RepMats> quaternion_candidates() {
  // [1, -1, i, -i, j, -j, k, -k] in the canonical quaternionic form.
  RepMats rep(8);
  MatrixXcd one = MatrixXcd::Identity(2, 2), mi(2, 2), mj(2, 2), mk(2, 2);
  mi << kI, 0, 0, -kI;
  mj << 0, 1, -1, 0;
  mk << 0, kI, kI, 0;
  rep[0] = one;
  rep[1] = -one;
  rep[2] = mi;
  rep[3] = -mi;
  rep[4] = mj;
  rep[5] = -mj;
  rep[6] = mk;
  rep[7] = -mk;
  return {rep};
}

std::vector<RepMats> m52_candidates(const FiniteGroup& g) {
  // Induced 2-dim complex irreducibles psi_u: a -> diag(w^u, w^{9u}),
  // b -> offdiag(1, 1), w = exp(2 pi i / 16); bscs are their real forms.
  std::vector<RepMats> out;
  for (int u : {1, 3}) {
    RepMats psi(g.order());
    for (int i = 0; i < 16; ++i)
      for (int jj = 0; jj < 2; ++jj) {
        MatrixXcd d = MatrixXcd::Zero(2, 2);
        d(0, 0) = std::polar(1.0, 2.0 * M_PI * u * i / 16.0);
        d(1, 1) = std::polar(1.0, 2.0 * M_PI * 9.0 * u * i / 16.0);
        MatrixXcd x = MatrixXcd::Zero(2, 2);
        x(0, 1) = x(1, 0) = 1.0;
        psi[i + 16 * jj] = jj ? MatrixXcd(d * x) : d;
      }
    out.push_back(real_form(psi));
  }
  return out;
}

std::vector<RepMats> sd16_candidates(const FiniteGroup& g) {
  // Two real 2-dim irreducibles; element a^i b^j c^k indexed i + 4j + 8k.
  std::vector<RepMats> out;
  MatrixXd a1(2, 2), a2(2, 2), bneg(2, 2), cx(2, 2), cd(2, 2);
  a1 << 1, 0, 0, -1;
  a2 << 0, -1, 1, 0;
  bneg << -1, 0, 0, -1;
  cx << 0, 1, 1, 0;
  cd << 1, 0, 0, -1;
  for (int which = 0; which < 2; ++which) {
    RepMats rep(g.order());
    MatrixXd ma = which ? a2 : a1;
    MatrixXd mc = which ? cd : cx;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          MatrixXd m = MatrixXd::Identity(2, 2);
          for (int t = 0; t < i; ++t) m = m * ma;
          if (j) m = m * bneg;
          if (k) m = m * mc;
          rep[i + 4 * j + 8 * k] = m.cast<complex<double>>();
        }
    out.push_back(std::move(rep));
  }
  return out;
}

// ---- matching and verification ------------------------------------------

Eigen::VectorXd rep_character(const RepMats& rep) {
  Eigen::VectorXd chi(static_cast<int>(rep.size()));
  for (std::size_t i = 0; i < rep.size(); ++i) {
    complex<double> t = rep[i].trace();
    chi[static_cast<int>(i)] = t.real();
  }
  return chi;
}

void verify_rep(const FiniteGroup& g, const RepMats& rep, const Bsc& phi) {
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y) {
      double err = (rep[g.mult(x, y)] - rep[x] * rep[y]).cwiseAbs().maxCoeff();
      if (err > tol::kOrthogonalityTarget)
        throw std::runtime_error("explicit rep: homomorphism residual " +
                                 std::to_string(err));
    }
  // Span check: Re/Im parts of the d^2 entry vectors must match R_phi.
  int n = g.order(), d = phi.d;
  MatrixXd entries(2 * d * d, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (Element x = 0; x < n; ++x) {
        entries(2 * (i * d + j), x) = rep[x](i, j).real();
        entries(2 * (i * d + j) + 1, x) = rep[x](i, j).imag();
      }
  Eigen::ColPivHouseholderQR<MatrixXd> qr(entries.transpose());
  if (qr.rank() != phi.D)
    throw std::runtime_error("explicit rep: entry span rank != D");
  MatrixXd q = qr.householderQ() * MatrixXd::Identity(n, phi.D);
  Eigen::JacobiSVD<MatrixXd> svd(q.transpose() * phi.basis.transpose());
  double sigma_min = svd.singularValues().minCoeff();
  double angle = std::acos(std::min(1.0, sigma_min));
  if (angle > 1e-6)
    throw std::runtime_error("explicit rep: principal angle to R_phi = " +
                             std::to_string(angle));
}

}  // namespace

std::vector<Eigen::MatrixXcd> explicit_bsc_matrices(const FiniteGroup& g,
                                                    const BscSystem& sys,
                                                    int bsc) {
  const Bsc& phi = sys.bscs[bsc];
  const CharacterTable& table = sys.table;

  // 1-dim irreducibles come straight off the character table.
  if (phi.type == BscType::I && phi.d == 1) {
    RepMats rep(g.order());
    for (Element x = 0; x < g.order(); ++x) {
      MatrixXcd m(1, 1);
      m(0, 0) = phi.character[x];
      rep[x] = m;
    }
    verify_rep(g, rep, phi);
    return rep;
  }
  // Type II with 1-dim complex constituents: real form of the character.
  if (phi.type == BscType::II && phi.d == 2) {
    int c = phi.constituents[0];
    // Deterministic choice: the constituent whose first nonzero imaginary
    // character value is positive.
    for (Element x = 0; x < g.order(); ++x) {
      double im = table.value(c, x).imag();
      if (std::abs(im) > 1e-8) {
        if (im < 0) c = phi.constituents[1];
        break;
      }
    }
    RepMats psi(g.order());
    for (Element x = 0; x < g.order(); ++x) {
      MatrixXcd m(1, 1);
      m(0, 0) = table.value(c, x);
      psi[x] = m;
    }
    RepMats rep = real_form(psi);
    verify_rep(g, rep, phi);
    return rep;
  }

  // Family-specific constructions, matched to the bsc by character.
  std::vector<RepMats> candidates;
  const std::string& name = g.name();
  if (name.size() > 1 && name[0] == 'S' && name.find('x') == std::string::npos &&
      std::isdigit(static_cast<unsigned char>(name[1]))) {
    candidates = symmetric_candidates(g, std::stoi(name.substr(1)));
  } else if (name.size() > 1 && name[0] == 'D' &&
             std::isdigit(static_cast<unsigned char>(name[1]))) {
    candidates = dihedral_candidates(g, std::stoi(name.substr(1)));
  } else if (name == "Q8") {
    candidates = quaternion_candidates();
  } else if (name == "M52") {
    candidates = m52_candidates(g);
  } else if (name == "SD16") {
    candidates = sd16_candidates(g);
  }
  for (auto& rep : candidates) {
    if (static_cast<int>(rep[0].rows()) != phi.d) continue;
    if ((rep_character(rep) - phi.character).cwiseAbs().maxCoeff() < 1e-6) {
      verify_rep(g, rep, phi);
      return rep;
    }
  }
  throw std::runtime_error("explicit_bsc_matrices: no shipped representation "
                           "for bsc " + std::to_string(bsc) + " of " + name);
}

bool has_explicit_bsc_matrices(const FiniteGroup& g, const BscSystem& sys,
                               int bsc) {
  try {
    explicit_bsc_matrices(g, sys, bsc);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace wt
