#include "wordtensor/word_tensor.hpp"

#include <algorithm>
#include <stdexcept>

namespace wt {

using Eigen::MatrixXd;

WordTensor word_tensor(const FiniteGroup& g, const Word& w) {
  WordTensor t;
  t.group = &g;
  t.word = w;
  t.result.assign(g.order(), std::vector<Element>(g.order()));
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) t.result[a][b] = eval_word(g, w, a, b);
  return t;
}

SupportSet exact_bsc3_support(const WordTensor& t, const BscSystem& sys,
                              double tau) {
  const FiniteGroup& g = *t.group;
  int n = g.order();

  // Stacked orthonormal basis over all bscs (rows) and the map row -> bsc.
  MatrixXd basis(n, n);
  std::vector<int> row_bsc(n);
  {
    int r = 0;
    for (int b = 0; b < sys.size(); ++b) {
      basis.middleRows(r, sys.bscs[b].D) = sys.bscs[b].basis;
      for (int i = 0; i < sys.bscs[b].D; ++i) row_bsc[r + i] = b;
      r += sys.bscs[b].D;
    }
  }

  std::map<Triple, double> norms;
  // For each output basis row k: slice F(a,b) = w^k_{w(a,b)}; coefficients
  // of the slice in the input bases are V F U^T. Cost O(|G|^4) overall,
  // memory one |G|^2 slice at a time.
  MatrixXd f(n, n), coeff(n, n);
  for (int k = 0; k < n; ++k) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) f(a, b) = basis(k, t.result[a][b]);
    coeff = basis * f * basis.transpose();
    int r = 0;
    for (int bi = 0; bi < sys.size(); ++bi) {
      int c = 0;
      for (int bj = 0; bj < sys.size(); ++bj) {
        double e = coeff.block(r, c, sys.bscs[bi].D, sys.bscs[bj].D).squaredNorm();
        if (e > 0) norms[{bi, bj, row_bsc[k]}] += e;
        c += sys.bscs[bj].D;
      }
      r += sys.bscs[bi].D;
    }
  }

  SupportSet s;
  s.kind = SupportKind::Exact;
  double cutoff = tau * t.norm_sq();
  for (const auto& [triple, e] : norms) {
    if (e > cutoff) {
      s.triples.push_back(triple);
      s.norms[triple] = e;
    }
  }
  std::sort(s.triples.begin(), s.triples.end());
  return s;
}

SupportSet cfc_support(const FiniteGroup& g, const Word& w,
                       const BscSystem& sys) {
  if (g.order() != sys.group->order())
    throw std::invalid_argument("cfc_support: group/bsc-system mismatch");
  SupportSet s;
  s.kind = SupportKind::CFC;
  int na = w.n_a(), nb = w.n_b();
  for (int zeta = 0; zeta < sys.size(); ++zeta) {
    auto phis = bsc_power_support(sys, zeta, na);
    auto psis = bsc_power_support(sys, zeta, nb);
    for (int phi : phis)
      for (int psi : psis) s.triples.push_back({phi, psi, zeta});
  }
  std::sort(s.triples.begin(), s.triples.end());
  return s;
}

std::vector<double> single_bsc_projection(const BscSystem& sys, int bsc) {
  const FiniteGroup& g = *sys.group;
  int n = g.order();
  if (n > 64)
    throw std::invalid_argument(
        "single_bsc_projection: dense |G|^3 views are capped at |G| <= 64");
  if (bsc < 0 || bsc >= sys.size())
    throw std::out_of_range("single_bsc_projection: bsc index out of range");
  const Bsc& phi = sys.bscs[bsc];
  double scale = static_cast<double>(phi.D) / (phi.d * n);
  std::vector<double> out(static_cast<std::size_t>(n) * n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      Element ab = g.mult(a, b);
      for (Element c = 0; c < n; ++c)
        out[(static_cast<std::size_t>(a) * n + b) * n + c] =
            scale * phi.character[g.mult(ab, g.inv(c))];
    }
  return out;
}

RankBounds rank_upper_bounds(const BscSystem& sys, const SupportSet& support) {
  RankBounds rb;
  long long n = sys.group->order();
  rb.corollary_bound = n * (n - 1) + 1;
  for (const Triple& t : support.triples) {
    long long a = sys.bscs[t[0]].D, b = sys.bscs[t[1]].D, c = sys.bscs[t[2]].D;
    rb.naive_sum += std::min({a * b, a * c, b * c});
  }
  return rb;
}

}  // namespace wt
