#include "wordtensor/training.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "wordtensor/rng.hpp"
#include "wordtensor/word_tensor.hpp"

namespace wt {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

bool is_full_rowmajor(const Dataset& ds) {
  int n = ds.group->order();
  if (ds.size() != n * n) return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Sample& s = ds.samples[a * n + b];
      if (s.a != a || s.b != b) return false;
    }
  return true;
}

// Full-batch HD loss and gradient on the full dataset via Gram matrices:
// d/dA = (2/|G|^3) [((BB^T) . (CC^T)) A - T2a], T2a(i,g) = sum_h B(i,h)
// C(i, w(g,h)); likewise for B, C.
double hd_full_loss_grad(const Weights& w,
                         const std::vector<std::vector<Element>>& result,
                         Weights* grad) {
  int n = static_cast<int>(w.a.cols());
  int m = w.width();
  double inv_n3 = 1.0 / (static_cast<double>(n) * n * n);
  MatrixXd ga = w.a * w.a.transpose();
  MatrixXd gb = w.b * w.b.transpose();
  MatrixXd gc = w.c * w.c.transpose();

  MatrixXd t2a = MatrixXd::Zero(m, n), t2b = MatrixXd::Zero(m, n),
           t2c = MatrixXd::Zero(m, n);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      int f = result[g][h];
      t2a.col(g) += w.b.col(h).cwiseProduct(w.c.col(f));
      t2b.col(h) += w.a.col(g).cwiseProduct(w.c.col(f));
      t2c.col(f) += w.a.col(g).cwiseProduct(w.b.col(h));
    }

  double norm_tw = (ga.cwiseProduct(gb).cwiseProduct(gc)).sum();
  double dot = w.a.cwiseProduct(t2a).sum();
  double l = inv_n3 * (norm_tw - 2.0 * dot + static_cast<double>(n) * n);

  if (grad) {
    grad->group = w.group;
    grad->a = 2.0 * inv_n3 * ((gb.cwiseProduct(gc)) * w.a - t2a);
    grad->b = 2.0 * inv_n3 * ((ga.cwiseProduct(gc)) * w.b - t2b);
    grad->c = 2.0 * inv_n3 * ((ga.cwiseProduct(gb)) * w.c - t2c);
  }
  return l;
}

struct AdamState {
  MatrixXd ma, mb, mc, va, vb, vc;
  long long t = 0;

  void init(const Weights& w) {
    ma = MatrixXd::Zero(w.a.rows(), w.a.cols());
    mb = ma;
    mc = ma;
    va = ma;
    vb = ma;
    vc = ma;
  }
  void step(const TrainConfig& cfg, Weights& w, const Weights& g) {
    ++t;
    double bc1 = 1.0 - std::pow(cfg.beta1, t);
    double bc2 = 1.0 - std::pow(cfg.beta2, t);
    auto upd = [&](MatrixXd& m, MatrixXd& v, MatrixXd& x, const MatrixXd& gr) {
      m = cfg.beta1 * m + (1.0 - cfg.beta1) * gr;
      v = cfg.beta2 * v + (1.0 - cfg.beta2) * gr.cwiseProduct(gr);
      MatrixXd mhat = m / bc1;
      MatrixXd vhat = v / bc2;
      x -= cfg.lr * (mhat.array() / (vhat.array().sqrt() + cfg.adam_eps))
               .matrix();
      if (cfg.weight_decay > 0) x -= cfg.lr * cfg.weight_decay * x;
    };
    upd(ma, va, w.a, g.a);
    upd(mb, vb, w.b, g.b);
    upd(mc, vc, w.c, g.c);
  }
};

}  // namespace

double bsc_loss(const BscSystem& sys, const Weights& w, int phi,
                const Dataset& full) {
  int n = sys.group->order();
  if (full.size() != n * n)
    throw std::invalid_argument("bsc_loss: defined on the full dataset only");
  const MatrixXd& basis = sys.bscs[phi].basis;
  double acc = 0.0;
  VectorXd f(n), coeff(basis.rows());
  ModelKind hd = ModelKind::HD();
  for (const Sample& s : full.samples) {
    f = forward_onehot(hd, w, s.a, s.b);
    f[s.c] -= 1.0;
    acc += (basis * f).squaredNorm();
  }
  return acc / (static_cast<double>(n) * n * n);
}

double bsc3_loss(const BscSystem& sys, const Weights& w, const Triple& t,
                 const Dataset& full) {
  int n = sys.group->order();
  if (full.size() != n * n)
    throw std::invalid_argument("bsc3_loss: defined on the full dataset only");
  const MatrixXd& ba = sys.bscs[t[0]].basis;
  const MatrixXd& bb = sys.bscs[t[1]].basis;
  const MatrixXd& bc = sys.bscs[t[2]].basis;
  int da = static_cast<int>(ba.rows()), db = static_cast<int>(bb.rows()),
      dc = static_cast<int>(bc.rows());
  int m = w.width();
  // Rows in block coordinates.
  MatrixXd ca = ba * w.a.transpose();  // da x m
  MatrixXd cb = bb * w.b.transpose();
  MatrixXd cc = bc * w.c.transpose();
  // delta block coefficients: sum_{a,b} ba(i,a) bb(j,b) bc(k, w(a,b)).
  std::vector<double> delta(static_cast<std::size_t>(da) * db * dc, 0.0);
  for (const Sample& s : full.samples)
    for (int i = 0; i < da; ++i) {
      double vi = ba(i, s.a);
      if (vi == 0.0) continue;
      for (int j = 0; j < db; ++j) {
        double vij = vi * bb(j, s.b);
        for (int k = 0; k < dc; ++k)
          delta[(static_cast<std::size_t>(i) * db + j) * dc + k] +=
              vij * bc(k, s.c);
      }
    }
  double acc = 0.0;
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < dc; ++k) {
        double tw = 0.0;
        for (int r = 0; r < m; ++r) tw += ca(i, r) * cb(j, r) * cc(k, r);
        double d = tw - delta[(static_cast<std::size_t>(i) * db + j) * dc + k];
        acc += d * d;
      }
  return acc / (static_cast<double>(n) * n * n);
}

RunRecord train(const TrainConfig& cfg, const Dataset& train_set,
                const Dataset& test_set, Weights w) {
  auto t_start = std::chrono::steady_clock::now();
  w.check_consistent();
  if (cfg.monitor_bsc >= 0 && !cfg.sys)
    throw std::invalid_argument("train: monitor_bsc requires cfg.sys");
  const FiniteGroup& g = *train_set.group;
  int n = g.order();

  bool fast_hd = cfg.model.hadamard && cfg.batch == 0 &&
                 is_full_rowmajor(train_set);
  std::vector<std::vector<Element>> result;
  if (fast_hd) {
    result.assign(n, std::vector<Element>(n));
    for (const Sample& s : train_set.samples) result[s.a][s.b] = s.c;
  }
  // Constant off-subspace label energy for mono-bsc monitoring.
  double mono_offset = 0.0;
  if (cfg.monitor_bsc >= 0)
    mono_offset = (n - cfg.sys->bscs[cfg.monitor_bsc].D) /
                  (static_cast<double>(n) * n);

  AdamState adam;
  if (cfg.optimizer == Optimizer::AdamW) adam.init(w);
  Rng batch_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<int> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  RunRecord rec;
  double best_monitored = std::numeric_limits<double>::infinity();
  long long best_epoch = 0;
  std::string stop = "epochs";
  long long epoch = 0;

  auto log_epoch = [&](long long e, double train_loss) {
    EpochRecord er;
    er.epoch = e;
    er.train_loss = train_loss;
    er.train_acc = accuracy(cfg.model, w, train_set.samples);
    if (test_set.size() > 0) {
      er.test_loss = loss(cfg.model, w, test_set.samples);
      er.test_acc = accuracy(cfg.model, w, test_set.samples);
    }
    if (cfg.log_bsc_losses && cfg.sys) {
      for (int b = 0; b < cfg.sys->size(); ++b)
        er.bsc_losses.push_back(bsc_loss(*cfg.sys, w, b, train_set));
    }
    rec.history.push_back(std::move(er));
  };

  for (epoch = 0; epoch < cfg.epochs; ++epoch) {
    double train_loss;
    if (fast_hd && cfg.optimizer == Optimizer::GD) {
      Weights grad;
      train_loss = hd_full_loss_grad(w, result, &grad);
      w.a -= cfg.lr * grad.a;
      w.b -= cfg.lr * grad.b;
      w.c -= cfg.lr * grad.c;
    } else if (cfg.batch == 0) {
      Weights grad = gradient(cfg.model, w, train_set.samples);
      train_loss = loss(cfg.model, w, train_set.samples);
      if (cfg.optimizer == Optimizer::GD) {
        w.a -= cfg.lr * grad.a;
        w.b -= cfg.lr * grad.b;
        w.c -= cfg.lr * grad.c;
      } else {
        adam.step(cfg, w, grad);
      }
    } else {
      batch_rng.shuffle(order);
      for (int start = 0; start < train_set.size(); start += cfg.batch) {
        std::vector<Sample> batch;
        for (int i = start; i < std::min(start + cfg.batch, train_set.size());
             ++i)
          batch.push_back(train_set.samples[order[i]]);
        Weights grad = gradient(cfg.model, w, batch);
        if (cfg.optimizer == Optimizer::GD) {
          w.a -= cfg.lr * grad.a;
          w.b -= cfg.lr * grad.b;
          w.c -= cfg.lr * grad.c;
        } else {
          adam.step(cfg, w, grad);
        }
      }
      train_loss = loss(cfg.model, w, train_set.samples);
    }

    if (!std::isfinite(train_loss)) {
      stop = "diverged";
      break;
    }
    double monitored =
        cfg.monitor_bsc >= 0 ? std::max(train_loss - mono_offset, 0.0)
                             : train_loss;
    rec.final_monitored_loss = monitored;

    if ((epoch % cfg.log_every) == 0) log_epoch(epoch, train_loss);
    if (monitored < cfg.stop_loss) {
      stop = "stop_loss";
      ++epoch;
      break;
    }
    if (cfg.plateau_patience > 0) {
      if (monitored < best_monitored * cfg.plateau_factor) {
        best_monitored = monitored;
        best_epoch = epoch;
      } else if (epoch - best_epoch >= cfg.plateau_patience) {
        stop = "plateau";
        ++epoch;
        break;
      }
    }
  }

  double final_loss = loss(cfg.model, w, train_set.samples);
  log_epoch(epoch, final_loss);
  rec.final_monitored_loss = cfg.monitor_bsc >= 0
                                 ? std::max(final_loss - mono_offset, 0.0)
                                 : final_loss;
  rec.terminal = std::move(w);
  rec.epochs_run = epoch;
  rec.stop_reason = stop;
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return rec;
}

GrokkingMetrics grokking_metrics(const RunRecord& run, double threshold) {
  GrokkingMetrics gm;
  for (const EpochRecord& er : run.history) {
    if (gm.epoch_train_acc < 0 && er.train_acc >= threshold)
      gm.epoch_train_acc = er.epoch;
    if (gm.epoch_test_acc < 0 && er.test_acc >= threshold)
      gm.epoch_test_acc = er.epoch;
  }
  return gm;
}

// ---------------------------------------------------------------------------

namespace {

double off_subspace_energy(const BscSystem& sys, const Weights& w,
                           const std::vector<int>& row_bsc) {
  double worst = 0.0;
  for (int i = 0; i < w.width(); ++i) {
    const MatrixXd& basis = sys.bscs[row_bsc[i]].basis;
    for (const MatrixXd* m : {&w.a, &w.b, &w.c}) {
      VectorXd row = m->row(i).transpose();
      VectorXd off = row - basis.transpose() * (basis * row);
      worst = std::max(worst, off.squaredNorm());
    }
  }
  return worst;
}

}  // namespace

DecouplingReport decoupling_check(const BscSystem& sys, const Word& word,
                                  const std::vector<int>& row_bsc,
                                  double init_std, std::uint64_t seed,
                                  double lr, long long steps,
                                  long long compare_steps) {
  const FiniteGroup& g = *sys.group;
  Dataset full = build_dataset(g, word);
  std::vector<std::vector<Element>> result(g.order(),
                                           std::vector<Element>(g.order()));
  for (const Sample& s : full.samples) result[s.a][s.b] = s.c;

  Weights w = init_mono_bsc(sys, row_bsc, init_std, seed);
  DecouplingReport rep;

  // Per-bsc sub-models share the concatenated model's initial rows.
  std::vector<int> present;
  for (int b : row_bsc)
    if (std::find(present.begin(), present.end(), b) == present.end())
      present.push_back(b);
  std::sort(present.begin(), present.end());
  std::vector<Weights> subs;
  std::vector<std::vector<int>> sub_rows;
  for (int b : present) {
    std::vector<int> rows;
    for (int i = 0; i < w.width(); ++i)
      if (row_bsc[i] == b) rows.push_back(i);
    Weights sw;
    sw.group = &g;
    sw.a.resize(rows.size(), g.order());
    sw.b.resize(rows.size(), g.order());
    sw.c.resize(rows.size(), g.order());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      sw.a.row(r) = w.a.row(rows[r]);
      sw.b.row(r) = w.b.row(rows[r]);
      sw.c.row(r) = w.c.row(rows[r]);
    }
    subs.push_back(std::move(sw));
    sub_rows.push_back(std::move(rows));
  }

  auto gd_step = [&](Weights& x) {
    Weights grad;
    hd_full_loss_grad(x, result, &grad);
    x.a -= lr * grad.a;
    x.b -= lr * grad.b;
    x.c -= lr * grad.c;
  };

  for (long long t = 0; t < steps; ++t) {
    gd_step(w);
    if (t < compare_steps) {
      for (std::size_t si = 0; si < subs.size(); ++si) gd_step(subs[si]);
      double dev = 0.0;
      for (std::size_t si = 0; si < subs.size(); ++si)
        for (std::size_t r = 0; r < sub_rows[si].size(); ++r) {
          int i = sub_rows[si][r];
          dev = std::max(
              dev, (subs[si].a.row(r) - w.a.row(i)).cwiseAbs().maxCoeff());
          dev = std::max(
              dev, (subs[si].b.row(r) - w.b.row(i)).cwiseAbs().maxCoeff());
          dev = std::max(
              dev, (subs[si].c.row(r) - w.c.row(i)).cwiseAbs().maxCoeff());
        }
      rep.max_trajectory_deviation =
          std::max(rep.max_trajectory_deviation, dev);
    }
  }
  rep.max_off_subspace_energy = off_subspace_energy(sys, w, row_bsc);
  return rep;
}

AttractivenessReport attractiveness_probe(const BscSystem& sys,
                                          const Word& word,
                                          const Weights& aligned,
                                          const std::vector<int>& row_bsc,
                                          double epsilon, double lr,
                                          std::uint64_t seed) {
  const FiniteGroup& g = *sys.group;
  int n = g.order();
  int m = aligned.width();
  AttractivenessReport rep;

  // Genericity: one of {A_i (x) B_i}, {A_i (x) C_i}, {B_i (x) C_i} must be
  // linearly independent across rows.
  auto kron_rank_full = [&](const MatrixXd& x, const MatrixXd& y) {
    MatrixXd rows(m, n * n);
    for (int i = 0; i < m; ++i)
      for (int p = 0; p < n; ++p)
        rows.row(i).segment(p * n, n) = x(i, p) * y.row(i);
    Eigen::JacobiSVD<MatrixXd> svd(rows);
    return svd.singularValues()(m - 1) > 1e-10 * svd.singularValues()(0);
  };
  rep.generic = kron_rank_full(aligned.a, aligned.b) ||
                kron_rank_full(aligned.a, aligned.c) ||
                kron_rank_full(aligned.b, aligned.c);
  if (!rep.generic) return rep;  // inconclusive

  Rng rng(seed);
  Weights pert = aligned;
  for (int i = 0; i < m; ++i) {
    const MatrixXd& basis = sys.bscs[row_bsc[i]].basis;
    for (MatrixXd* mat : {&pert.a, &pert.b, &pert.c}) {
      VectorXd noise(n);
      for (int j = 0; j < n; ++j) noise[j] = rng.normal();
      noise -= basis.transpose() * (basis * noise);
      double norm = noise.norm();
      if (norm > 0) mat->row(i) += (epsilon / norm) * noise.transpose();
    }
  }

  auto normal_error = [&](const Weights& x) {
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
      const MatrixXd& basis = sys.bscs[row_bsc[i]].basis;
      for (const MatrixXd* mat : {&x.a, &x.b, &x.c}) {
        VectorXd row = mat->row(i).transpose();
        total += (row - basis.transpose() * (basis * row)).squaredNorm();
      }
    }
    return total;
  };

  Dataset full = build_dataset(g, word);
  std::vector<std::vector<Element>> result(n, std::vector<Element>(n));
  for (const Sample& s : full.samples) result[s.a][s.b] = s.c;
  rep.error_before = normal_error(pert);
  Weights grad;
  hd_full_loss_grad(pert, result, &grad);
  pert.a -= lr * grad.a;
  pert.b -= lr * grad.b;
  pert.c -= lr * grad.c;
  rep.error_after = normal_error(pert);
  return rep;
}

// ---------------------------------------------------------------------------
// Mono-bsc coefficient-space dynamics for the multiplication word.

namespace {

struct CoeffProblem {
  int d = 0;                    // D_phi
  double inv_n3 = 0;
  std::vector<double> target;   // D^3 block of the word tensor
};

CoeffProblem make_coeff_problem(const BscSystem& sys, int phi) {
  const FiniteGroup& g = *sys.group;
  int n = g.order();
  const MatrixXd& basis = sys.bscs[phi].basis;
  int d = static_cast<int>(basis.rows());
  CoeffProblem p;
  p.d = d;
  p.inv_n3 = 1.0 / (static_cast<double>(n) * n * n);
  p.target.assign(static_cast<std::size_t>(d) * d * d, 0.0);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      Element c = g.mult(a, b);
      for (int i = 0; i < d; ++i) {
        double vi = basis(i, a);
        for (int j = 0; j < d; ++j) {
          double vij = vi * basis(j, b);
          for (int k = 0; k < d; ++k)
            p.target[(static_cast<std::size_t>(i) * d + j) * d + k] +=
                vij * basis(k, c);
        }
      }
    }
  return p;
}

// Loss and gradient of (1/|G|^3) || sum_r alpha_r x beta_r x gamma_r - T ||^2.
double coeff_loss_grad(const CoeffProblem& p, const MatrixXd& alpha,
                       const MatrixXd& beta, const MatrixXd& gamma,
                       MatrixXd* ga, MatrixXd* gb, MatrixXd* gc) {
  int d = p.d;
  int m = static_cast<int>(alpha.rows());
  MatrixXd gaa = alpha * alpha.transpose();
  MatrixXd gbb = beta * beta.transpose();
  MatrixXd ggc = gamma * gamma.transpose();
  double norm_tw = gaa.cwiseProduct(gbb).cwiseProduct(ggc).sum();
  double norm_t = 0.0;
  for (double v : p.target) norm_t += v * v;

  // Contractions of the target with pairs of row vectors.
  MatrixXd t_bc = MatrixXd::Zero(m, d);  // row r: sum_{jk} T[., j, k] b_j c_k
  MatrixXd t_ac = MatrixXd::Zero(m, d);
  MatrixXd t_ab = MatrixXd::Zero(m, d);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const double* tij = &p.target[(static_cast<std::size_t>(i) * d + j) * d];
        double ai = alpha(r, i), bj = beta(r, j);
        double dot_c = 0.0;
        for (int k = 0; k < d; ++k) {
          double t = tij[k];
          dot_c += t * gamma(r, k);
          t_ab(r, k) += t * ai * bj;
        }
        t_bc(r, i) += bj * dot_c;
        t_ac(r, j) += ai * dot_c;
      }
  double dot = 0.0;
  for (int r = 0; r < m; ++r) dot += alpha.row(r).dot(t_bc.row(r));

  if (ga) {
    *ga = 2.0 * p.inv_n3 * ((gbb.cwiseProduct(ggc)) * alpha - t_bc);
    *gb = 2.0 * p.inv_n3 * ((gaa.cwiseProduct(ggc)) * beta - t_ac);
    *gc = 2.0 * p.inv_n3 * ((gaa.cwiseProduct(gbb)) * gamma - t_ab);
  }
  return p.inv_n3 * (norm_tw - 2.0 * dot + norm_t);
}

}  // namespace

SweepRun single_bsc_run(const BscSystem& sys, int phi, int width,
                        std::uint64_t seed, const SweepConfig& cfg) {
  CoeffProblem p = make_coeff_problem(sys, phi);
  double std_dev = cfg.init_std > 0 ? cfg.init_std : 1.0 / std::sqrt(width);
  Rng rng(seed);
  MatrixXd alpha(width, p.d), beta(width, p.d), gamma(width, p.d);
  for (MatrixXd* m : {&alpha, &beta, &gamma})
    for (int i = 0; i < width; ++i)
      for (int j = 0; j < p.d; ++j) (*m)(i, j) = std_dev * rng.normal();

  SweepRun run;
  run.width = width;
  run.seed = seed;
  MatrixXd ga, gb, gc;
  double best = std::numeric_limits<double>::infinity();
  long long best_epoch = 0;
  double l = coeff_loss_grad(p, alpha, beta, gamma, nullptr, nullptr, nullptr);
  long long e = 0;
  for (; e < cfg.epochs; ++e) {
    l = coeff_loss_grad(p, alpha, beta, gamma, &ga, &gb, &gc);
    if (!std::isfinite(l)) break;
    if (l < cfg.target * 1e-2) {  // converge well past the target
      ++e;
      break;
    }
    if (cfg.plateau_patience > 0) {
      if (l < best * cfg.plateau_factor) {
        best = l;
        best_epoch = e;
      } else if (e - best_epoch >= cfg.plateau_patience) {
        ++e;
        break;
      }
    }
    alpha -= cfg.lr * ga;
    beta -= cfg.lr * gb;
    gamma -= cfg.lr * gc;
  }
  run.final_bsc_loss =
      coeff_loss_grad(p, alpha, beta, gamma, nullptr, nullptr, nullptr);
  run.epochs_run = e;
  return run;
}

double SweepResult::best_loss_at(int width) const {
  double best = std::numeric_limits<double>::infinity();
  for (const SweepRun& r : runs)
    if (r.width == width) best = std::min(best, r.final_bsc_loss);
  return best;
}

SweepResult single_bsc_sweep(const BscSystem& sys, int phi,
                             const std::vector<int>& widths,
                             const SweepConfig& cfg) {
  struct Job {
    int width;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (int w : widths)
    for (int s = 0; s < cfg.seeds; ++s)
      jobs.push_back({w, static_cast<std::uint64_t>(s) * 1000003ULL + w});

  SweepResult result;
  result.runs.resize(jobs.size());
  int n_threads = cfg.threads > 0
                      ? cfg.threads
                      : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) break;
      result.runs[i] =
          single_bsc_run(sys, phi, jobs[i].width, jobs[i].seed, cfg);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::vector<int> ws = widths;
  std::sort(ws.begin(), ws.end());
  for (int w : ws)
    if (result.best_loss_at(w) < cfg.target) {
      result.min_width = w;
      break;
    }
  return result;
}

}  // namespace wt
