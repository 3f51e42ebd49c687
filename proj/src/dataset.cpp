#include "wordtensor/dataset.hpp"

#include <numeric>
#include <stdexcept>

#include "wordtensor/rng.hpp"

namespace wt {

Dataset build_dataset(const FiniteGroup& g, const Word& w) {
  Dataset ds;
  ds.group = &g;
  ds.samples.reserve(static_cast<std::size_t>(g.order()) * g.order());
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      ds.samples.push_back({a, b, eval_word(g, w, a, b)});
  return ds;
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double alpha,
                                          std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("split_dataset: alpha must lie in (0, 1]");
  std::vector<int> idx(ds.samples.size());
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  rng.shuffle(idx);
  auto n_train = static_cast<std::size_t>(
      std::llround(alpha * static_cast<double>(ds.samples.size())));
  if (n_train == 0) n_train = 1;
  Dataset train, test;
  train.group = test.group = ds.group;
  for (std::size_t i = 0; i < idx.size(); ++i)
    (i < n_train ? train : test).samples.push_back(ds.samples[idx[i]]);
  return {std::move(train), std::move(test)};
}

Eigen::VectorXd one_hot_input(const FiniteGroup& g, Element a, Element b) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(2 * g.order());
  u[a] = 1.0;
  u[g.order() + b] = 1.0;
  return u;
}

Eigen::VectorXd one_hot_label(const FiniteGroup& g, Element c) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(g.order());
  v[c] = 1.0;
  return v;
}

Element argmax_decode(const Eigen::VectorXd& out) {
  Element best = 0;
  for (int i = 1; i < out.size(); ++i)
    if (out[i] > out[best]) best = i;
  return best;
}

}  // namespace wt
