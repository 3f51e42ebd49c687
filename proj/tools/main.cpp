#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wordtensor/golden.hpp"
#include "wordtensor/io.hpp"

namespace {

using namespace wt;
using nlohmann::json;

std::string default_out_root() {
  const char* env = std::getenv("WORDTENSOR_OUT");
  return env ? env : "runs";
}

int cmd_groups_list() {
  for (const std::string& n : builtin_group_names()) std::printf("%s\n", n.c_str());
  return 0;
}

int cmd_groups_info(const std::string& name) {
  FiniteGroup g = make_builtin_group(name);
  std::printf("name: %s\norder: %d\nabelian: %s\nclasses: %d\n",
              g.name().c_str(), g.order(), g.is_abelian() ? "yes" : "no",
              static_cast<int>(g.classes().size()));
  return 0;
}

int cmd_reps(const std::string& what, const std::string& name) {
  FiniteGroup g = make_builtin_group(name);
  if (what == "table") {
    std::cout << character_table_csv(compute_character_table(g));
  } else {
    BscSystem sys = compute_bscs(g);
    if (what == "bscs")
      std::cout << bscs_csv(sys);
    else
      std::cout << fusion_csv(fusion_table(sys));
  }
  return 0;
}

int cmd_tensor_support(const std::string& gname, const std::string& wtext,
                       bool cfc, bool norms) {
  FiniteGroup g = make_builtin_group(gname);
  BscSystem sys = compute_bscs(g);
  Word w = parse_word(wtext);
  SupportSet s = cfc ? cfc_support(g, w, sys)
                     : exact_bsc3_support(word_tensor(g, w), sys);
  std::cout << support_csv(s, norms && !cfc);
  return 0;
}

int cmd_tensor_boxrank(const std::string& gname, const std::string& wtext,
                       bool force_exact, bool force_heuristic,
                       std::uint64_t seed, const std::string& data_dir) {
  FiniteGroup g = make_builtin_group(gname);
  BscSystem sys = compute_bscs(g);
  Word w = parse_word(wtext);
  SupportSet s = exact_bsc3_support(word_tensor(g, w), sys);
  std::vector<int> dims;
  for (const Bsc& b : sys.bscs) dims.push_back(b.D);

  SolveMode mode = s.triples.size() <= 16 ? SolveMode::Exact
                                          : SolveMode::Heuristic;
  if (force_exact) mode = SolveMode::Exact;
  if (force_heuristic) mode = SolveMode::Heuristic;
  std::vector<BoxSet> warm;
  try {
    GoldenTables gt = load_golden(data_dir);
    for (const auto& cc : golden_covers(gt, gname, wtext))
      warm.push_back(cc.cover);
  } catch (const std::exception&) {
    // No golden data available; solve cold.
  }
  BoxRankSolution sol = minimize_box_rank(s.triples, dims, mode, seed, warm);
  RankBounds rb = rank_upper_bounds(sys, s);

  json out;
  out["rank"] = sol.rank;
  out["optimal"] = sol.optimal;
  json boxes = json::array();
  for (const Box& b : sol.cover.boxes)
    boxes.push_back({{"phi", b.phi}, {"psi", b.psi}, {"xi", b.xi}});
  out["boxes"] = boxes;
  out["baselines"] = {{"finest", sol.finest},
                      {"coarsest", sol.coarsest},
                      {"naive_sum", rb.naive_sum},
                      {"corollary", rb.corollary_bound}};
  std::cout << out.dump(1) << "\n";
  return 0;
}

int cmd_construct(const std::string& gname, int bsc, const std::string& base,
                  const std::string& out_path) {
  FiniteGroup g = make_builtin_group(gname);
  BscSystem sys = compute_bscs(g);
  Weights w;
  json report;
  if (bsc >= 0) {
    const Bsc& phi = sys.bscs[bsc];
    int block = phi.type == BscType::I ? phi.d : phi.d / 2;
    MatMulDecomposition dec;
    if (base == "naive")
      dec = matmul_naive(block);
    else if (base == "strassen")
      dec = strassen2();
    else if (base == "laderman")
      dec = laderman3();
    else
      dec = best_decomposition(block);
    w = construct_single_bsc_weights(g, sys, bsc, dec);
    ConstructionReport rep = verify_construction(sys, bsc, w);
    report = {{"width", rep.width},
              {"bsc_loss", rep.bsc_loss},
              {"tensor_error", rep.tensor_error}};
  } else {
    w = construct_full_multiplication_weights(g, sys);
    Dataset full = build_dataset(g, parse_word("ab"));
    report = {{"width", w.width()},
              {"loss", loss(ModelKind::HD(), w, full.samples)},
              {"accuracy", accuracy(ModelKind::HD(), w, full.samples)}};
  }
  write_file(out_path, weights_to_json(w));
  std::cout << report.dump(1) << "\n";
  return 0;
}

TrainConfig parse_train_config(const json& j, std::string& gname,
                               std::string& wtext, int& width, double& alpha,
                               double& init_std, std::string& outdir) {
  static const std::vector<std::string> known = {
      "schema",  "group",   "word",     "model",    "activation",
      "width",   "lr",      "optimizer", "epochs",   "seed",
      "alpha",   "init_std", "log_every", "outdir",  "batch",
      "stop_loss"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("config: unknown key '" + key + "'");
  if (j.value("schema", 1) != 1)
    throw std::invalid_argument("config: unsupported schema version");

  TrainConfig cfg;
  gname = j.at("group").get<std::string>();
  wtext = j.value("word", "ab");
  width = j.at("width").get<int>();
  std::string model = j.value("model", "hd");
  if (model == "hd") {
    cfg.model = ModelKind::HD();
  } else if (model == "tlp") {
    std::string act = j.value("activation", "relu");
    Activation a = act == "relu" ? Activation::ReLU
                   : act == "square" ? Activation::Square
                                     : Activation::Sigmoid;
    cfg.model = ModelKind::TLP(a);
  } else {
    throw std::invalid_argument("config: model must be hd or tlp");
  }
  std::string opt = j.value("optimizer", "gd");
  cfg.optimizer = opt == "adamw" ? Optimizer::AdamW : Optimizer::GD;
  cfg.lr = j.value("lr", cfg.optimizer == Optimizer::AdamW ? 0.005 : 0.1);
  cfg.epochs = j.value("epochs", 200000LL);
  cfg.seed = j.value("seed", 0ULL);
  cfg.batch = j.value("batch", 0);
  cfg.stop_loss = j.value("stop_loss", 1e-12);
  cfg.log_every = j.value("log_every", 50);
  alpha = j.value("alpha", 1.0);
  init_std = j.value("init_std", -1.0);
  outdir = j.value("outdir", default_out_root() + "/run");
  return cfg;
}

int cmd_train(const std::string& config_path) {
  json j = json::parse(read_file(config_path));
  std::string gname, wtext, outdir;
  int width;
  double alpha, init_std;
  TrainConfig cfg = parse_train_config(j, gname, wtext, width, alpha,
                                       init_std, outdir);
  FiniteGroup g = make_builtin_group(gname);
  Word w = parse_word(wtext);
  Dataset full = build_dataset(g, w);
  Dataset train_set = full, test_set;
  test_set.group = &g;
  if (alpha < 1.0) {
    auto [tr, te] = split_dataset(full, alpha, cfg.seed);
    train_set = std::move(tr);
    test_set = std::move(te);
  }
  double std_dev = init_std > 0 ? init_std : 1.0 / std::sqrt(width);
  Weights init = init_gaussian(g, width, std_dev, cfg.seed);
  RunRecord run = train(cfg, train_set, test_set, std::move(init));
  RunArtifacts art = persist_run(run, j.dump(1), outdir);
  json out = {{"outdir", art.outdir},
              {"epochs_run", run.epochs_run},
              {"stop_reason", run.stop_reason},
              {"final_train_loss", run.history.back().train_loss},
              {"final_train_acc", run.history.back().train_acc}};
  if (test_set.size() > 0) {
    out["final_test_loss"] = run.history.back().test_loss;
    out["final_test_acc"] = run.history.back().test_acc;
  }
  std::cout << out.dump(1) << "\n";
  return 0;
}

int cmd_analyze(const std::string& weights_path, const std::string& gname,
                const std::string& candidates, const std::string& wtext,
                const std::string& data_dir, const std::string& outdir) {
  FiniteGroup g = make_builtin_group(gname);
  BscSystem sys = compute_bscs(g);
  Weights w = weights_from_json(read_file(weights_path), g);

  ensure_directory(outdir);
  HeatmapData h = heatmap(sys, w);
  write_file(outdir + "/heatmap.csv", heatmap_csv(h));

  std::vector<CandidateCover> cands;
  if (candidates == "figA7") {
    GoldenTables gt = load_golden(data_dir);
    cands = golden_covers(gt, gname, wtext);
  }
  DominationReport rep = domination_report(sys, w, cands);
  json out;
  json observed = json::array();
  for (const Box& b : rep.observed.boxes)
    observed.push_back({{"phi", b.phi}, {"psi", b.psi}, {"xi", b.xi}});
  out["observed_boxset"] = observed;
  out["observed_thin"] = rep.observed_thin;
  json entries = json::array();
  for (const DominationEntry& e : rep.entries)
    entries.push_back(
        {{"name", e.name}, {"dominated", e.dominated}, {"smaller", e.smaller}});
  out["candidates"] = entries;
  json taus = json::array();
  for (auto [tau, stable] : rep.tau_stability)
    taus.push_back({{"tau", tau}, {"stable", stable}});
  out["tau_sensitivity"] = taus;
  write_file(outdir + "/report.json", out.dump(1));
  std::cout << out.dump(1) << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& data_dir,
               std::uint64_t seed, int threads) {
  GoldenTables gt = load_golden(data_dir);
  std::vector<GoldenCheck> checks;
  auto run = [&](const std::string& name, auto&& fn) {
    if (suite == "all" || suite == name) {
      auto cs = fn();
      checks.insert(checks.end(), cs.begin(), cs.end());
    }
  };
  run("fusion", [&] { return verify_fusion(gt); });
  run("supports", [&] { return verify_supports(gt); });
  run("boxrank", [&] { return verify_boxranks(gt, seed, threads); });
  run("constructions", [&] { return verify_constructions(gt); });
  if (checks.empty())
    throw std::invalid_argument("verify: unknown suite '" + suite + "'");
  int failures = 0;
  for (const GoldenCheck& c : checks) {
    std::printf("%-4s %s%s%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.empty() ? "" : ": ", c.detail.c_str());
    failures += !c.pass;
  }
  std::printf("%d/%d checks passed\n",
              static_cast<int>(checks.size()) - failures,
              static_cast<int>(checks.size()));
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word tensors over finite groups: representation structure, "
               "rank bounds and model training"};
  app.require_subcommand(1);
  std::uint64_t seed = 7;
  std::string data_dir = "data";
  int threads = 0;
  app.add_option("--seed", seed, "global random seed");
  app.add_option("--threads", threads, "worker threads (0 = hardware)");
  app.add_option("--data", data_dir, "data directory with golden tables");

  auto* groups = app.add_subcommand("groups", "built-in group catalogue");
  groups->require_subcommand(1);
  auto* groups_list = groups->add_subcommand("list", "list group families");
  std::string gname;
  auto* groups_info = groups->add_subcommand("info", "group facts");
  groups_info->add_option("name", gname)->required();

  auto* reps = app.add_subcommand("reps", "representation structure");
  std::string reps_what, reps_group;
  for (const char* sub : {"table", "bscs", "fusion"}) {
    auto* s = reps->add_subcommand(sub);
    s->add_option("group", reps_group)->required();
    s->callback([sub, &reps_what] { reps_what = sub; });
  }
  reps->require_subcommand(1);

  auto* tensor = app.add_subcommand("tensor", "word tensor analysis");
  std::string t_group, t_word;
  bool t_cfc = false, t_norms = false, t_exact = false, t_heur = false;
  auto* t_support = tensor->add_subcommand("support", "bsc^3-support");
  t_support->add_option("group", t_group)->required();
  t_support->add_option("word", t_word)->required();
  t_support->add_flag("--cfc", t_cfc, "combinatorial fusion cover");
  t_support->add_flag("--norms", t_norms, "include squared norms");
  auto* t_boxrank = tensor->add_subcommand("boxrank", "box-rank minimization");
  t_boxrank->add_option("group", t_group)->required();
  t_boxrank->add_option("word", t_word)->required();
  t_boxrank->add_flag("--exact", t_exact);
  t_boxrank->add_flag("--heuristic", t_heur);
  tensor->require_subcommand(1);

  std::string cfg_path;
  auto* train_cmd = app.add_subcommand("train", "train a model from a config");
  train_cmd->add_option("--config", cfg_path, "flat JSON config")->required();

  auto* construct = app.add_subcommand("construct", "explicit low-rank weights");
  std::string c_group, c_base = "auto", c_out = "weights.json";
  int c_bsc = -1;
  construct->add_option("group", c_group)->required();
  construct->add_option("--bsc", c_bsc, "single bsc index (default: full)");
  construct->add_option("--base", c_base, "naive|strassen|laderman|auto");
  construct->add_option("-o,--out", c_out, "weights output path");

  auto* analyze = app.add_subcommand("analyze", "weight heatmaps and box-sets");
  std::string a_weights, a_group, a_cands, a_word = "ab", a_out = "analysis";
  analyze->add_option("weights", a_weights)->required();
  analyze->add_option("--group", a_group)->required();
  analyze->add_option("--candidates", a_cands, "figA7");
  analyze->add_option("--word", a_word);
  analyze->add_option("--outdir", a_out);

  auto* verify = app.add_subcommand("verify", "golden-table comparison");
  std::string v_suite = "all";
  verify->add_option("--suite", v_suite,
                     "fusion|supports|boxrank|constructions|all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (*groups_list) return cmd_groups_list();
    if (*groups_info) return cmd_groups_info(gname);
    if (*reps) return cmd_reps(reps_what, reps_group);
    if (*t_support) return cmd_tensor_support(t_group, t_word, t_cfc, t_norms);
    if (*t_boxrank)
      return cmd_tensor_boxrank(t_group, t_word, t_exact, t_heur, seed,
                                data_dir);
    if (*train_cmd) return cmd_train(cfg_path);
    if (*construct) return cmd_construct(c_group, c_bsc, c_base, c_out);
    if (*analyze)
      return cmd_analyze(a_weights, a_group, a_cands, a_word, data_dir, a_out);
    if (*verify) return cmd_verify(v_suite, data_dir, seed, threads);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
