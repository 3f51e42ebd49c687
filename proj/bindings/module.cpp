#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wordtensor/analysis.hpp"
#include "wordtensor/golden.hpp"
#include "wordtensor/io.hpp"

namespace py = pybind11;
using namespace wt;

namespace {

struct PyGroup {
  std::shared_ptr<FiniteGroup> group;
  std::shared_ptr<BscSystem> sys;  // lazy

  const BscSystem& bscs() {
    if (!sys) sys = std::make_shared<BscSystem>(compute_bscs(*group));
    return *sys;
  }
};

PyGroup make_group(const std::string& spec) {
  return PyGroup{std::make_shared<FiniteGroup>(make_builtin_group(spec)), {}};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "word tensors over finite groups";

  py::class_<PyGroup>(m, "Group")
      .def(py::init(&make_group), py::arg("spec"))
      .def_property_readonly("name",
                             [](PyGroup& g) { return g.group->name(); })
      .def_property_readonly("order",
                             [](PyGroup& g) { return g.group->order(); })
      .def_property_readonly("abelian",
                             [](PyGroup& g) { return g.group->is_abelian(); })
      .def("mult", [](PyGroup& g, int a, int b) { return g.group->mult(a, b); })
      .def("inv", [](PyGroup& g, int a) { return g.group->inv(a); })
      .def("labels", [](PyGroup& g) { return g.group->labels(); })
      .def("eval_word",
           [](PyGroup& g, const std::string& w, int a, int b) {
             return eval_word(*g.group, parse_word(w), a, b);
           })
      .def("bscs",
           [](PyGroup& g) {
             py::list out;
             for (const Bsc& b : g.bscs().bscs) {
               py::dict d;
               d["index"] = b.index;
               d["type"] = b.type == BscType::I    ? "I"
                           : b.type == BscType::II ? "II"
                                                   : "III";
               d["d"] = b.d;
               d["D"] = b.D;
               out.append(d);
             }
             return out;
           })
      .def("character_table",
           [](PyGroup& g) {
             const CharacterTable& t = g.bscs().table;
             return std::make_pair(t.degrees, Eigen::MatrixXcd(t.chars));
           })
      .def("bsc_basis",
           [](PyGroup& g, int b) {
             return Eigen::MatrixXd(g.bscs().bscs.at(b).basis);
           })
      .def("fusion_table",
           [](PyGroup& g) {
             FusionTable f = fusion_table(g.bscs());
             return f.entry;
           })
      .def("bsc_support",
           [](PyGroup& g, const Eigen::VectorXd& v, double tau) {
             return bsc_support(g.bscs(), v, tau);
           },
           py::arg("v"), py::arg("tau") = tol::kRowSupport);

  m.def("word_letters", [](const std::string& text) {
    Word w = parse_word(text);
    return std::make_tuple(w.canonical(), w.n_a(), w.n_b());
  });

  m.def(
      "exact_support",
      [](PyGroup& g, const std::string& wtext, bool norms) {
        SupportSet s = exact_bsc3_support(
            word_tensor(*g.group, parse_word(wtext)), g.bscs());
        py::list out;
        for (const Triple& t : s.triples) {
          if (norms)
            out.append(py::make_tuple(t[0], t[1], t[2], s.norms.at(t)));
          else
            out.append(py::make_tuple(t[0], t[1], t[2]));
        }
        return out;
      },
      py::arg("group"), py::arg("word"), py::arg("norms") = false);

  m.def("cfc_support", [](PyGroup& g, const std::string& wtext) {
    SupportSet s = cfc_support(*g.group, parse_word(wtext), g.bscs());
    py::list out;
    for (const Triple& t : s.triples)
      out.append(py::make_tuple(t[0], t[1], t[2]));
    return out;
  });

  m.def(
      "box_rank",
      [](PyGroup& g, const std::string& wtext, bool exact, std::uint64_t seed) {
        const BscSystem& sys = g.bscs();
        SupportSet s = exact_bsc3_support(
            word_tensor(*g.group, parse_word(wtext)), sys);
        std::vector<int> dims;
        for (const Bsc& b : sys.bscs) dims.push_back(b.D);
        SolveMode mode = exact || s.triples.size() <= 16 ? SolveMode::Exact
                                                         : SolveMode::Heuristic;
        BoxRankSolution sol = minimize_box_rank(s.triples, dims, mode, seed);
        py::dict out;
        out["rank"] = sol.rank;
        out["optimal"] = sol.optimal;
        py::list boxes;
        for (const Box& b : sol.cover.boxes)
          boxes.append(py::make_tuple(b.phi, b.psi, b.xi));
        out["boxes"] = boxes;
        return out;
      },
      py::arg("group"), py::arg("word"), py::arg("exact") = false,
      py::arg("seed") = 7);

  py::class_<Weights>(m, "Weights")
      .def_property_readonly("width", &Weights::width)
      .def_readonly("a", &Weights::a)
      .def_readonly("b", &Weights::b)
      .def_readonly("c", &Weights::c)
      .def("to_json", &weights_to_json);

  m.def("construct_single_bsc", [](PyGroup& g, int bsc) {
    const BscSystem& sys = g.bscs();
    const Bsc& phi = sys.bscs.at(bsc);
    int block = phi.type == BscType::I ? phi.d : phi.d / 2;
    return construct_single_bsc_weights(*g.group, sys, bsc,
                                        best_decomposition(block));
  });
  m.def("construct_full", [](PyGroup& g) {
    return construct_full_multiplication_weights(*g.group, g.bscs());
  });
  m.def(
      "hd_loss",
      [](PyGroup& g, const Weights& w, const std::string& wtext) {
        Dataset full = build_dataset(*g.group, parse_word(wtext));
        return std::make_pair(loss(ModelKind::HD(), w, full.samples),
                              accuracy(ModelKind::HD(), w, full.samples));
      },
      py::arg("group"), py::arg("weights"), py::arg("word") = "ab");

  m.def(
      "train_hd",
      [](PyGroup& g, const std::string& wtext, int width, double lr,
         long long epochs, std::uint64_t seed, double alpha) {
        Dataset full = build_dataset(*g.group, parse_word(wtext));
        Dataset train_set = full, test_set;
        test_set.group = g.group.get();
        if (alpha < 1.0) {
          auto [tr, te] = split_dataset(full, alpha, seed);
          train_set = std::move(tr);
          test_set = std::move(te);
        }
        TrainConfig cfg;
        cfg.lr = lr;
        cfg.epochs = epochs;
        cfg.seed = seed;
        Weights init =
            init_gaussian(*g.group, width, 1.0 / std::sqrt(width), seed);
        RunRecord run = train(cfg, train_set, test_set, std::move(init));
        py::dict out;
        out["final_train_loss"] = run.history.back().train_loss;
        out["final_train_acc"] = run.history.back().train_acc;
        out["epochs_run"] = run.epochs_run;
        out["stop_reason"] = run.stop_reason;
        return py::make_tuple(out, run.terminal);
      },
      py::arg("group"), py::arg("word"), py::arg("width"), py::arg("lr") = 0.1,
      py::arg("epochs") = 10000, py::arg("seed") = 0, py::arg("alpha") = 1.0);

  m.def("heatmap", [](PyGroup& g, const Weights& w) {
    HeatmapData h = heatmap(g.bscs(), w);
    py::dict out;
    out["a"] = h.a;
    out["b"] = h.b;
    out["c"] = h.c;
    out["columns"] = h.column_names;
    return out;
  });
}
