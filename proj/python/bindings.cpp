#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pf/henon.hpp"
#include "pf/lozi.hpp"
#include "pf/serialize.hpp"
#include "pf/tree.hpp"

namespace py = pybind11;
using namespace pf;

namespace {

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(Errc::ParseError, e.what());
  }
}

py::dict ordering_dict(const Ordering3& r) {
  py::dict d;
  d["kind"] = r.is_less() ? "less" : r.is_greater() ? "greater" : "equal";
  d["depth"] = r.depth;
  return d;
}

std::string kneading_json(const KneadingSet& K) { return dump_json(json_of(K)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pruning-front toolkit: symbolic order, kneading data, folding "
            "patterns, pruned trees and the Lozi/Henon manifold engines. "
            "Windows and folding patterns travel as text, documents as JSON "
            "strings.";

  m.def(
      "plex",
      [](const std::string& u, const std::string& v, int depth) {
        return ordering_dict(plex_compare(parse_word(u), parse_word(v), depth));
      },
      py::arg("u"), py::arg("v"), py::arg("depth"),
      "Parity-lexicographical comparison of two symbol words.");

  m.def(
      "gplex",
      [](const std::string& p, const std::string& q) {
        return ordering_dict(gplex_compare(parse_window(p), parse_window(q)));
      },
      py::arg("p"), py::arg("q"),
      "Generalized parity order of two windows given as text.");

  m.def(
      "shift_window",
      [](const std::string& w, int k) { return format_window(shift(parse_window(w), k)); },
      py::arg("window"), py::arg("k"));

  m.def(
      "is_wu_admissible",
      [](const std::string& word, const std::string& kneading, int depth) {
        const KneadingSet K = kneading_set_from_json(parse_json(kneading));
        return dump_json(json_of(is_wu_admissible(parse_word(word), K, depth)));
      },
      py::arg("word"), py::arg("kneading"), py::arg("depth"),
      "One-sided admissibility of a word against a kneading set (JSON).");

  m.def(
      "is_admissible",
      [](const std::string& window, const std::string& kneading, int n,
         long long candidate_budget) {
        const KneadingSet K = kneading_set_from_json(parse_json(kneading));
        AdmissibleOptions opt;
        opt.candidate_budget = candidate_budget;
        return dump_json(json_of(is_admissible(parse_window(window), K, n, opt)));
      },
      py::arg("window"), py::arg("kneading"), py::arg("n"),
      py::arg("candidate_budget") = 1 << 20,
      "Finite-depth admissibility of a two-sided window.");

  m.def(
      "compare_kneading",
      [](const std::string& a, const std::string& b, int depth) {
        return dump_json(json_of(
            compare_kneading_sets(kneading_set_from_json(parse_json(a)),
                                  kneading_set_from_json(parse_json(b)), depth)));
      },
      py::arg("a"), py::arg("b"), py::arg("depth"));

  m.def(
      "compare_folding",
      [](const std::string& a, const std::string& b) {
        return dump_json(json_of(compare_folding(parse_folding(a), parse_folding(b))));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "folding_to_kneading",
      [](const std::string& folding, int min_depth) {
        return kneading_json(folding_to_kneading(parse_folding(folding), min_depth));
      },
      py::arg("folding"), py::arg("min_depth") = 1);

  m.def(
      "kneading_to_folding",
      [](const std::string& kneading, int generations) {
        return format_folding(
            kneading_to_folding(kneading_set_from_json(parse_json(kneading)), generations));
      },
      py::arg("kneading"), py::arg("generations"));

  m.def(
      "folding_to_tree",
      [](const std::string& folding) {
        return dump_json(json_of(folding_to_tree(parse_folding(folding))));
      },
      py::arg("folding"));

  m.def(
      "tree_to_folding",
      [](const std::string& tree) {
        return format_folding(tree_to_folding(tree_from_json(parse_json(tree))));
      },
      py::arg("tree"));

  m.def(
      "tree_to_kneading",
      [](const std::string& tree, int min_depth) {
        return kneading_json(
            tree_to_kneading(mark_tree(tree_from_json(parse_json(tree))), min_depth));
      },
      py::arg("tree"), py::arg("min_depth") = 1);

  m.def(
      "tree_to_graphviz",
      [](const std::string& tree) {
        return tree_to_graphviz(mark_tree(tree_from_json(parse_json(tree))));
      },
      py::arg("tree"));

  m.def(
      "lozi_apply",
      [](double a, double b, double x, double y) {
        const Point r = lozi_apply(LoziParams{a, b}, Point{x, y});
        return py::make_tuple(r.x, r.y);
      },
      py::arg("a"), py::arg("b"), py::arg("x"), py::arg("y"));

  m.def(
      "henon_apply",
      [](double a, double b, double x, double y) {
        const Point r = henon_apply(HenonParams{a, b}, Point{x, y});
        return py::make_tuple(r.x, r.y);
      },
      py::arg("a"), py::arg("b"), py::arg("x"), py::arg("y"));

  py::class_<LoziEngine>(m, "LoziEngine",
                         "Exact unstable-manifold engine for the Lozi family.")
      .def(py::init([](double a, double b, double locus_eps) {
             return LoziEngine(LoziParams{a, b}, locus_eps);
           }),
           py::arg("a"), py::arg("b"), py::arg("locus_eps") = 1e-12)
      .def("kneading_set",
           [](LoziEngine& e, int count, int depth) {
             return kneading_json(e.kneading_set(count, depth));
           },
           py::arg("count"), py::arg("depth"))
      .def("folding",
           [](LoziEngine& e, int generations) {
             return format_folding(e.folding(generations));
           },
           py::arg("generations"))
      .def("itinerary",
           [](LoziEngine& e, double t, int generations, int fwd_depth) {
             return format_window(e.itinerary(t, generations, fwd_depth));
           },
           py::arg("t"), py::arg("generations"), py::arg("fwd_depth"))
      .def("turning_param", &LoziEngine::turning_param, py::arg("index"))
      .def("side",
           [](const LoziEngine& e, double x, double y) {
             return std::string(1, symbol_char(e.side(Point{x, y})));
           },
           py::arg("x"), py::arg("y"))
      .def("manifold_csv",
           [](LoziEngine& e, double target_arclength, double seg_tol,
              long long vertex_budget) {
             return csv_of(e.grow_wu(target_arclength, seg_tol, vertex_budget));
           },
           py::arg("target_arclength"), py::arg("seg_tol"),
           py::arg("vertex_budget") = 1 << 24)
      .def("region_csv",
           [](LoziEngine& e, const std::string& window) {
             return csv_of_region(e.region(parse_window(window)));
           },
           py::arg("window"));

  py::class_<HenonEngine>(m, "HenonEngine",
                          "Heuristic unstable-manifold engine for the Henon family.")
      .def(py::init([](double a, double b, double locus_eps, double seg_tol,
                       int j_max) {
             HenonOptions opt;
             opt.locus_eps = locus_eps;
             opt.seg_tol = seg_tol;
             opt.j_max = j_max;
             return HenonEngine(HenonParams{a, b}, opt);
           }),
           py::arg("a"), py::arg("b"), py::arg("locus_eps") = 1e-9,
           py::arg("seg_tol") = 1e-3, py::arg("j_max") = 12)
      .def("kneading_set",
           [](HenonEngine& e, int count, int depth) {
             return kneading_json(e.kneading_set(count, depth));
           },
           py::arg("count"), py::arg("depth"))
      .def("folding",
           [](HenonEngine& e, int generations) {
             return format_folding(e.folding(generations));
           },
           py::arg("generations"))
      .def("itinerary",
           [](HenonEngine& e, double t, int generations, int fwd_depth) {
             return format_window(e.itinerary(t, generations, fwd_depth));
           },
           py::arg("t"), py::arg("generations"), py::arg("fwd_depth"))
      .def("turning_param", &HenonEngine::turning_param, py::arg("index"))
      .def("candidates",
           [](const HenonEngine& e) {
             py::list out;
             for (const CriticalPoint& c : e.candidates()) {
               py::dict d;
               d["t"] = c.t;
               d["x"] = c.p.x;
               d["y"] = c.p.y;
               d["score"] = c.score;
               out.append(d);
             }
             return out;
           })
      .def("manifold_csv",
           [](HenonEngine& e, double target_arclength, double seg_tol,
              long long vertex_budget) {
             return csv_of(e.grow_wu(target_arclength, seg_tol, vertex_budget));
           },
           py::arg("target_arclength"), py::arg("seg_tol"),
           py::arg("vertex_budget") = 1 << 24);
}
