#include <atomic>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pf/henon.hpp"
#include "pf/lozi.hpp"
#include "pf/serialize.hpp"

namespace {

// Exit codes: 0 ok, 1 compare found a difference, 2 check rejected,
// 3 admissible rejected, 4 budget exceeded, 5 any other error.
constexpr int kExitDiffer = 1;
constexpr int kExitCheckRejected = 2;
constexpr int kExitRejected = 3;
constexpr int kExitBudget = 4;
constexpr int kExitError = 5;

void print_error(const char* code, const std::string& message) {
  pf::Json j;
  j["error"]["code"] = code;
  j["error"]["message"] = message;
  std::cerr << pf::dump_json(j);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    pf::write_text_file(out, text);
}

struct EngineOpts {
  std::string map = "lozi";
  double a = 0;
  double b = 0;
  double locus_eps = -1;  // engine default when negative
  double seg_tol = -1;    // sampling resolution for the henon engine
};

struct AnyEngine {
  std::optional<pf::LoziEngine> lozi;
  std::optional<pf::HenonEngine> henon;

  static AnyEngine make(const EngineOpts& eo) {
    AnyEngine e;
    if (eo.map == "lozi") {
      e.lozi.emplace(pf::LoziParams{eo.a, eo.b},
                     eo.locus_eps < 0 ? 1e-12 : eo.locus_eps);
    } else if (eo.map == "henon") {
      pf::HenonOptions ho;
      if (eo.locus_eps >= 0) ho.locus_eps = eo.locus_eps;
      if (eo.seg_tol > 0) ho.seg_tol = eo.seg_tol;
      e.henon.emplace(pf::HenonParams{eo.a, eo.b}, ho);
    } else {
      pf::fail(pf::Errc::InvalidArgument, "unknown map " + eo.map);
    }
    return e;
  }
  pf::KneadingSet kneading(int count, int depth) {
    return lozi ? lozi->kneading_set(count, depth) : henon->kneading_set(count, depth);
  }
  pf::FoldingPattern folding(int g) {
    return lozi ? lozi->folding(g) : henon->folding(g);
  }
  pf::WuPolyline grow(double target, double seg_tol, long long budget) {
    return lozi ? lozi->grow_wu(target, seg_tol, budget)
                : henon->grow_wu(target, seg_tol, budget);
  }
};

struct AnyDoc {
  std::string kind;
  pf::KneadingSet K;
  pf::FoldingPattern fp;
  pf::PrunedTree tree;
  pf::Window win;
};

AnyDoc load_any(const std::string& path) {
  const std::string text = pf::read_text_file(path);
  const std::size_t i = text.find_first_not_of(" \t\r\n");
  if (i == std::string::npos) pf::fail(pf::Errc::ParseError, path + ": empty file");
  AnyDoc doc;
  if (text[i] == '{') {
    pf::Json j;
    try {
      j = pf::Json::parse(text);
    } catch (const pf::Json::exception& e) {
      pf::fail(pf::Errc::ParseError, path + ": " + e.what());
    }
    doc.kind = pf::sniff_kind(j);
    if (doc.kind == "kneading_set")
      doc.K = pf::kneading_set_from_json(j);
    else if (doc.kind == "folding_pattern")
      doc.fp = pf::folding_from_json(j);
    else if (doc.kind == "pruned_tree")
      doc.tree = pf::tree_from_json(j);
    else if (doc.kind == "window")
      doc.win = pf::window_from_json(j);
    else
      pf::fail(pf::Errc::ParseError, path + ": unknown kind " + doc.kind);
    return doc;
  }
  // Bare text: folding windows use digits, symbol windows use -, ~, +.
  if (text.find_first_of("01") != std::string::npos) {
    doc.kind = "folding_pattern";
    doc.fp = pf::parse_folding(text);
  } else {
    doc.kind = "window";
    doc.win = pf::parse_window(text);
  }
  return doc;
}

struct Opt {
  EngineOpts eo;
  std::string from;
  std::string out;
  std::string format;
  std::string window_text;
  std::string window_file;
  std::string to_kind;
  std::string batch;
  std::vector<std::string> files;
  int depth = 0;
  int generations = 4;
  int count = 9;
  int min_depth = 1;
  int jobs = 1;
  long long budget = 1 << 20;
  double target = 10;
  double seg_tol = 1e-3;
};

std::string kneading_text(const pf::KneadingSet& K) {
  std::string out;
  for (const pf::KneadingEntry& e : K.entries) {
    out += std::to_string(e.index);
    out += '\t';
    out += pf::format_word(e.seq.arc_code);
    out += '\t';
    out += pf::format_word(e.seq.tail);
    out += '\n';
  }
  return out;
}

int cmd_check(const Opt& o) {
  const AnyDoc probe = [&] {
    try {
      return load_any(o.from);
    } catch (const pf::Error& e) {
      if (e.code() == pf::Errc::IoError) throw;
      print_error(pf::errc_name(e.code()), e.what());
      std::exit(kExitCheckRejected);
    }
  }();
  pf::Json j;
  j["kind"] = probe.kind;
  j["ok"] = true;
  if (probe.kind == "kneading_set") {
    j["entries"] = probe.K.entries.size();
    j["heuristic"] = probe.K.heuristic;
  } else if (probe.kind == "folding_pattern") {
    j["generations"] = probe.fp.generations;
    const pf::AnnotatedPattern ann = pf::annotate(probe.fp);
    j["turning_points"] = ann.zero_parent_gap.size();
  } else if (probe.kind == "pruned_tree") {
    pf::mark_tree(probe.tree);
    j["depth"] = probe.tree.depth;
  } else {
    j["text"] = pf::format_window(probe.win);
  }
  emit(pf::dump_json(j), o.out);
  return 0;
}

int cmd_kneading(const Opt& o) {
  AnyEngine e = AnyEngine::make(o.eo);
  const pf::KneadingSet K = e.kneading(o.count, o.depth ? o.depth : 12);
  emit(o.format == "text" ? kneading_text(K) : pf::dump_json(pf::json_of(K)), o.out);
  return 0;
}

int cmd_folding(const Opt& o) {
  pf::FoldingPattern fp;
  if (!o.from.empty()) {
    const AnyDoc doc = load_any(o.from);
    if (doc.kind == "kneading_set")
      fp = pf::kneading_to_folding(doc.K, o.generations);
    else if (doc.kind == "folding_pattern")
      fp = doc.fp;
    else if (doc.kind == "pruned_tree")
      fp = pf::tree_to_folding(doc.tree);
    else
      pf::fail(pf::Errc::InvalidArgument, "cannot derive a folding pattern from " + doc.kind);
  } else {
    AnyEngine e = AnyEngine::make(o.eo);
    fp = e.folding(o.generations);
  }
  emit(o.format == "text" ? pf::format_folding(fp) + "\n" : pf::dump_json(pf::json_of(fp)),
       o.out);
  return 0;
}

int cmd_tree(const Opt& o) {
  pf::PrunedTree t;
  if (!o.from.empty()) {
    const AnyDoc doc = load_any(o.from);
    if (doc.kind == "folding_pattern")
      t = pf::folding_to_tree(doc.fp);
    else if (doc.kind == "pruned_tree")
      t = doc.tree;
    else if (doc.kind == "kneading_set")
      t = pf::folding_to_tree(pf::kneading_to_folding(doc.K, o.generations));
    else
      pf::fail(pf::Errc::InvalidArgument, "cannot derive a tree from " + doc.kind);
  } else {
    AnyEngine e = AnyEngine::make(o.eo);
    t = pf::folding_to_tree(e.folding(o.generations));
  }
  emit(o.format == "dot" ? pf::tree_to_graphviz(pf::mark_tree(t))
                         : pf::dump_json(pf::json_of(t)),
       o.out);
  return 0;
}

int cmd_convert(const Opt& o) {
  const AnyDoc doc = load_any(o.from);
  std::string text;
  if (o.to_kind == "kneading") {
    pf::KneadingSet K;
    if (doc.kind == "kneading_set")
      K = doc.K;
    else if (doc.kind == "folding_pattern")
      K = pf::folding_to_kneading(doc.fp, o.min_depth);
    else if (doc.kind == "pruned_tree")
      K = pf::tree_to_kneading(pf::mark_tree(doc.tree), o.min_depth);
    else
      pf::fail(pf::Errc::InvalidArgument, "cannot convert " + doc.kind + " to kneading");
    text = o.format == "text" ? kneading_text(K) : pf::dump_json(pf::json_of(K));
  } else if (o.to_kind == "folding") {
    pf::FoldingPattern fp;
    if (doc.kind == "kneading_set")
      fp = pf::kneading_to_folding(doc.K, o.generations);
    else if (doc.kind == "folding_pattern")
      fp = doc.fp;
    else if (doc.kind == "pruned_tree")
      fp = pf::tree_to_folding(doc.tree);
    else
      pf::fail(pf::Errc::InvalidArgument, "cannot convert " + doc.kind + " to folding");
    text = o.format == "text" ? pf::format_folding(fp) + "\n"
                              : pf::dump_json(pf::json_of(fp));
  } else if (o.to_kind == "tree") {
    pf::PrunedTree t;
    if (doc.kind == "kneading_set")
      t = pf::folding_to_tree(pf::kneading_to_folding(doc.K, o.generations));
    else if (doc.kind == "folding_pattern")
      t = pf::folding_to_tree(doc.fp);
    else if (doc.kind == "pruned_tree")
      t = doc.tree;
    else
      pf::fail(pf::Errc::InvalidArgument, "cannot convert " + doc.kind + " to tree");
    text = o.format == "dot" ? pf::tree_to_graphviz(pf::mark_tree(t))
                             : pf::dump_json(pf::json_of(t));
  } else {
    pf::fail(pf::Errc::InvalidArgument, "unknown target kind " + o.to_kind);
  }
  emit(text, o.out);
  return 0;
}

pf::Window window_from_opts(const Opt& o) {
  if (!o.window_text.empty()) return pf::parse_window(o.window_text);
  if (!o.window_file.empty()) {
    const AnyDoc doc = load_any(o.window_file);
    if (doc.kind != "window")
      pf::fail(pf::Errc::InvalidArgument, o.window_file + " is not a window");
    return doc.win;
  }
  pf::fail(pf::Errc::InvalidArgument, "no window given; use --window or --window-file");
}

int cmd_admissible(const Opt& o) {
  const pf::Window w = window_from_opts(o);
  pf::KneadingSet K;
  if (!o.from.empty()) {
    const AnyDoc doc = load_any(o.from);
    if (doc.kind != "kneading_set")
      pf::fail(pf::Errc::InvalidArgument, o.from + " is not a kneading set");
    K = doc.K;
  } else {
    AnyEngine e = AnyEngine::make(o.eo);
    K = e.kneading(o.count, o.depth ? o.depth : 12);
  }
  const int n = o.depth ? o.depth : w.known_depth();
  pf::AdmissibleOptions ao;
  ao.candidate_budget = o.budget;
  const pf::Verdict v = pf::is_admissible(w, K, n, ao);
  emit(pf::dump_json(pf::json_of(v)), o.out);
  if (v.kind == pf::Verdict::Kind::Rejected) return kExitRejected;
  if (v.kind == pf::Verdict::Kind::SearchBudgetExceeded) return kExitBudget;
  return 0;
}

pf::Json compare_pair(const std::string& pa, const std::string& pb, int depth,
                      bool* differ) {
  const AnyDoc a = load_any(pa);
  const AnyDoc b = load_any(pb);
  if (a.kind != b.kind)
    pf::fail(pf::Errc::InvalidArgument, "cannot compare " + a.kind + " with " + b.kind);
  if (a.kind == "kneading_set") {
    const pf::SetDifference d =
        pf::compare_kneading_sets(a.K, b.K, depth ? depth : 1 << 20);
    *differ = !d.equal();
    return pf::json_of(d);
  }
  if (a.kind == "folding_pattern") {
    const pf::FoldingDifference d = pf::compare_folding(a.fp, b.fp);
    *differ = !d.equal();
    return pf::json_of(d);
  }
  pf::fail(pf::Errc::InvalidArgument,
           "compare supports kneading sets and folding patterns");
}

int cmd_compare(const Opt& o) {
  if (o.batch.empty()) {
    if (o.files.size() != 2)
      pf::fail(pf::Errc::InvalidArgument, "compare needs exactly two files");
    bool differ = false;
    const pf::Json j = compare_pair(o.files[0], o.files[1], o.depth, &differ);
    emit(pf::dump_json(j), o.out);
    return differ ? kExitDiffer : 0;
  }
  const pf::Json list = pf::load_json_file(o.batch);
  if (!list.is_array()) pf::fail(pf::Errc::ParseError, o.batch + ": expected an array");
  struct Item {
    std::string a, b;
  };
  std::vector<Item> items;
  for (const pf::Json& e : list) {
    if (!e.contains("a") || !e.contains("b"))
      pf::fail(pf::Errc::ParseError, "batch entries need fields a and b");
    items.push_back({e["a"].get<std::string>(), e["b"].get<std::string>()});
  }
  std::vector<pf::Json> results(items.size());
  std::vector<int> flags(items.size(), 0);  // 0 equal, 1 differ, 2 error
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= items.size()) return;
      try {
        bool differ = false;
        results[i] = compare_pair(items[i].a, items[i].b, o.depth, &differ);
        flags[i] = differ ? 1 : 0;
      } catch (const pf::Error& e) {
        results[i]["error"]["code"] = pf::errc_name(e.code());
        results[i]["error"]["message"] = e.what();
        flags[i] = 2;
      }
      results[i]["a"] = items[i].a;
      results[i]["b"] = items[i].b;
    }
  };
  const int jobs = std::max(1, o.jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  pf::Json out = pf::Json::array();
  for (pf::Json& r : results) out.push_back(std::move(r));
  emit(pf::dump_json(out), o.out);
  bool any_error = false, any_differ = false;
  for (int f : flags) {
    any_error |= f == 2;
    any_differ |= f == 1;
  }
  if (any_error) return kExitError;
  return any_differ ? kExitDiffer : 0;
}

int cmd_region(const Opt& o) {
  if (o.eo.map != "lozi")
    pf::fail(pf::Errc::InvalidArgument, "region is provided for the lozi map");
  AnyEngine e = AnyEngine::make(o.eo);
  const pf::Window w = window_from_opts(o);
  const std::vector<pf::ConvexPolygon> polys = e.lozi->region(w);
  if (o.format == "json") {
    pf::Json j;
    j["format_version"] = 1;
    j["kind"] = "region";
    pf::Json arr = pf::Json::array();
    for (const pf::ConvexPolygon& poly : polys) {
      pf::Json jp = pf::Json::array();
      for (const pf::Point& p : poly) jp.push_back(pf::Json::array({p.x, p.y}));
      arr.push_back(std::move(jp));
    }
    j["polygons"] = std::move(arr);
    emit(pf::dump_json(j), o.out);
  } else {
    emit(pf::csv_of_region(polys), o.out);
  }
  return 0;
}

int cmd_manifold(const Opt& o) {
  AnyEngine e = AnyEngine::make(o.eo);
  const pf::WuPolyline poly = e.grow(o.target, o.seg_tol, o.budget);
  emit(pf::csv_of(poly), o.out);
  return 0;
}

void add_engine_opts(CLI::App* cmd, Opt& o) {
  cmd->add_option("--map", o.eo.map, "map family: lozi or henon");
  cmd->add_option("--a", o.eo.a, "map parameter a")->required();
  cmd->add_option("--b", o.eo.b, "map parameter b")->required();
  cmd->add_option("--locus-eps", o.eo.locus_eps, "switching band half-width");
  cmd->add_option("--engine-seg-tol", o.eo.seg_tol, "henon sampling resolution");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pruning-front toolkit for Lozi and Henon unstable manifolds"};
  app.require_subcommand(1);
  Opt o;

  CLI::App* check = app.add_subcommand("check", "validate a document");
  check->add_option("file", o.from, "input file")->required();
  check->add_option("--out", o.out, "output path");

  CLI::App* kneading = app.add_subcommand("kneading", "kneading set of a map");
  add_engine_opts(kneading, o);
  kneading->add_option("--count", o.count, "number of entries");
  kneading->add_option("--depth", o.depth, "tail depth");
  kneading->add_option("--out", o.out, "output path");
  kneading->add_option("--format", o.format, "json or text");

  CLI::App* folding = app.add_subcommand("folding", "folding pattern window");
  folding->add_option("--map", o.eo.map, "map family: lozi or henon");
  folding->add_option("--a", o.eo.a, "map parameter a");
  folding->add_option("--b", o.eo.b, "map parameter b");
  folding->add_option("--locus-eps", o.eo.locus_eps, "switching band half-width");
  folding->add_option("--engine-seg-tol", o.eo.seg_tol, "henon sampling resolution");
  folding->add_option("--from", o.from, "derive from a kneading set or tree file");
  folding->add_option("--generations", o.generations, "window generations");
  folding->add_option("--out", o.out, "output path");
  folding->add_option("--format", o.format, "json or text");

  CLI::App* tree = app.add_subcommand("tree", "pruned transition tree");
  tree->add_option("--map", o.eo.map, "map family: lozi or henon");
  tree->add_option("--a", o.eo.a, "map parameter a");
  tree->add_option("--b", o.eo.b, "map parameter b");
  tree->add_option("--locus-eps", o.eo.locus_eps, "switching band half-width");
  tree->add_option("--engine-seg-tol", o.eo.seg_tol, "henon sampling resolution");
  tree->add_option("--from", o.from, "derive from a folding or kneading file");
  tree->add_option("--generations", o.generations, "window generations");
  tree->add_option("--out", o.out, "output path");
  tree->add_option("--format", o.format, "json or dot");

  CLI::App* convert = app.add_subcommand("convert", "convert between document kinds");
  convert->add_option("--from", o.from, "input file")->required();
  convert->add_option("--to", o.to_kind, "kneading, folding or tree")->required();
  convert->add_option("--generations", o.generations, "generations for folding targets");
  convert->add_option("--min-depth", o.min_depth, "minimum certified tail depth");
  convert->add_option("--out", o.out, "output path");
  convert->add_option("--format", o.format, "json, text or dot");

  CLI::App* admissible = app.add_subcommand("admissible", "window admissibility");
  admissible->add_option("--window", o.window_text, "window text, e.g. '...-+.+-'");
  admissible->add_option("--window-file", o.window_file, "window file");
  admissible->add_option("--from", o.from, "kneading set file");
  admissible->add_option("--map", o.eo.map, "map family: lozi or henon");
  admissible->add_option("--a", o.eo.a, "map parameter a");
  admissible->add_option("--b", o.eo.b, "map parameter b");
  admissible->add_option("--locus-eps", o.eo.locus_eps, "switching band half-width");
  admissible->add_option("--engine-seg-tol", o.eo.seg_tol, "henon sampling resolution");
  admissible->add_option("--count", o.count, "entries when deriving from a map");
  admissible->add_option("--depth", o.depth, "verdict depth");
  admissible->add_option("--budget", o.budget, "candidate budget");
  admissible->add_option("--out", o.out, "output path");

  CLI::App* compare = app.add_subcommand("compare", "compare two documents");
  compare->add_option("files", o.files, "two files of the same kind");
  compare->add_option("--depth", o.depth, "tail depth for kneading sets");
  compare->add_option("--batch", o.batch, "json list of {a, b} pairs");
  compare->add_option("--jobs", o.jobs, "worker threads for --batch");
  compare->add_option("--out", o.out, "output path");

  CLI::App* region = app.add_subcommand("region", "plane region of a window");
  add_engine_opts(region, o);
  region->add_option("--window", o.window_text, "window text");
  region->add_option("--window-file", o.window_file, "window file");
  region->add_option("--out", o.out, "output path");
  region->add_option("--format", o.format, "csv or json");

  CLI::App* manifold = app.add_subcommand("manifold", "sample the unstable manifold");
  add_engine_opts(manifold, o);
  manifold->add_option("--target", o.target, "chord arclength to grow to");
  manifold->add_option("--seg-tol", o.seg_tol, "maximum chord length");
  manifold->add_option("--budget", o.budget, "vertex budget");
  manifold->add_option("--out", o.out, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(o);
    if (kneading->parsed()) return cmd_kneading(o);
    if (folding->parsed()) return cmd_folding(o);
    if (tree->parsed()) return cmd_tree(o);
    if (convert->parsed()) return cmd_convert(o);
    if (admissible->parsed()) return cmd_admissible(o);
    if (compare->parsed()) return cmd_compare(o);
    if (region->parsed()) return cmd_region(o);
    if (manifold->parsed()) return cmd_manifold(o);
  } catch (const pf::Error& e) {
    print_error(pf::errc_name(e.code()), e.what());
    return e.code() == pf::Errc::BudgetExceeded ? kExitBudget : kExitError;
  } catch (const std::exception& e) {
    print_error("Internal", e.what());
    return kExitError;
  }
  return 0;
}
