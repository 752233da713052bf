#include "pf/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pf {

namespace {

constexpr int kFormatVersion = 1;

Json header(const char* kind) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = kind;
  return j;
}

void check_version(const Json& j) {
  if (j.contains("format_version") && j["format_version"].get<int>() != kFormatVersion)
    fail(Errc::ParseError, "unsupported format_version");
}

template <typename T>
T field(const Json& j, const char* name) {
  if (!j.contains(name)) fail(Errc::ParseError, std::string("missing field ") + name);
  try {
    return j[name].get<T>();
  } catch (const Json::exception&) {
    fail(Errc::ParseError, std::string("bad field ") + name);
  }
}

}  // namespace

Json json_of(const KneadingSet& K) {
  Json j = header("kneading_set");
  j["heuristic"] = K.heuristic;
  Json entries = Json::array();
  for (const KneadingEntry& e : K.entries) {
    Json je;
    je["index"] = e.index;
    je["arc_code"] = format_word(e.seq.arc_code);
    je["tail"] = format_word(e.seq.tail);
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j;
}

KneadingSet kneading_set_from_json(const Json& j) {
  check_version(j);
  KneadingSet K;
  K.heuristic = j.value("heuristic", false);
  if (!j.contains("entries") || !j["entries"].is_array())
    fail(Errc::ParseError, "missing field entries");
  for (const Json& je : j["entries"]) {
    KneadingEntry e;
    e.index = field<int>(je, "index");
    e.seq.arc_code = parse_word(field<std::string>(je, "arc_code"));
    e.seq.tail = parse_word(field<std::string>(je, "tail"));
    K.entries.push_back(std::move(e));
  }
  validate(K);
  return K;
}

Json json_of(const FoldingPattern& fp) {
  Json j = header("folding_pattern");
  j["generations"] = fp.generations;
  j["left"] = fp.left;    // left[i] sits at coordinate -(i+1)
  j["right"] = fp.right;  // right[i] sits at coordinate i+1
  return j;
}

FoldingPattern folding_from_json(const Json& j) {
  check_version(j);
  FoldingPattern fp;
  fp.left = field<std::vector<int>>(j, "left");
  fp.right = field<std::vector<int>>(j, "right");
  fp.generations = field<int>(j, "generations");
  const AnnotatedPattern ann = annotate(fp);
  if (ann.fp.generations != fp.generations)
    fail(Errc::ParseError, "generations does not match the pattern");
  return fp;
}

Json json_of(const PrunedTree& t) {
  Json j = header("pruned_tree");
  j["depth"] = t.depth;
  j["root_self_loop"] = t.root_self_loop;
  j["levels"] = t.levels;
  Json children = Json::array();
  for (const auto& level : t.levels)
    for (int id : level)
      if (auto it = t.children.find(id); it != t.children.end())
        children.push_back(Json::array({id, it->second}));
  j["children"] = std::move(children);
  Json codes = Json::array();
  for (const auto& level : t.levels)
    for (int id : level)
      if (auto it = t.arc_codes.find(id); it != t.arc_codes.end())
        codes.push_back(Json::array({id, format_word(it->second)}));
  j["arc_codes"] = std::move(codes);
  return j;
}

PrunedTree tree_from_json(const Json& j) {
  check_version(j);
  PrunedTree t;
  t.levels = field<std::vector<std::vector<int>>>(j, "levels");
  t.depth = field<int>(j, "depth");
  t.root_self_loop = j.value("root_self_loop", true);
  if (!j.contains("children") || !j["children"].is_array())
    fail(Errc::ParseError, "missing field children");
  for (const Json& pair : j["children"]) {
    if (!pair.is_array() || pair.size() != 2) fail(Errc::ParseError, "bad children entry");
    t.children[pair[0].get<int>()] = pair[1].get<std::vector<int>>();
  }
  if (j.contains("arc_codes"))
    for (const Json& pair : j["arc_codes"]) {
      if (!pair.is_array() || pair.size() != 2)
        fail(Errc::ParseError, "bad arc_codes entry");
      t.arc_codes[pair[0].get<int>()] = parse_word(pair[1].get<std::string>());
    }
  validate(t);
  return t;
}

Json json_of(const Window& w) {
  Json j = header("window");
  j["left"] = format_word(w.left);
  j["left_tail_all_plus"] = w.left_tail_all_plus;
  j["right"] = format_word(w.right);
  return j;
}

Window window_from_json(const Json& j) {
  check_version(j);
  Window w;
  w.left = parse_word(field<std::string>(j, "left"));
  w.right = parse_word(field<std::string>(j, "right"));
  w.left_tail_all_plus = j.value("left_tail_all_plus", false);
  return w;
}

Json json_of(const Verdict& v) {
  Json j = header("verdict");
  switch (v.kind) {
    case Verdict::Kind::AdmissibleUpTo: j["result"] = "admissible_up_to"; break;
    case Verdict::Kind::Rejected: j["result"] = "rejected"; break;
    case Verdict::Kind::SearchBudgetExceeded:
      j["result"] = "search_budget_exceeded";
      break;
  }
  j["depth"] = v.depth;
  if (v.kind == Verdict::Kind::Rejected) {
    j["witness_index"] = v.witness_index;
    j["witness_position"] = v.witness_position;
  }
  return j;
}

Json json_of(const SetDifference& d) {
  Json j = header("kneading_difference");
  switch (d.kind) {
    case SetDifference::Kind::EqualUpToDepth: j["result"] = "equal_up_to_depth"; break;
    case SetDifference::Kind::MissingEntry: j["result"] = "missing_entry"; break;
    case SetDifference::Kind::ArcCodeMismatch: j["result"] = "arc_code_mismatch"; break;
    case SetDifference::Kind::TailMismatch: j["result"] = "tail_mismatch"; break;
  }
  j["depth"] = d.depth;
  if (d.kind != SetDifference::Kind::EqualUpToDepth) {
    j["index"] = d.index;
    if (d.kind == SetDifference::Kind::TailMismatch) j["position"] = d.position;
  }
  return j;
}

Json json_of(const FoldingDifference& d) {
  Json j = header("folding_difference");
  j["result"] = d.equal() ? "equal" : "differ_at";
  if (d.equal())
    j["generations"] = d.generations;
  else
    j["coordinate"] = d.coordinate;
  return j;
}

std::string sniff_kind(const Json& j) {
  if (j.contains("kind") && j["kind"].is_string()) return j["kind"].get<std::string>();
  if (j.contains("entries")) return "kneading_set";
  if (j.contains("levels")) return "pruned_tree";
  if (j.contains("left") && j["left"].is_array()) return "folding_pattern";
  if (j.contains("left") && j["left"].is_string()) return "window";
  fail(Errc::ParseError, "unrecognized document shape");
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    fail(Errc::ParseError, path + ": " + e.what());
  }
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot open " + path + " for writing");
  out << text;
  if (!out) fail(Errc::IoError, "short write to " + path);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_of(const WuPolyline& poly) {
  std::ostringstream out;
  out << "index,param,x,y,arclength,turn_index,iterate\n";
  std::size_t next_marker = 0;
  for (std::size_t k = 0; k < poly.pts.size(); ++k) {
    out << k << ',' << format_double(poly.params[k]) << ','
        << format_double(poly.pts[k].x) << ',' << format_double(poly.pts[k].y) << ','
        << format_double(poly.arclength[k]);
    while (next_marker < poly.markers.size() && poly.markers[next_marker].vertex < k)
      ++next_marker;
    if (next_marker < poly.markers.size() && poly.markers[next_marker].vertex == k)
      out << ',' << poly.markers[next_marker].i << ',' << poly.markers[next_marker].j;
    else
      out << ",,";
    out << '\n';
  }
  return out.str();
}

std::string csv_of_region(const std::vector<ConvexPolygon>& polys) {
  std::ostringstream out;
  out << "polygon_id,vertex_id,x,y\n";
  for (std::size_t p = 0; p < polys.size(); ++p)
    for (std::size_t v = 0; v < polys[p].size(); ++v)
      out << p << ',' << v << ',' << format_double(polys[p][v].x) << ','
          << format_double(polys[p][v].y) << '\n';
  return out.str();
}

}  // namespace pf
