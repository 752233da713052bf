#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pf/kneading.hpp"
#include "pf/manifold.hpp"
#include "pf/tree.hpp"

namespace pf {

using Json = nlohmann::json;

// Every document carries format_version 1 and a kind tag. Words and tails are
// stored as symbol strings over '-', '~', '+'.
Json json_of(const KneadingSet& K);
Json json_of(const FoldingPattern& fp);
Json json_of(const PrunedTree& t);
Json json_of(const Window& w);
Json json_of(const Verdict& v);
Json json_of(const SetDifference& d);
Json json_of(const FoldingDifference& d);

KneadingSet kneading_set_from_json(const Json& j);
FoldingPattern folding_from_json(const Json& j);
PrunedTree tree_from_json(const Json& j);
Window window_from_json(const Json& j);

// Kind of a loaded document: the explicit tag when present, otherwise by
// shape ("entries" means a kneading set, integer "left"/"right" arrays a
// folding pattern, "levels" a tree, symbol-string "left"/"right" a window).
std::string sniff_kind(const Json& j);

Json load_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string dump_json(const Json& j);

std::string format_double(double x);  // shortest 17-significant-digit form

// One row per vertex: index, param, x, y, arclength, plus the orbit label
// (turn_index, iterate) on marker rows.
std::string csv_of(const WuPolyline& poly);
// One row per polygon vertex: polygon_id, vertex_id, x, y.
std::string csv_of_region(const std::vector<ConvexPolygon>& polys);

}  // namespace pf
