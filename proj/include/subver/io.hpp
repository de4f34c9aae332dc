#pragma once
// JSON (de)serialization of catalog entries / user-supplied inputs. The file
// format is a single document with expression strings:
// { "coords": [...], "metric": [[...]],
//   "structure": {"epsilon": -1, "phi": [[...]], "xi": [...], "eta": [...]},
//   "map": {"target": {"coords": [...], "metric": [[...]]},
//           "components": [...]},
//   "declared_frames": {"vertical": [[...]], "horizontal": [[...]]},
//   "expected_facts": {"id": true, ...},
//   "slice_zero_coords": 0, "box_halfwidth": 1.0, "name": ..., "notes": ... }

#include <subver/catalog.hpp>

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace subver::io {

using catalog::CatalogEntry;
using catalog::CatalogEntryPtr;
using expr::ScalarExpr;
using expr::parse_expr;
using geometry::Chart;
using geometry::VectorField;
using nlohmann::json;
using nlohmann::ordered_json;

namespace detail {

inline ordered_json matrix_to_json(const std::vector<std::vector<ScalarExpr>>& m) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : m) {
    ordered_json r = ordered_json::array();
    for (const auto& e : row) r.push_back(e.to_string());
    rows.push_back(r);
  }
  return rows;
}

inline ordered_json vector_to_json(const std::vector<ScalarExpr>& v) {
  ordered_json r = ordered_json::array();
  for (const auto& e : v) r.push_back(e.to_string());
  return r;
}

inline std::vector<std::vector<ScalarExpr>> matrix_from_json(
    const json& j, const std::vector<std::string>& coords, const std::string& what) {
  if (!j.is_array()) throw std::invalid_argument("input: " + what + " must be an array of rows");
  std::vector<std::vector<ScalarExpr>> m;
  for (const auto& row : j) {
    std::vector<ScalarExpr> r;
    for (const auto& cell : row) r.push_back(parse_expr(cell.get<std::string>(), coords));
    m.push_back(std::move(r));
  }
  return m;
}

inline std::vector<ScalarExpr> vector_from_json(const json& j,
                                                const std::vector<std::string>& coords,
                                                const std::string& what) {
  if (!j.is_array()) throw std::invalid_argument("input: " + what + " must be an array");
  std::vector<ScalarExpr> v;
  for (const auto& cell : j) v.push_back(parse_expr(cell.get<std::string>(), coords));
  return v;
}

inline Chart chart_from_json(const json& j, const std::string& what) {
  Chart c;
  c.coord_names = j.at("coords").get<std::vector<std::string>>();
  c.dim = static_cast<int>(c.coord_names.size());
  c.metric = matrix_from_json(j.at("metric"), c.coord_names, what + ".metric");
  if (static_cast<int>(c.metric.size()) != c.dim)
    throw std::invalid_argument("input: " + what + ".metric must be " + std::to_string(c.dim) +
                                " x " + std::to_string(c.dim));
  for (const auto& row : c.metric)
    if (static_cast<int>(row.size()) != c.dim)
      throw std::invalid_argument("input: ragged metric row in " + what);
  return c;
}

}  // namespace detail

inline ordered_json entry_to_json(const CatalogEntry& e) {
  ordered_json j;
  j["name"] = e.name;
  j["description"] = e.description;
  if (!e.notes.empty()) j["notes"] = e.notes;
  j["coords"] = e.source.coord_names;
  j["metric"] = detail::matrix_to_json(e.source.metric);
  if (e.has_structure) {
    ordered_json s;
    s["epsilon"] = e.structure.epsilon;
    s["phi"] = detail::matrix_to_json(e.structure.phi);
    s["xi"] = detail::vector_to_json(e.structure.xi);
    s["eta"] = detail::vector_to_json(e.structure.eta);
    j["structure"] = s;
  }
  if (e.has_map) {
    ordered_json m;
    ordered_json t;
    t["coords"] = e.target.coord_names;
    t["metric"] = detail::matrix_to_json(e.target.metric);
    m["target"] = t;
    m["components"] = detail::vector_to_json(e.map.components);
    j["map"] = m;
    ordered_json f;
    f["vertical"] = ordered_json::array();
    for (const auto& v : e.frames.vertical) f["vertical"].push_back(detail::vector_to_json(v));
    f["horizontal"] = ordered_json::array();
    for (const auto& h : e.frames.horizontal)
      f["horizontal"].push_back(detail::vector_to_json(h));
    j["declared_frames"] = f;
  }
  if (!e.expected.empty()) {
    ordered_json x;
    for (const auto& [id, verdict] : e.expected) x[id] = verdict;
    j["expected_facts"] = x;
  }
  if (e.slice_zero_coords > 0) j["slice_zero_coords"] = e.slice_zero_coords;
  j["box_halfwidth"] = e.box_halfwidth;
  return j;
}

inline CatalogEntryPtr entry_from_json(const json& j) {
  auto e = std::make_unique<CatalogEntry>();
  e->name = j.value("name", "user-input");
  e->description = j.value("description", "");
  e->notes = j.value("notes", "");
  e->source = detail::chart_from_json(j, "source");
  const auto& coords = e->source.coord_names;
  if (j.contains("structure")) {
    const json& s = j.at("structure");
    e->structure.epsilon = s.at("epsilon").get<int>();
    if (e->structure.epsilon != 1 && e->structure.epsilon != -1)
      throw std::invalid_argument("input: structure.epsilon must be +1 or -1");
    e->structure.phi = detail::matrix_from_json(s.at("phi"), coords, "structure.phi");
    e->structure.xi = detail::vector_from_json(s.at("xi"), coords, "structure.xi");
    e->structure.eta = detail::vector_from_json(s.at("eta"), coords, "structure.eta");
    e->has_structure = true;
  }
  if (j.contains("map")) {
    const json& m = j.at("map");
    e->target = detail::chart_from_json(m.at("target"), "map.target");
    e->map.components = detail::vector_from_json(m.at("components"), coords, "map.components");
    if (e->map.components.size() != static_cast<std::size_t>(e->target.dim))
      throw std::invalid_argument("input: map.components size must equal target dimension");
    e->has_map = true;
    const json& f = j.at("declared_frames");
    for (const auto& v : f.at("vertical"))
      e->frames.vertical.push_back(detail::vector_from_json(v, coords, "declared_frames"));
    for (const auto& h : f.at("horizontal"))
      e->frames.horizontal.push_back(detail::vector_from_json(h, coords, "declared_frames"));
  }
  if (j.contains("expected_facts"))
    for (const auto& [id, verdict] : j.at("expected_facts").items())
      e->expected[id] = verdict.get<bool>();
  e->slice_zero_coords = j.value("slice_zero_coords", 0);
  e->box_halfwidth = j.value("box_halfwidth", 1.0);
  catalog::detail::fixup(*e);
  return e;
}

inline CatalogEntryPtr load_entry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("input: cannot open file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument("input: " + path + ": " + err.what());
  }
  return entry_from_json(j);
}

// Resolves a CLI input argument: a catalog name first, then a file path.
inline CatalogEntryPtr resolve_input(const std::string& input) {
  try {
    return catalog::load_example(input);
  } catch (const std::invalid_argument&) {
    if (std::ifstream(input).good()) return load_entry_file(input);
    throw;
  }
}

}  // namespace subver::io
