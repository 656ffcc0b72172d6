// Copyright 2026 The regge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "regge/complex.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"

#include "regge/errors.hpp"

namespace regge
{

namespace
{

template <std::size_t N>
Index find_sorted(const std::vector<std::array<Index, N>> & list, const std::array<Index, N> & key)
{
  auto it = std::lower_bound(list.begin(), list.end(), key);
  if (it == list.end() || *it != key) {
    return -1;
  }
  return static_cast<Index>(it - list.begin());
}

std::string tet_context(std::size_t i) { return "tetrahedron #" + std::to_string(i); }

}  // namespace

Triangulation3::Triangulation3(
  std::vector<std::string> vertex_labels, const std::vector<std::array<std::string, 4>> & tets)
: labels_(std::move(vertex_labels))
{
  std::sort(labels_.begin(), labels_.end());
  if (auto dup = std::adjacent_find(labels_.begin(), labels_.end()); dup != labels_.end()) {
    throw ComplexError("duplicate vertex label '" + *dup + "'");
  }
  if (tets.empty()) {
    throw ComplexError("triangulation has no tetrahedra");
  }

  std::set<Tet> seen;
  tets_.reserve(tets.size());
  for (std::size_t i = 0; i < tets.size(); ++i) {
    Tet t{};
    for (int k = 0; k < 4; ++k) {
      auto v = find_vertex(tets[i][k]);
      if (!v) {
        throw ComplexError(tet_context(i) + ": unknown vertex label '" + tets[i][k] + "'");
      }
      t[k] = *v;
    }
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end()) {
      throw ComplexError(tet_context(i) + ": degenerate tetrahedron (repeated vertex)");
    }
    if (!seen.insert(t).second) {
      throw ComplexError(tet_context(i) + ": duplicate tetrahedron");
    }
  }
  tets_.assign(seen.begin(), seen.end());

  std::set<Edge> edge_set;
  std::set<Tri> tri_set;
  for (const auto & t : tets_) {
    for (const auto & [a, b] : kTetEdges) {
      edge_set.insert({t[a], t[b]});
    }
    for (int skip = 0; skip < 4; ++skip) {
      Tri f{};
      int n = 0;
      for (int k = 0; k < 4; ++k) {
        if (k != skip) {
          f[n++] = t[k];
        }
      }
      tri_set.insert(f);
    }
  }
  edges_.assign(edge_set.begin(), edge_set.end());
  triangles_.assign(tri_set.begin(), tri_set.end());

  const auto nv = labels_.size();
  edge_to_tets_.assign(edges_.size(), {});
  vertex_to_tets_.assign(nv, {});
  vertex_to_edges_.assign(nv, {});
  triangle_to_tets_.assign(triangles_.size(), {});
  tet_edges_.resize(tets_.size());

  for (Index ti = 0; ti < num_tets(); ++ti) {
    const auto & t = tets_[ti];
    for (int k = 0; k < 6; ++k) {
      const Index e = find_sorted(edges_, Edge{t[kTetEdges[k][0]], t[kTetEdges[k][1]]});
      tet_edges_[ti][k] = e;
      edge_to_tets_[e].push_back(ti);
    }
    for (Index v : t) {
      vertex_to_tets_[v].push_back(ti);
    }
    for (int skip = 0; skip < 4; ++skip) {
      Tri f{};
      int n = 0;
      for (int k = 0; k < 4; ++k) {
        if (k != skip) {
          f[n++] = t[k];
        }
      }
      triangle_to_tets_[find_sorted(triangles_, f)].push_back(ti);
    }
  }
  for (Index v = 0; v < num_vertices(); ++v) {
    if (vertex_to_tets_[v].empty()) {
      throw ComplexError("vertex '" + labels_[v] + "' is not in any tetrahedron");
    }
  }
  for (Index e = 0; e < num_edges(); ++e) {
    vertex_to_edges_[edges_[e][0]].push_back(e);
    vertex_to_edges_[edges_[e][1]].push_back(e);
  }

  edge_on_boundary_.assign(edges_.size(), false);
  for (Index f = 0; f < num_triangles(); ++f) {
    const auto count = triangle_to_tets_[f].size();
    if (count > 2) {
      const auto & tri = triangles_[f];
      throw ComplexError(
        "triangle " + labels_[tri[0]] + "-" + labels_[tri[1]] + "-" + labels_[tri[2]] + " lies in " +
        std::to_string(count) + " tetrahedra (non-manifold)");
    }
    if (count == 1) {
      const auto & tri = triangles_[f];
      edge_on_boundary_[*find_edge(tri[0], tri[1])] = true;
      edge_on_boundary_[*find_edge(tri[0], tri[2])] = true;
      edge_on_boundary_[*find_edge(tri[1], tri[2])] = true;
    }
  }
  for (Index e = 0; e < num_edges(); ++e) {
    if (edge_on_boundary_[e]) {
      boundary_edges_.push_back(e);
    }
  }
}

std::optional<Index> Triangulation3::find_vertex(std::string_view label) const
{
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) {
    return std::nullopt;
  }
  return static_cast<Index>(it - labels_.begin());
}

std::optional<Index> Triangulation3::find_edge(Index a, Index b) const
{
  if (a > b) {
    std::swap(a, b);
  }
  const Index e = find_sorted(edges_, Edge{a, b});
  if (e < 0) {
    return std::nullopt;
  }
  return e;
}

std::string Triangulation3::edge_key(Index e) const
{
  const auto & [a, b] = edges_.at(e);
  return labels_[a] + "-" + labels_[b];
}

std::optional<Index> Triangulation3::find_edge_key(std::string_view key) const
{
  // Labels may themselves contain '-', so try every split point.
  for (auto pos = key.find('-'); pos != std::string_view::npos; pos = key.find('-', pos + 1)) {
    auto a = find_vertex(key.substr(0, pos));
    auto b = find_vertex(key.substr(pos + 1));
    if (a && b && labels_[*a] < labels_[*b]) {
      if (auto e = find_edge(*a, *b)) {
        return e;
      }
    }
  }
  return std::nullopt;
}

Index Triangulation3::other_vertex(Index e, Index v) const
{
  const auto & [a, b] = edges_[e];
  return a == v ? b : a;
}

Triangulation3 build_from_tetrahedra(
  std::vector<std::string> vertex_labels, const std::vector<std::array<std::string, 4>> & tets)
{
  return Triangulation3(std::move(vertex_labels), tets);
}

Triangulation3 build_16cell()
{
  std::vector<std::string> labels;
  for (char p : {'A', 'B', 'C', 'D'}) {
    for (char i : {'1', '2'}) {
      labels.push_back(std::string{p, i});
    }
  }
  std::vector<std::array<std::string, 4>> tets;
  for (char i : {'1', '2'}) {
    for (char j : {'1', '2'}) {
      for (char k : {'1', '2'}) {
        for (char l : {'1', '2'}) {
          tets.push_back({std::string{'A', i}, std::string{'B', j}, std::string{'C', k}, std::string{'D', l}});
        }
      }
    }
  }
  return Triangulation3(std::move(labels), tets);
}

std::vector<Index> sixteen_cell_block_order(const Triangulation3 & tri)
{
  static constexpr std::array<std::array<char, 2>, 6> kBlocks = {
    {{'A', 'B'}, {'A', 'C'}, {'A', 'D'}, {'B', 'C'}, {'B', 'D'}, {'C', 'D'}}};
  std::vector<Index> order;
  order.reserve(24);
  for (const auto & [p, q] : kBlocks) {
    for (char i : {'1', '2'}) {
      for (char j : {'1', '2'}) {
        const std::string key = std::string{p, i} + "-" + std::string{q, j};
        auto e = tri.find_edge_key(key);
        if (!e) {
          throw ComplexError("not a 16-cell: missing edge " + key);
        }
        order.push_back(*e);
      }
    }
  }
  if (tri.num_edges() != 24) {
    throw ComplexError("not a 16-cell: expected 24 edges");
  }
  return order;
}

Triangulation3 parse_triangulation(std::string_view text)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error & ex) {
    throw ComplexError("malformed triangulation JSON at byte " + std::to_string(ex.byte) + ": " + ex.what());
  }
  if (!doc.is_object()) {
    throw ComplexError("triangulation JSON: top level must be an object");
  }
  for (const char * key : {"vertices", "tetrahedra"}) {
    if (!doc.contains(key) || !doc[key].is_array()) {
      throw ComplexError(std::string("triangulation JSON: missing array \"") + key + "\"");
    }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < doc["vertices"].size(); ++i) {
    const auto & v = doc["vertices"][i];
    if (!v.is_string()) {
      throw ComplexError("triangulation JSON: vertices[" + std::to_string(i) + "] is not a string");
    }
    labels.push_back(v.get<std::string>());
  }
  std::vector<std::array<std::string, 4>> tets;
  for (std::size_t i = 0; i < doc["tetrahedra"].size(); ++i) {
    const auto & t = doc["tetrahedra"][i];
    if (!t.is_array() || t.size() != 4) {
      throw ComplexError("triangulation JSON: tetrahedra[" + std::to_string(i) + "] is not an array of 4 labels");
    }
    std::array<std::string, 4> tet;
    for (int k = 0; k < 4; ++k) {
      if (!t[k].is_string()) {
        throw ComplexError(
          "triangulation JSON: tetrahedra[" + std::to_string(i) + "][" + std::to_string(k) + "] is not a string");
      }
      tet[k] = t[k].get<std::string>();
    }
    tets.push_back(std::move(tet));
  }
  return Triangulation3(std::move(labels), tets);
}

std::string triangulation_to_json(const Triangulation3 & tri)
{
  nlohmann::ordered_json doc;
  doc["vertices"] = tri.labels();
  auto tets = nlohmann::ordered_json::array();
  for (const auto & t : tri.tets()) {
    tets.push_back({tri.labels()[t[0]], tri.labels()[t[1]], tri.labels()[t[2]], tri.labels()[t[3]]});
  }
  doc["tetrahedra"] = std::move(tets);
  return doc.dump(2) + "\n";
}

}  // namespace regge
