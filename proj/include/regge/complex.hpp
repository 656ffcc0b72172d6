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

#ifndef REGGE_COMPLEX_HPP_
#define REGGE_COMPLEX_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regge/types.hpp"

namespace regge
{

using Tet = std::array<Index, 4>;
using Tri = std::array<Index, 3>;
using Edge = std::array<Index, 2>;

/// Immutable simplicial 3-complex.
///
/// Vertices are indexed by sorted label order. Every simplex is stored with
/// ascending vertex indices and each simplex list is sorted lexicographically,
/// so all derived tables depend only on the set of input tetrahedra.
class Triangulation3
{
public:
  Triangulation3(std::vector<std::string> vertex_labels, const std::vector<std::array<std::string, 4>> & tets);

  Index num_vertices() const { return static_cast<Index>(labels_.size()); }
  Index num_edges() const { return static_cast<Index>(edges_.size()); }
  Index num_triangles() const { return static_cast<Index>(triangles_.size()); }
  Index num_tets() const { return static_cast<Index>(tets_.size()); }

  const std::vector<std::string> & labels() const { return labels_; }
  const std::vector<Tet> & tets() const { return tets_; }
  const std::vector<Edge> & edges() const { return edges_; }
  const std::vector<Tri> & triangles() const { return triangles_; }

  /// Global edge indices of a tetrahedron, in kTetEdges local order.
  const std::array<Index, 6> & tet_edges(Index t) const { return tet_edges_[t]; }

  const std::vector<Index> & edge_tets(Index e) const { return edge_to_tets_[e]; }
  const std::vector<Index> & vertex_tets(Index v) const { return vertex_to_tets_[v]; }
  const std::vector<Index> & vertex_edges(Index v) const { return vertex_to_edges_[v]; }
  const std::vector<Index> & triangle_tets(Index f) const { return triangle_to_tets_[f]; }

  /// Sorted boundary edge indices.
  const std::vector<Index> & boundary_edges() const { return boundary_edges_; }
  bool is_boundary_edge(Index e) const { return edge_on_boundary_[e]; }
  bool is_closed() const { return boundary_edges_.empty(); }

  std::optional<Index> find_vertex(std::string_view label) const;
  std::optional<Index> find_edge(Index a, Index b) const;

  /// "A1-B1": the two labels in lexicographic order joined by '-'.
  std::string edge_key(Index e) const;
  std::optional<Index> find_edge_key(std::string_view key) const;

  /// Other endpoint of edge e seen from vertex v.
  Index other_vertex(Index e, Index v) const;

  friend bool operator==(const Triangulation3 &, const Triangulation3 &) = default;

private:
  std::vector<std::string> labels_;
  std::vector<Tet> tets_;
  std::vector<Edge> edges_;
  std::vector<Tri> triangles_;
  std::vector<std::array<Index, 6>> tet_edges_;
  std::vector<std::vector<Index>> edge_to_tets_;
  std::vector<std::vector<Index>> vertex_to_tets_;
  std::vector<std::vector<Index>> vertex_to_edges_;
  std::vector<std::vector<Index>> triangle_to_tets_;
  std::vector<Index> boundary_edges_;
  std::vector<bool> edge_on_boundary_;
};

Triangulation3 build_from_tetrahedra(
  std::vector<std::string> vertex_labels, const std::vector<std::array<std::string, 4>> & tets);

/// The 16-cell boundary complex: vertices A1..D2, tetrahedra A_iB_jC_kD_l.
Triangulation3 build_16cell();

/// Edge indices of a 16-cell in block order: the AB block (A1B1, A1B2, A2B1,
/// A2B2), then AC, AD, BC, BD, CD. Requires the labels of build_16cell().
std::vector<Index> sixteen_cell_block_order(const Triangulation3 & tri);

/// Triangulation JSON: {"vertices": [...], "tetrahedra": [[a,b,c,d], ...]}.
Triangulation3 parse_triangulation(std::string_view text);
std::string triangulation_to_json(const Triangulation3 & tri);

}  // namespace regge

#endif  // REGGE_COMPLEX_HPP_
