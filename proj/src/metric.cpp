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

#include "regge/metric.hpp"

#include <cmath>
#include <vector>

#include "json.hpp"

#include "regge/errors.hpp"

namespace regge
{

PLMetric::PLMetric(Vector g) : g_(std::move(g))
{
  for (Index e = 0; e < g_.size(); ++e) {
    if (!(g_[e] > 0.0) || !std::isfinite(g_[e])) {
      throw MetricError("squared length of edge #" + std::to_string(e) + " must be positive and finite");
    }
  }
}

PLMetric PLMetric::uniform(const Triangulation3 & tri, double value)
{
  return PLMetric(Vector::Constant(tri.num_edges(), value));
}

TetEdgeValues<double> PLMetric::tet_values(const Triangulation3 & tri, Index t) const
{
  const auto & edges = tri.tet_edges(t);
  TetEdgeValues<double> v;
  for (int k = 0; k < 6; ++k) {
    v[k] = g_[edges[k]];
  }
  return v;
}

void check_bound(const PLMetric & g, const Triangulation3 & tri)
{
  if (g.size() != tri.num_edges()) {
    throw MetricError(
      "metric has " + std::to_string(g.size()) + " entries but the triangulation has " +
      std::to_string(tri.num_edges()) + " edges");
  }
}

bool is_admissible_tet(const Triangulation3 & tri, Index t, const PLMetric & g, double eps)
{
  return is_admissible_tet(g.tet_values(tri, t), eps);
}

std::optional<Index> first_inadmissible_tet(const Triangulation3 & tri, const PLMetric & g, double eps)
{
  check_bound(g, tri);
  for (Index t = 0; t < tri.num_tets(); ++t) {
    if (!is_admissible_tet(tri, t, g, eps)) {
      return t;
    }
  }
  return std::nullopt;
}

bool is_admissible(const Triangulation3 & tri, const PLMetric & g, double eps)
{
  return !first_inadmissible_tet(tri, g, eps).has_value();
}

void require_admissible(const Triangulation3 & tri, const PLMetric & g, double eps)
{
  if (auto t = first_inadmissible_tet(tri, g, eps)) {
    const auto & tet = tri.tets()[*t];
    const auto & lab = tri.labels();
    throw InadmissibleError(
      "inadmissible metric: tetrahedron " + lab[tet[0]] + "-" + lab[tet[1]] + "-" + lab[tet[2]] + "-" +
        lab[tet[3]] + " has no nondegenerate Euclidean realization",
      *t);
  }
}

PLMetric scale(const PLMetric & g, double c)
{
  if (!(c > 0.0)) {
    throw MetricError("scale factor must be positive");
  }
  return PLMetric(c * g.squared());
}

PLMetric log_perturb(const PLMetric & base, double sigma, SplitMix64 & rng)
{
  Vector g = base.squared();
  for (Index e = 0; e < g.size(); ++e) {
    g[e] *= std::exp(rng.uniform(-sigma, sigma));
  }
  return PLMetric(std::move(g));
}

PLMetric sample_admissible(
  const Triangulation3 & tri, const PLMetric & base, double sigma, SplitMix64 & rng, int max_tries)
{
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    PLMetric g = log_perturb(base, sigma, rng);
    if (is_admissible(tri, g)) {
      return g;
    }
  }
  throw MetricError("no admissible sample found; reduce sigma");
}

PLMetric parse_metric(std::string_view text, const Triangulation3 & tri)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error & ex) {
    throw MetricError("malformed metric JSON at byte " + std::to_string(ex.byte) + ": " + ex.what());
  }
  if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_object()) {
    throw MetricError("metric JSON: missing object \"edges\"");
  }
  Vector g = Vector::Constant(tri.num_edges(), std::nan(""));
  for (const auto & [key, value] : doc["edges"].items()) {
    auto e = tri.find_edge_key(key);
    if (!e) {
      throw MetricError("metric JSON: unknown edge key \"" + key + "\"");
    }
    if (!value.is_number()) {
      throw MetricError("metric JSON: value for \"" + key + "\" is not a number");
    }
    const double v = value.get<double>();
    if (!(v > 0.0)) {
      throw MetricError("metric JSON: squared length for \"" + key + "\" must be positive");
    }
    g[*e] = v;
  }
  for (Index e = 0; e < tri.num_edges(); ++e) {
    if (std::isnan(g[e])) {
      throw MetricError("metric JSON: missing edge key \"" + tri.edge_key(e) + "\"");
    }
  }
  return PLMetric(std::move(g));
}

std::string metric_to_json(const PLMetric & g, const Triangulation3 & tri)
{
  check_bound(g, tri);
  nlohmann::ordered_json edges = nlohmann::ordered_json::object();
  for (Index e = 0; e < tri.num_edges(); ++e) {
    edges[tri.edge_key(e)] = g[e];
  }
  nlohmann::ordered_json doc;
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

PLMetric metric_from_block_order(const Triangulation3 & tri, const Vector & block_values)
{
  const auto order = sixteen_cell_block_order(tri);
  if (block_values.size() != static_cast<Index>(order.size())) {
    throw MetricError("expected 24 values in block order");
  }
  Vector g(tri.num_edges());
  for (std::size_t k = 0; k < order.size(); ++k) {
    g[order[k]] = block_values[static_cast<Index>(k)];
  }
  return PLMetric(std::move(g));
}

}  // namespace regge
