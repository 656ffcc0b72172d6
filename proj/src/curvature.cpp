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

#include "regge/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "regge/errors.hpp"
#include "regge/geometry.hpp"

namespace regge
{

namespace
{

std::vector<TetEdgeValues<double>> all_dihedrals(const Triangulation3 & tri, const PLMetric & g)
{
  check_bound(g, tri);
  std::vector<TetEdgeValues<double>> out(static_cast<std::size_t>(tri.num_tets()));
  for (Index t = 0; t < tri.num_tets(); ++t) {
    const auto values = g.tet_values(tri, t);
    if (!is_admissible_tet(values)) {
      require_admissible(tri, g);
    }
    out[static_cast<std::size_t>(t)] = dihedral_angles(values);
  }
  return out;
}

Vector deficits(const Triangulation3 & tri, const std::vector<TetEdgeValues<double>> & beta)
{
  Vector R(tri.num_edges());
  for (Index e = 0; e < tri.num_edges(); ++e) {
    R[e] = tri.is_boundary_edge(e) ? kPi : 2.0 * kPi;
  }
  for (Index t = 0; t < tri.num_tets(); ++t) {
    const auto & edges = tri.tet_edges(t);
    for (int k = 0; k < 6; ++k) {
      R[edges[k]] -= beta[static_cast<std::size_t>(t)][k];
    }
  }
  return R;
}

double action_from(const Vector & R, const PLMetric & g)
{
  double sum = 0.0;
  for (Index e = 0; e < R.size(); ++e) {
    sum += R[e] * std::sqrt(g[e]);
  }
  return sum;
}

void check_alpha_for_q(double alpha)
{
  if (alpha == -1.0) {
    throw std::domain_error("Q_alpha is undefined for alpha = -1");
  }
}

}  // namespace

Vector ricci(const Triangulation3 & tri, const PLMetric & g) { return deficits(tri, all_dihedrals(tri, g)); }

Vector cooper_rivin(const Triangulation3 & tri, const PLMetric & g)
{
  const auto beta = all_dihedrals(tri, g);
  Vector s = Vector::Constant(tri.num_vertices(), 4.0 * kPi);
  for (Index t = 0; t < tri.num_tets(); ++t) {
    const auto solid = solid_angles_from_dihedrals(beta[static_cast<std::size_t>(t)]);
    const auto & tet = tri.tets()[t];
    for (int v = 0; v < 4; ++v) {
      s[tet[v]] -= solid[v];
    }
  }
  return s;
}

double length_power_sum(const PLMetric & g, double p)
{
  double sum = 0.0;
  for (Index e = 0; e < g.size(); ++e) {
    sum += std::pow(g[e], p / 2.0);
  }
  return sum;
}

double regge_action(const Triangulation3 & tri, const PLMetric & g) { return action_from(ricci(tri, g), g); }

double lambda_alpha(const Vector & R, const PLMetric & g, double alpha)
{
  return action_from(R, g) / length_power_sum(g, alpha + 1.0);
}

double q_alpha(const Vector & R, const PLMetric & g, double alpha)
{
  check_alpha_for_q(alpha);
  return action_from(R, g) / std::pow(length_power_sum(g, alpha + 1.0), 1.0 / (alpha + 1.0));
}

double normalized_action(const Triangulation3 & tri, const PLMetric & g) { return q_alpha(ricci(tri, g), g, 2.0); }

CurvatureReport functionals(const Triangulation3 & tri, const PLMetric & g, double alpha)
{
  check_alpha_for_q(alpha);
  const auto beta = all_dihedrals(tri, g);

  CurvatureReport rep;
  rep.alpha = alpha;
  rep.R = deficits(tri, beta);

  rep.S_cr = Vector::Constant(tri.num_vertices(), 4.0 * kPi);
  for (Index t = 0; t < tri.num_tets(); ++t) {
    const auto solid = solid_angles_from_dihedrals(beta[static_cast<std::size_t>(t)]);
    const auto & tet = tri.tets()[t];
    for (int v = 0; v < 4; ++v) {
      rep.S_cr[tet[v]] -= solid[v];
    }
  }

  const Index nv = tri.num_vertices();
  rep.S = Vector::Zero(nv);
  rep.V_vertex = Vector::Zero(nv);
  rep.SstarV = Vector::Zero(nv);
  for (Index v = 0; v < nv; ++v) {
    for (Index e : tri.vertex_edges(v)) {
      const double l = std::sqrt(g[e]);
      const double l3 = l * l * l;
      rep.S[v] += rep.R[e] / g[e];
      rep.V_vertex[v] += l3;
      rep.SstarV[v] += rep.R[e] / g[e] * l3;
    }
  }

  rep.E = action_from(rep.R, g);
  rep.sum_l3 = length_power_sum(g, 3.0);
  rep.V_total = rep.V_vertex.sum();
  rep.lambda = rep.E / rep.sum_l3;
  rep.Q = rep.E / std::cbrt(rep.sum_l3);
  rep.lambda_alpha = lambda_alpha(rep.R, g, alpha);
  rep.Q_alpha = q_alpha(rep.R, g, alpha);
  return rep;
}

EinsteinResidual einstein_residual(const Vector & R, const PLMetric & g, double alpha)
{
  EinsteinResidual out;
  out.lambda_alpha = lambda_alpha(R, g, alpha);
  out.residual.resize(R.size());
  double target_max = 0.0;
  double res_max = 0.0;
  for (Index e = 0; e < R.size(); ++e) {
    const double target = out.lambda_alpha * std::pow(g[e], alpha / 2.0);
    out.residual[e] = R[e] - target;
    target_max = std::max(target_max, std::abs(target));
    res_max = std::max(res_max, std::abs(out.residual[e]));
  }
  const double floor = 1e-15 * g.squared().maxCoeff();
  out.sup_norm = res_max / std::max(target_max, floor);
  return out;
}

EinsteinResidual einstein_residual(const Triangulation3 & tri, const PLMetric & g, double alpha)
{
  return einstein_residual(ricci(tri, g), g, alpha);
}

std::string report_to_json(const CurvatureReport & rep, const Triangulation3 & tri, const EinsteinResidual * res)
{
  using json = nlohmann::ordered_json;
  auto per_edge = [&](const Vector & x) {
    json o = json::object();
    for (Index e = 0; e < tri.num_edges(); ++e) {
      o[tri.edge_key(e)] = x[e];
    }
    return o;
  };
  auto per_vertex = [&](const Vector & x) {
    json o = json::object();
    for (Index v = 0; v < tri.num_vertices(); ++v) {
      o[tri.labels()[v]] = x[v];
    }
    return o;
  };
  json doc;
  doc["alpha"] = rep.alpha;
  doc["E"] = rep.E;
  doc["sum_l3"] = rep.sum_l3;
  doc["V_total"] = rep.V_total;
  doc["lambda"] = rep.lambda;
  doc["Q"] = rep.Q;
  doc["lambda_alpha"] = rep.lambda_alpha;
  doc["Q_alpha"] = rep.Q_alpha;
  if (res != nullptr) {
    doc["residual"] = res->sup_norm;
  }
  doc["R"] = per_edge(rep.R);
  doc["S_cr"] = per_vertex(rep.S_cr);
  doc["S"] = per_vertex(rep.S);
  doc["V_vertex"] = per_vertex(rep.V_vertex);
  doc["SstarV"] = per_vertex(rep.SstarV);
  if (res != nullptr) {
    doc["einstein_residual"] = per_edge(res->residual);
  }
  return doc.dump(2) + "\n";
}

}  // namespace regge
