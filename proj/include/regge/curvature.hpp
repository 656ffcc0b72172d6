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

#ifndef REGGE_CURVATURE_HPP_
#define REGGE_CURVATURE_HPP_

#include <string>

#include "regge/complex.hpp"
#include "regge/metric.hpp"
#include "regge/types.hpp"

namespace regge
{

/// Edge and vertex curvatures plus the global functionals of a metric.
///
/// Edge sums (E, sum_l3) run over unordered edges. V_total counts every edge
/// from both endpoints, so V_total = 2 * sum_l3. lambda and Q are the
/// order-2 quantities built on sum_l3; lambda_alpha and Q_alpha use the
/// requested order.
struct CurvatureReport
{
  Vector R;         // per edge
  Vector S_cr;      // per vertex, 4 pi minus solid angles
  Vector S;         // per vertex, sum_j R_ij / g_ij
  Vector V_vertex;  // per vertex, sum_j l_ij^3
  Vector SstarV;    // per vertex, sum_j R_ij l_ij^3 / g_ij
  double E = 0.0;
  double sum_l3 = 0.0;
  double V_total = 0.0;
  double lambda = 0.0;
  double Q = 0.0;
  double alpha = 2.0;
  double lambda_alpha = 0.0;
  double Q_alpha = 0.0;
};

/// Dihedral-angle deficit per edge: 2 pi (interior) or pi (boundary) minus
/// the incident dihedrals, summed in ascending tetrahedron order.
Vector ricci(const Triangulation3 & tri, const PLMetric & g);

Vector cooper_rivin(const Triangulation3 & tri, const PLMetric & g);

/// sum_e R_e l_e.
double regge_action(const Triangulation3 & tri, const PLMetric & g);

/// sum_e l_e^p.
double length_power_sum(const PLMetric & g, double p);

/// sum R l / sum l^(alpha+1).
double lambda_alpha(const Vector & R, const PLMetric & g, double alpha);

/// sum R l / (sum l^(alpha+1))^(1/(alpha+1)); alpha = -1 is rejected.
double q_alpha(const Vector & R, const PLMetric & g, double alpha);

/// Q = E / (sum l^3)^(1/3).
double normalized_action(const Triangulation3 & tri, const PLMetric & g);

CurvatureReport functionals(const Triangulation3 & tri, const PLMetric & g, double alpha = 2.0);

struct EinsteinResidual
{
  double lambda_alpha = 0.0;
  Vector residual;
  double sup_norm = 0.0;
};

/// R - lambda_alpha l^alpha and its scale-relative sup norm
/// max|res| / max(max_e |lambda_alpha l_e^alpha|, 1e-15 max g).
EinsteinResidual einstein_residual(const Vector & R, const PLMetric & g, double alpha = 2.0);
EinsteinResidual einstein_residual(const Triangulation3 & tri, const PLMetric & g, double alpha = 2.0);

std::string report_to_json(const CurvatureReport & rep, const Triangulation3 & tri, const EinsteinResidual * res = nullptr);

}  // namespace regge

#endif  // REGGE_CURVATURE_HPP_
