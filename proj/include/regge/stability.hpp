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

#ifndef REGGE_STABILITY_HPP_
#define REGGE_STABILITY_HPP_

#include <string>
#include <string_view>

#include "regge/complex.hpp"
#include "regge/metric.hpp"
#include "regge/types.hpp"

namespace regge
{

inline constexpr double kDefaultFdStep = 1e-5;

/// Near-Einstein gate for stability_test.
inline constexpr double kStabilityGate = 1e-3;

/// Central-difference dR/dl with relative step h (column e perturbs l_e by
/// +-h l_e). h is halved up to 8 times if a perturbed metric is inadmissible.
Matrix jacobian_R_wrt_l(const Triangulation3 & tri, const PLMetric & g, double h = kDefaultFdStep);

/// Central-difference dR/dg, perturbing g_e by +-h g_e.
Matrix jacobian_R_wrt_g(const Triangulation3 & tri, const PLMetric & g, double h = kDefaultFdStep);

/// Central-difference gradient of the Regge action with respect to l.
Vector action_gradient_fd(const Triangulation3 & tri, const PLMetric & g, double h = kDefaultFdStep);

struct Lichnerowicz
{
  Matrix L;        // dR/dl
  Matrix Delta_L;  // dR/dg = L diag(1/(2l))
  double lambda_inf = 0.0;
  Vector spectrum;  // ascending
};

/// Delta_L and its smallest eigenvalue, taken from the symmetric matrix
/// D^(1/2) L D^(1/2), D = diag(1/(2l)), which is similar to Delta_L.
Lichnerowicz lichnerowicz(const Triangulation3 & tri, const PLMetric & g, double h = kDefaultFdStep);

struct StabilityReport
{
  Matrix L;
  Matrix Delta_L;
  Vector delta_l_spectrum;
  Vector l_spectrum;
  double lambda_inf = 0.0;
  double lambda_star = 0.0;
  bool stable = false;
  double schlafli_residual = 0.0;
  double gradient_residual = 0.0;
  double symmetry_residual = 0.0;
  double einstein_residual = 0.0;

  /// Closed-form linearization of the normalized flow,
  /// 2 [lambda (I - g l^T / sum l^3) - Delta_L].
  Matrix linearization;
  /// Real parts of its eigenvalues, ascending, excluding the scaling mode.
  Vector transverse_spectrum;
  /// Eigenvalue whose eigenvector is most aligned with g itself.
  double scaling_eigenvalue = 0.0;
  /// All transverse eigenvalues have negative real part.
  bool linearly_stable = false;
};

/// Throws GateError if the Einstein residual of g exceeds kStabilityGate.
StabilityReport stability_test(const Triangulation3 & tri, const PLMetric & g_star, double h = kDefaultFdStep);

/// Finite-difference Jacobian of 2 (lambda g - R) with respect to g.
Matrix flow_jacobian_fd(const Triangulation3 & tri, const PLMetric & g, double h = kDefaultFdStep);

/// (sum l^3)^(-1/3) / 2 * diag(g^(-1/2)) (R - lambda g).
Vector grad_Q(const Triangulation3 & tri, const PLMetric & g);

enum class MinimizeStatus
{
  Converged,
  MaxIterations,
  BoundaryEscape,
  LineSearchFailed,
};

std::string_view to_string(MinimizeStatus s);

struct MinimizeOptions
{
  int max_iters = 2000;
  double tol = 1e-8;
  double armijo = 1e-4;
  double shrink = 0.5;
  int max_backtracks = 60;
  /// Min tet volume over (mean edge length)^3 that counts as reaching the
  /// cone boundary.
  double boundary_ratio = 1e-6;
};

struct MinimizeResult
{
  PLMetric g_min;
  double Q_min = 0.0;
  double Q_start = 0.0;
  bool converged = false;
  MinimizeStatus status = MinimizeStatus::MaxIterations;
  int iterations = 0;
  double grad_norm = 0.0;
};

/// Gradient descent on Q with Armijo backtracking and an admissibility guard.
/// Q_min only bounds the infimum over the cone from above.
MinimizeResult minimize_Q(const Triangulation3 & tri, const PLMetric & g0, const MinimizeOptions & opts = {});

std::string stability_to_json(const StabilityReport & rep, const Triangulation3 & tri);

}  // namespace regge

#endif  // REGGE_STABILITY_HPP_
