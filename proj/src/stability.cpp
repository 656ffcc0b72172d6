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

#include "regge/stability.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "json.hpp"

#include "regge/curvature.hpp"
#include "regge/errors.hpp"
#include "regge/geometry.hpp"

namespace regge
{

namespace
{

constexpr int kMaxStepHalvings = 8;

std::optional<PLMetric> admissible_or_null(const Triangulation3 & tri, Vector g)
{
  if ((g.array() <= 0.0).any()) {
    return std::nullopt;
  }
  PLMetric m(std::move(g));
  if (!is_admissible(tri, m)) {
    return std::nullopt;
  }
  return m;
}

/// Central difference of f along coordinate e of a metric, with the
/// perturbation applied to l (in_lengths) or to g directly. Returns the
/// derivative with respect to the chosen coordinate.
template <typename F>
auto central_difference(
  const Triangulation3 & tri, const PLMetric & g, Index e, double h, bool in_lengths, F && f)
{
  const Vector base = g.squared();
  for (int attempt = 0; attempt <= kMaxStepHalvings; ++attempt, h *= 0.5) {
    Vector plus = base;
    Vector minus = base;
    double step = 0.0;
    if (in_lengths) {
      const double l = std::sqrt(base[e]);
      plus[e] = (l * (1.0 + h)) * (l * (1.0 + h));
      minus[e] = (l * (1.0 - h)) * (l * (1.0 - h));
      step = 2.0 * h * l;
    } else {
      plus[e] = base[e] * (1.0 + h);
      minus[e] = base[e] * (1.0 - h);
      step = 2.0 * h * base[e];
    }
    auto gp = admissible_or_null(tri, std::move(plus));
    auto gm = admissible_or_null(tri, std::move(minus));
    if (gp && gm) {
      return decltype(f(*gp))((f(*gp) - f(*gm)) / step);
    }
  }
  throw InadmissibleError(
    "finite difference at edge " + tri.edge_key(e) + " leaves the admissible cone", -1);
}

double row_sum_norm(const Matrix & m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace

Matrix jacobian_R_wrt_l(const Triangulation3 & tri, const PLMetric & g, double h)
{
  require_admissible(tri, g);
  Matrix L(tri.num_edges(), tri.num_edges());
  for (Index e = 0; e < tri.num_edges(); ++e) {
    L.col(e) = central_difference(tri, g, e, h, true, [&](const PLMetric & m) { return Vector(ricci(tri, m)); });
  }
  return L;
}

Matrix jacobian_R_wrt_g(const Triangulation3 & tri, const PLMetric & g, double h)
{
  require_admissible(tri, g);
  Matrix J(tri.num_edges(), tri.num_edges());
  for (Index e = 0; e < tri.num_edges(); ++e) {
    J.col(e) = central_difference(tri, g, e, h, false, [&](const PLMetric & m) { return Vector(ricci(tri, m)); });
  }
  return J;
}

Vector action_gradient_fd(const Triangulation3 & tri, const PLMetric & g, double h)
{
  require_admissible(tri, g);
  Vector grad(tri.num_edges());
  for (Index e = 0; e < tri.num_edges(); ++e) {
    grad[e] = central_difference(tri, g, e, h, true, [&](const PLMetric & m) { return regge_action(tri, m); });
  }
  return grad;
}

Lichnerowicz lichnerowicz(const Triangulation3 & tri, const PLMetric & g, double h)
{
  Lichnerowicz out;
  out.L = jacobian_R_wrt_l(tri, g, h);
  const Vector d = (0.5 * g.lengths().array().inverse()).matrix();
  out.Delta_L = out.L * d.asDiagonal();

  const Matrix sym = 0.5 * (out.L + out.L.transpose());
  const Vector root_d = d.array().sqrt();
  const Matrix similar = root_d.asDiagonal() * sym * root_d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(similar, Eigen::EigenvaluesOnly);
  out.spectrum = solver.eigenvalues();
  out.lambda_inf = out.spectrum.minCoeff();
  return out;
}

Matrix flow_jacobian_fd(const Triangulation3 & tri, const PLMetric & g, double h)
{
  require_admissible(tri, g);
  auto gamma = [&](const PLMetric & m) {
    const Vector R = ricci(tri, m);
    return Vector(2.0 * (lambda_alpha(R, m, 2.0) * m.squared() - R));
  };
  Matrix J(tri.num_edges(), tri.num_edges());
  for (Index e = 0; e < tri.num_edges(); ++e) {
    J.col(e) = central_difference(tri, g, e, h, false, gamma);
  }
  return J;
}

StabilityReport stability_test(const Triangulation3 & tri, const PLMetric & g_star, double h)
{
  require_admissible(tri, g_star);
  const Vector R = ricci(tri, g_star);
  const auto res = einstein_residual(R, g_star, 2.0);
  if (!(res.sup_norm <= kStabilityGate)) {
    throw GateError(
      "metric is not near-Einstein: residual " + std::to_string(res.sup_norm) + " exceeds " +
        std::to_string(kStabilityGate),
      res.sup_norm);
  }

  StabilityReport rep;
  rep.einstein_residual = res.sup_norm;
  auto lich = lichnerowicz(tri, g_star, h);
  rep.L = std::move(lich.L);
  rep.Delta_L = std::move(lich.Delta_L);
  rep.delta_l_spectrum = std::move(lich.spectrum);
  rep.lambda_inf = lich.lambda_inf;
  rep.lambda_star = res.lambda_alpha;
  rep.stable = rep.lambda_inf > rep.lambda_star;

  Eigen::SelfAdjointEigenSolver<Matrix> l_solver(0.5 * (rep.L + rep.L.transpose()), Eigen::EigenvaluesOnly);
  rep.l_spectrum = l_solver.eigenvalues();

  const Vector l = g_star.lengths();
  const double r_norm = R.cwiseAbs().maxCoeff();
  rep.schlafli_residual = (l.transpose() * rep.L).cwiseAbs().maxCoeff() / r_norm;
  rep.gradient_residual = (action_gradient_fd(tri, g_star, h) - R).cwiseAbs().maxCoeff() / r_norm;
  rep.symmetry_residual = row_sum_norm(rep.L - rep.L.transpose()) / row_sum_norm(rep.L);

  const Index m = tri.num_edges();
  const Vector & g = g_star.squared();
  const double sum_l3 = length_power_sum(g_star, 3.0);
  rep.linearization =
    2.0 * (rep.lambda_star * (Matrix::Identity(m, m) - g * l.transpose() / sum_l3) - rep.Delta_L);

  Eigen::EigenSolver<Matrix> solver(rep.linearization);
  const auto & values = solver.eigenvalues();
  const auto & vectors = solver.eigenvectors();
  Index scaling = 0;
  double best = -1.0;
  for (Index k = 0; k < m; ++k) {
    const Eigen::VectorXcd v = vectors.col(k);
    const double align = std::abs(v.dot(g.cast<std::complex<double>>())) / (v.norm() * g.norm());
    if (align > best) {
      best = align;
      scaling = k;
    }
  }
  rep.scaling_eigenvalue = values[scaling].real();
  std::vector<double> transverse;
  for (Index k = 0; k < m; ++k) {
    if (k != scaling) {
      transverse.push_back(values[k].real());
    }
  }
  std::sort(transverse.begin(), transverse.end());
  rep.transverse_spectrum = Eigen::Map<Vector>(transverse.data(), static_cast<Index>(transverse.size()));
  rep.linearly_stable = transverse.empty() || transverse.back() < -1e-6;
  return rep;
}

Vector grad_Q(const Triangulation3 & tri, const PLMetric & g)
{
  const Vector R = ricci(tri, g);
  const double sum_l3 = length_power_sum(g, 3.0);
  const double lambda = lambda_alpha(R, g, 2.0);
  const Vector l = g.lengths();
  return (0.5 / std::cbrt(sum_l3)) * ((R - lambda * g.squared()).array() / l.array()).matrix();
}

std::string_view to_string(MinimizeStatus s)
{
  switch (s) {
    case MinimizeStatus::Converged:
      return "Converged";
    case MinimizeStatus::MaxIterations:
      return "MaxIterations";
    case MinimizeStatus::BoundaryEscape:
      return "BoundaryEscape";
    case MinimizeStatus::LineSearchFailed:
      return "LineSearchFailed";
  }
  return "Unknown";
}

namespace
{

double shape_ratio(const Triangulation3 & tri, const PLMetric & g)
{
  const double mean_l = g.lengths().mean();
  double vmin = std::numeric_limits<double>::infinity();
  for (Index t = 0; t < tri.num_tets(); ++t) {
    const double expr = cayley_menger_144v2(g.tet_values(tri, t));
    vmin = std::min(vmin, expr > 0.0 ? std::sqrt(expr) / 12.0 : 0.0);
  }
  return vmin / (mean_l * mean_l * mean_l);
}

}  // namespace

MinimizeResult minimize_Q(const Triangulation3 & tri, const PLMetric & g0, const MinimizeOptions & opts)
{
  check_bound(g0, tri);
  require_admissible(tri, g0);

  MinimizeResult out;
  PLMetric g = g0;
  double q = normalized_action(tri, g);
  out.Q_start = q;
  double step = -1.0;

  for (out.iterations = 0;; ++out.iterations) {
    const Vector grad = grad_Q(tri, g);
    out.grad_norm = grad.cwiseAbs().maxCoeff();
    if (out.grad_norm <= opts.tol * std::max(std::abs(q), 1.0)) {
      out.status = MinimizeStatus::Converged;
      break;
    }
    if (out.iterations >= opts.max_iters) {
      out.status = MinimizeStatus::MaxIterations;
      break;
    }
    if (step < 0.0) {
      // First trial moves the most-affected edge by 10%.
      step = 0.1 / (grad.array().abs() / g.squared().array()).maxCoeff();
    } else {
      step *= 2.0;
    }
    const double slope = grad.squaredNorm();
    bool moved = false;
    for (int k = 0; k < opts.max_backtracks; ++k, step *= opts.shrink) {
      auto trial = admissible_or_null(tri, g.squared() - step * grad);
      if (!trial) {
        continue;
      }
      const double q_trial = normalized_action(tri, *trial);
      if (q_trial <= q - opts.armijo * step * slope) {
        g = std::move(*trial);
        q = q_trial;
        moved = true;
        break;
      }
    }
    if (!moved) {
      out.status = MinimizeStatus::LineSearchFailed;
      break;
    }
    if (shape_ratio(tri, g) < opts.boundary_ratio) {
      ++out.iterations;
      out.status = MinimizeStatus::BoundaryEscape;
      break;
    }
  }
  out.g_min = g;
  out.Q_min = q;
  out.converged = out.status == MinimizeStatus::Converged;
  return out;
}

std::string stability_to_json(const StabilityReport & rep, const Triangulation3 & tri)
{
  using json = nlohmann::ordered_json;
  auto matrix = [](const Matrix & m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Index j = 0; j < m.cols(); ++j) {
        row.push_back(m(i, j));
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };
  auto vec = [](const Vector & v) { return json(std::vector<double>(v.data(), v.data() + v.size())); };

  json doc;
  json keys = json::array();
  for (Index e = 0; e < tri.num_edges(); ++e) {
    keys.push_back(tri.edge_key(e));
  }
  doc["edges"] = std::move(keys);
  doc["einstein_residual"] = rep.einstein_residual;
  doc["lambda_inf"] = rep.lambda_inf;
  doc["lambda_star"] = rep.lambda_star;
  doc["stable"] = rep.stable;
  doc["schlafli_residual"] = rep.schlafli_residual;
  doc["gradient_residual"] = rep.gradient_residual;
  doc["symmetry_residual"] = rep.symmetry_residual;
  doc["scaling_eigenvalue"] = rep.scaling_eigenvalue;
  doc["linearly_stable"] = rep.linearly_stable;
  doc["transverse_spectrum"] = vec(rep.transverse_spectrum);
  doc["delta_l_spectrum"] = vec(rep.delta_l_spectrum);
  doc["l_spectrum"] = vec(rep.l_spectrum);
  doc["L"] = matrix(rep.L);
  doc["Delta_L"] = matrix(rep.Delta_L);
  doc["linearization"] = matrix(rep.linearization);
  return doc.dump(2) + "\n";
}

}  // namespace regge
