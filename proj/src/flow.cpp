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

#include "regge/flow.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "regge/curvature.hpp"
#include "regge/errors.hpp"
#include "regge/geometry.hpp"

namespace regge
{

void FlowConfig::validate() const
{
  if (!(dt_init > 0.0) || !(dt_min > 0.0) || !(dt_min < dt_init)) {
    throw std::invalid_argument("flow config: need 0 < dt_min < dt_init");
  }
  if (!(t_max > 0.0)) {
    throw std::invalid_argument("flow config: t_max must be positive");
  }
  if (!(conv_tol > 0.0) || !(step_tol > 0.0)) {
    throw std::invalid_argument("flow config: tolerances must be positive");
  }
  if (record_every < 1) {
    throw std::invalid_argument("flow config: record_every must be >= 1");
  }
  if (alpha == 0.0 || (normalized && alpha == -1.0)) {
    throw std::invalid_argument("flow config: alpha must not be 0 or -1");
  }
}

std::string_view to_string(FlowStatus s)
{
  switch (s) {
    case FlowStatus::Converged:
      return "Converged";
    case FlowStatus::MaxTimeReached:
      return "MaxTimeReached";
    case FlowStatus::Singular:
      return "Singular";
    case FlowStatus::StepUnderflow:
      return "StepUnderflow";
  }
  return "Unknown";
}

namespace
{

// A collapse stalls the step controller while the smallest volume is still
// about sqrt(dt_min) of its start, so 1e-4 already marks a vanishing tet.
constexpr double kSingularVolumeRatio = 1e-4;

// u = l^alpha = g^(alpha/2). Order 2 is kept exact.
Vector u_from_g(const Vector & g, double alpha)
{
  if (alpha == 2.0) {
    return g;
  }
  return g.array().pow(alpha / 2.0);
}

Vector g_from_u(const Vector & u, double alpha)
{
  if (alpha == 2.0) {
    return u;
  }
  return u.array().pow(2.0 / alpha);
}

/// Metric for state u, or nullopt if u leaves the admissible cone.
std::optional<PLMetric> metric_of(const Triangulation3 & tri, const Vector & u, const FlowConfig & cfg)
{
  if (!u.allFinite() || (u.array() <= 0.0).any()) {
    return std::nullopt;
  }
  PLMetric g(g_from_u(u, cfg.alpha));
  if (!is_admissible(tri, g, cfg.safety)) {
    return std::nullopt;
  }
  return g;
}

Vector rhs_at(const Triangulation3 & tri, const PLMetric & g, const Vector & u, const FlowConfig & cfg)
{
  const Vector R = ricci(tri, g);
  if (!cfg.normalized) {
    return -2.0 * R;
  }
  return 2.0 * lambda_alpha(R, g, cfg.alpha) * u - 2.0 * R;
}

std::optional<Vector> rhs_guarded(const Triangulation3 & tri, const Vector & u, const FlowConfig & cfg)
{
  auto g = metric_of(tri, u, cfg);
  if (!g) {
    return std::nullopt;
  }
  return rhs_at(tri, *g, u, cfg);
}

std::optional<Vector> rk4(const Triangulation3 & tri, const Vector & u, double h, const FlowConfig & cfg)
{
  auto k1 = rhs_guarded(tri, u, cfg);
  if (!k1) return std::nullopt;
  auto k2 = rhs_guarded(tri, u + 0.5 * h * *k1, cfg);
  if (!k2) return std::nullopt;
  auto k3 = rhs_guarded(tri, u + 0.5 * h * *k2, cfg);
  if (!k3) return std::nullopt;
  auto k4 = rhs_guarded(tri, u + h * *k3, cfg);
  if (!k4) return std::nullopt;
  return Vector(u + (h / 6.0) * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4));
}

FlowSample make_sample(const Triangulation3 & tri, const PLMetric & g, double t, const FlowConfig & cfg)
{
  const Vector R = ricci(tri, g);
  FlowSample s;
  s.t = t;
  s.g = g.squared();
  s.sum_l3 = length_power_sum(g, 3.0);
  s.lambda_alpha = lambda_alpha(R, g, cfg.alpha);
  s.E = s.lambda_alpha * length_power_sum(g, cfg.alpha + 1.0);
  s.Q_alpha = cfg.alpha == -1.0 ? std::numeric_limits<double>::quiet_NaN() : q_alpha(R, g, cfg.alpha);
  s.residual = einstein_residual(R, g, cfg.alpha).sup_norm;
  return s;
}

double min_tet_volume(const Triangulation3 & tri, const PLMetric & g)
{
  double v = std::numeric_limits<double>::infinity();
  for (Index t = 0; t < tri.num_tets(); ++t) {
    const double expr = cayley_menger_144v2(g.tet_values(tri, t));
    v = std::min(v, expr > 0.0 ? std::sqrt(expr) / 12.0 : 0.0);
  }
  return v;
}

}  // namespace

Vector flow_rhs(const Triangulation3 & tri, const PLMetric & g, const FlowConfig & cfg)
{
  require_admissible(tri, g, cfg.safety);
  return rhs_at(tri, g, u_from_g(g.squared(), cfg.alpha), cfg);
}

FlowTrajectory integrate(const Triangulation3 & tri, const PLMetric & g0, const FlowConfig & cfg)
{
  cfg.validate();
  if (!tri.is_closed()) {
    throw BoundaryError("flows require a closed complex (triangulation has boundary edges)");
  }
  check_bound(g0, tri);
  require_admissible(tri, g0, cfg.safety);

  FlowTrajectory traj;
  traj.config = cfg;

  const double initial_min_volume = min_tet_volume(tri, g0);
  Vector u = u_from_g(g0.squared(), cfg.alpha);
  PLMetric g = g0;
  double t = 0.0;
  double dt = std::min(cfg.dt_init, cfg.t_max);
  int streak = 0;

  FlowSample last = make_sample(tri, g, t, cfg);
  traj.samples.push_back(last);
  bool last_recorded = true;

  auto finish = [&](FlowStatus status) {
    traj.status = status;
    traj.final_metric = g;
    traj.min_volume_ratio = min_tet_volume(tri, g) / initial_min_volume;
    if (!last_recorded) {
      traj.samples.push_back(last);
    }
    return traj;
  };

  if (cfg.normalized && last.residual <= cfg.conv_tol) {
    return finish(FlowStatus::Converged);
  }

  while (true) {
    if (t >= cfg.t_max) {
      return finish(FlowStatus::MaxTimeReached);
    }
    const bool lands = t + dt >= cfg.t_max;
    const double h = lands ? cfg.t_max - t : dt;

    std::optional<Vector> full = rk4(tri, u, h, cfg);
    std::optional<Vector> half;
    std::optional<PLMetric> next;
    if (full) {
      half = rk4(tri, u, 0.5 * h, cfg);
      if (half) {
        half = rk4(tri, *half, 0.5 * h, cfg);
      }
      if (half) {
        next = metric_of(tri, *half, cfg);
      }
    }

    bool accept = false;
    const bool left_cone = !next || !metric_of(tri, *full, cfg);
    if (!left_cone) {
      const double scale = std::max(half->cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
      const double err = (*full - *half).cwiseAbs().maxCoeff() / scale;
      accept = err <= cfg.step_tol;
    }

    if (!accept) {
      ++traj.rejected_steps;
      streak = 0;
      dt = 0.5 * h;
      if (dt < cfg.dt_min) {
        const bool collapsed =
          left_cone || min_tet_volume(tri, g) < kSingularVolumeRatio * initial_min_volume;
        return finish(collapsed ? FlowStatus::Singular : FlowStatus::StepUnderflow);
      }
      continue;
    }

    u = *half;
    g = *next;
    t = lands ? cfg.t_max : t + h;
    ++traj.accepted_steps;
    if (++streak >= 5) {
      streak = 0;
      dt = 1.5 * h;
    } else if (!lands) {
      dt = h;
    }

    last = make_sample(tri, g, t, cfg);
    last_recorded = false;
    if (traj.accepted_steps % cfg.record_every == 0) {
      traj.samples.push_back(last);
      last_recorded = true;
    }
    if (cfg.normalized && last.residual <= cfg.conv_tol) {
      return finish(FlowStatus::Converged);
    }
  }
}

ConservationCheck conservation_check(const FlowTrajectory & traj)
{
  if (!traj.config.normalized || traj.config.alpha != 2.0) {
    throw std::invalid_argument("conservation check applies to normalized order-2 runs only");
  }
  ConservationCheck out;
  if (traj.samples.empty()) {
    return out;
  }
  const double v0 = traj.samples.front().sum_l3;
  const double e_scale = std::max(std::abs(traj.samples.front().E), 1.0);
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    out.V_drift = std::max(out.V_drift, std::abs(traj.samples[k].sum_l3 - v0) / v0);
    if (k > 0) {
      const double rise = traj.samples[k].E - traj.samples[k - 1].E;
      out.E_monotone_violation = std::max(out.E_monotone_violation, std::max(0.0, rise) / e_scale);
    }
  }
  return out;
}

std::string format_double(double x)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string trajectory_to_csv(const FlowTrajectory & traj, const Triangulation3 & tri)
{
  std::ostringstream out;
  out << "t";
  for (Index e = 0; e < tri.num_edges(); ++e) {
    out << ',' << tri.edge_key(e);
  }
  out << ",E,sumL3,lambda,Q,residual\n";
  for (const auto & s : traj.samples) {
    out << format_double(s.t);
    for (Index e = 0; e < s.g.size(); ++e) {
      out << ',' << format_double(s.g[e]);
    }
    out << ',' << format_double(s.E) << ',' << format_double(s.sum_l3) << ',' << format_double(s.lambda_alpha) << ','
        << format_double(s.Q_alpha) << ',' << format_double(s.residual) << '\n';
  }
  return out.str();
}

}  // namespace regge
