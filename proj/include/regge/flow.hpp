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

#ifndef REGGE_FLOW_HPP_
#define REGGE_FLOW_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "regge/complex.hpp"
#include "regge/metric.hpp"
#include "regge/types.hpp"

namespace regge
{

struct FlowConfig
{
  /// Flow variable is u = l^alpha; alpha = 2 flows g itself.
  double alpha = 2.0;
  bool normalized = true;
  double dt_init = 1e-3;
  double dt_min = 1e-12;
  double t_max = 100.0;
  /// Sup-norm Einstein residual at which a normalized run stops.
  double conv_tol = 1e-8;
  /// Relative step-doubling error accepted per step.
  double step_tol = 1e-8;
  int record_every = 1;
  double safety = kDefaultPivotEps;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

enum class FlowStatus
{
  Converged,
  MaxTimeReached,
  Singular,
  StepUnderflow,
};

std::string_view to_string(FlowStatus s);

struct FlowSample
{
  double t = 0.0;
  Vector g;
  double E = 0.0;
  double sum_l3 = 0.0;
  double lambda_alpha = 0.0;
  double Q_alpha = 0.0;
  double residual = 0.0;
};

struct FlowTrajectory
{
  FlowConfig config;
  std::vector<FlowSample> samples;
  FlowStatus status = FlowStatus::MaxTimeReached;
  PLMetric final_metric;
  /// Smallest tetrahedron volume of the final metric over that of g0.
  double min_volume_ratio = 1.0;
  long accepted_steps = 0;
  long rejected_steps = 0;
};

/// du/dt with u = l^alpha: -2R (unnormalized) or 2 lambda_alpha u - 2R.
Vector flow_rhs(const Triangulation3 & tri, const PLMetric & g, const FlowConfig & cfg);

/// Classical RK4 in u with step doubling, admissibility-guarded step halving
/// and 1.5x growth after 5 consecutive accepted steps.
FlowTrajectory integrate(const Triangulation3 & tri, const PLMetric & g0, const FlowConfig & cfg);

struct ConservationCheck
{
  double V_drift = 0.0;
  double E_monotone_violation = 0.0;
};

/// Volume drift and action increase along a normalized order-2 run.
ConservationCheck conservation_check(const FlowTrajectory & traj);

/// Header `t,<edge keys>,E,sumL3,lambda,Q,residual`; shortest round-trip
/// decimal numbers.
std::string trajectory_to_csv(const FlowTrajectory & traj, const Triangulation3 & tri);

/// Shortest round-trip decimal representation.
std::string format_double(double x);

}  // namespace regge

#endif  // REGGE_FLOW_HPP_
