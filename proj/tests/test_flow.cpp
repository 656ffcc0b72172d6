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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "regge/complex.hpp"
#include "regge/curvature.hpp"
#include "regge/errors.hpp"
#include "regge/flow.hpp"
#include "regge/metric.hpp"
#include "regge/random.hpp"

using namespace regge;

namespace
{

const double kR = 2 * kPi - 4 * std::acos(1.0 / 3.0);

PLMetric small_perturbation(const Triangulation3 & tri, std::uint64_t seed, double sigma)
{
  SplitMix64 rng(seed);
  return sample_admissible(tri, PLMetric::uniform(tri, 1.0), sigma, rng);
}

}  // namespace

TEST(FlowConfig, Validation)
{
  FlowConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.dt_min = cfg.dt_init;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.alpha = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.alpha = -1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.conv_tol = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.record_every = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(FlowRhs, VanishesOnConstantMetricForEveryAlpha)
{
  const auto tri = build_16cell();
  for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
    for (double c : {1.0, 2.5}) {
      FlowConfig cfg;
      cfg.alpha = alpha;
      const Vector rhs = flow_rhs(tri, PLMetric::uniform(tri, c), cfg);
      EXPECT_LE(rhs.cwiseAbs().maxCoeff(), 1e-13) << "alpha " << alpha << " c " << c;
    }
  }
}

TEST(FlowRhs, Unnormalized)
{
  const auto tri = build_16cell();
  FlowConfig cfg;
  cfg.normalized = false;
  const Vector rhs = flow_rhs(tri, PLMetric::uniform(tri, 1.0), cfg);
  for (Index e = 0; e < rhs.size(); ++e) {
    EXPECT_NEAR(rhs[e], -2 * kR, 1e-13);
  }
}

TEST(FlowRhs, NormalizedOrderTwoIsRMinusLambdaG)
{
  const auto tri = build_16cell();
  const auto g = small_perturbation(tri, 4, 0.2);
  const Vector R = ricci(tri, g);
  const double lambda = lambda_alpha(R, g, 2.0);
  FlowConfig cfg;
  const Vector rhs = flow_rhs(tri, g, cfg);
  EXPECT_LE((rhs - 2.0 * (lambda * g.squared() - R)).cwiseAbs().maxCoeff(), 1e-14);
  // r = 3 lambda form.
  EXPECT_LE((rhs - ((2.0 / 3.0) * (3.0 * lambda) * g.squared() - 2.0 * R)).cwiseAbs().maxCoeff(), 1e-13);
  // sum l^3 is stationary: d/dt sum g^(3/2) = 3/2 sum l rhs.
  EXPECT_NEAR(g.lengths().dot(rhs), 0.0, 1e-12);
}

TEST(Integrate, TrivialStartConvergesImmediately)
{
  const auto tri = build_16cell();
  for (double alpha : {1.0, 2.0}) {
    FlowConfig cfg;
    cfg.alpha = alpha;
    const auto traj = integrate(tri, PLMetric::uniform(tri, 1.0), cfg);
    EXPECT_EQ(traj.status, FlowStatus::Converged);
    EXPECT_EQ(traj.accepted_steps, 0);
    ASSERT_EQ(traj.samples.size(), 1u);
    EXPECT_EQ(traj.final_metric, PLMetric::uniform(tri, 1.0));
    if (alpha == 2.0) {
      const auto check = conservation_check(traj);
      EXPECT_EQ(check.V_drift, 0.0);
      EXPECT_EQ(check.E_monotone_violation, 0.0);
    }
  }
}

TEST(Integrate, AdversarialStartDegenerates)
{
  const auto tri = build_16cell();
  Vector g = Vector::Ones(tri.num_edges());
  g[*tri.find_edge_key("A1-B1")] = 1.8;
  PLMetric g0(g);
  ASSERT_TRUE(is_admissible(tri, g0));
  FlowConfig cfg;
  cfg.t_max = 50.0;
  const auto traj = integrate(tri, g0, cfg);
  EXPECT_TRUE(traj.status == FlowStatus::Singular || traj.status == FlowStatus::StepUnderflow)
    << to_string(traj.status);
  EXPECT_TRUE(is_admissible(tri, traj.final_metric));
}

TEST(Integrate, LargeEdgeIsRejectedUpFront)
{
  // One edge x25 is outside the cone on the 16-cell; the start is refused.
  const auto tri = build_16cell();
  Vector g = Vector::Ones(tri.num_edges());
  g[0] = 25.0;
  EXPECT_THROW(integrate(tri, PLMetric(g), FlowConfig{}), InadmissibleError);
}

TEST(Integrate, UnnormalizedShrinksUntilSingular)
{
  const auto tri = build_16cell();
  FlowConfig cfg;
  cfg.normalized = false;
  cfg.t_max = 1.0;
  const auto traj = integrate(tri, PLMetric::uniform(tri, 1.0), cfg);
  EXPECT_EQ(traj.status, FlowStatus::Singular);
  // g(t) = 1 - 2 R t exactly: collapse at t = 1 / (2R).
  EXPECT_NEAR(traj.samples.back().t, 1.0 / (2 * kR), 1e-6);
  const auto & last = traj.samples.back();
  EXPECT_NEAR(last.g[0], 1.0 - 2.0 * kR * last.t, 1e-9);
  EXPECT_THROW(conservation_check(traj), std::invalid_argument);
}

TEST(Integrate, SamplesIncreaseAndStayAdmissible)
{
  const auto tri = build_16cell();
  FlowConfig cfg;
  cfg.t_max = 0.2;
  cfg.record_every = 3;
  const auto traj = integrate(tri, small_perturbation(tri, 9, 0.05), cfg);
  ASSERT_GE(traj.samples.size(), 2u);
  for (std::size_t k = 1; k < traj.samples.size(); ++k) {
    EXPECT_GT(traj.samples[k].t, traj.samples[k - 1].t);
  }
  for (const auto & s : traj.samples) {
    EXPECT_TRUE(is_admissible(tri, PLMetric(s.g)));
  }
  if (traj.status == FlowStatus::MaxTimeReached) {
    EXPECT_EQ(traj.samples.back().t, cfg.t_max);
  }
}

TEST(Integrate, ConservationOnShortRun)
{
  const auto tri = build_16cell();
  FlowConfig cfg;
  cfg.t_max = 0.2;
  const auto traj = integrate(tri, small_perturbation(tri, 10, 0.05), cfg);
  ASSERT_EQ(traj.status, FlowStatus::MaxTimeReached);
  const auto check = conservation_check(traj);
  EXPECT_LE(check.V_drift, 1e-6);
  EXPECT_LE(check.E_monotone_violation, 1e-8);
  EXPECT_LT(traj.samples.back().E, traj.samples.front().E);
}

TEST(Integrate, Deterministic)
{
  const auto tri = build_16cell();
  FlowConfig cfg;
  cfg.t_max = 0.1;
  const auto g0 = small_perturbation(tri, 11, 0.05);
  const auto a = integrate(tri, g0, cfg);
  const auto b = integrate(tri, g0, cfg);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    EXPECT_EQ(a.samples[k].t, b.samples[k].t);
    EXPECT_EQ(a.samples[k].g, b.samples[k].g);
  }
  EXPECT_EQ(trajectory_to_csv(a, tri), trajectory_to_csv(b, tri));
}

TEST(Integrate, ScalingCommutesAtMatchedTimes)
{
  // The normalized right-hand side is invariant under g -> c g, so c g(t)
  // solves the flow at time c t.
  const auto tri = build_16cell();
  const auto g0 = small_perturbation(tri, 12, 0.05);
  const double c = 4.0;
  for (double T : {0.05, 0.2}) {
    FlowConfig cfg;
    cfg.t_max = T;
    cfg.step_tol = 1e-11;
    const auto base = integrate(tri, g0, cfg);
    cfg.t_max = c * T;
    const auto scaled = integrate(tri, scale(g0, c), cfg);
    ASSERT_EQ(base.status, FlowStatus::MaxTimeReached);
    ASSERT_EQ(scaled.status, FlowStatus::MaxTimeReached);
    const Vector expected = c * base.final_metric.squared();
    const double rel = (scaled.final_metric.squared() - expected).cwiseAbs().maxCoeff() / expected.cwiseAbs().maxCoeff();
    EXPECT_LE(rel, 1e-6) << "T = " << T;
  }
}

TEST(Integrate, AlphaOneFlowPreservesItsOwnVolume)
{
  const auto tri = build_16cell();
  FlowConfig cfg;
  cfg.alpha = 1.0;
  cfg.t_max = 0.1;
  const auto traj = integrate(tri, small_perturbation(tri, 13, 0.05), cfg);
  ASSERT_EQ(traj.status, FlowStatus::MaxTimeReached);
  // du/dt = 2 lambda_1 u - 2R with u = l keeps sum l^2 fixed.
  const double v0 = traj.samples.front().g.sum();
  const double v1 = traj.samples.back().g.sum();
  EXPECT_NEAR(v1, v0, 1e-7 * v0);
}

TEST(Integrate, RefusesBoundaryComplex)
{
  const auto tri = build_from_tetrahedra({"A", "B", "C", "D"}, {{"A", "B", "C", "D"}});
  EXPECT_THROW(integrate(tri, PLMetric::uniform(tri, 1.0), FlowConfig{}), BoundaryError);
}

TEST(Csv, HeaderAndRows)
{
  const auto tri = build_16cell();
  FlowConfig cfg;
  cfg.t_max = 0.01;
  const auto traj = integrate(tri, small_perturbation(tri, 14, 0.05), cfg);
  const std::string csv = trajectory_to_csv(traj, tri);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("t,A1-B1,A1-B2,", 0), 0u);
  EXPECT_NE(header.find(",C2-D2,E,sumL3,lambda,Q,residual"), std::string::npos);
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 29);
  }
  EXPECT_EQ(rows, traj.samples.size());
}

TEST(Csv, ShortestRoundTrip)
{
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  const double x = 1.3593476378164873;
  EXPECT_EQ(std::stod(format_double(x)), x);
}
