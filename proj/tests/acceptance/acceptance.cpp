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

// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only (exit 1 on FAIL)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "regge/complex.hpp"
#include "regge/curvature.hpp"
#include "regge/flow.hpp"
#include "regge/geometry.hpp"
#include "regge/metric.hpp"
#include "regge/random.hpp"
#include "regge/stability.hpp"

using namespace regge;

namespace
{

struct Outcome
{
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string & what)
  {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel_diff(const Vector & a, const Vector & b)
{
  return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
}

PLMetric fixed_point_one(const Triangulation3 & tri)
{
  Vector block(24);
  block << Vector::Constant(12, 10.0095), Vector::Constant(12, 6.9633);
  return metric_from_block_order(tri, block);
}

PLMetric fixed_point_two(const Triangulation3 & tri)
{
  Vector block(24);
  block << Vector::Constant(8, 58.7223), Vector::Constant(4, 64.9735), Vector::Constant(4, 52.1413),
    Vector::Constant(8, 58.7223);
  return metric_from_block_order(tri, block);
}

std::vector<PLMetric> random_metrics(const Triangulation3 & tri, int n, std::uint64_t seed)
{
  SplitMix64 rng(seed);
  const auto one = PLMetric::uniform(tri, 1.0);
  std::vector<PLMetric> out;
  for (int k = 0; k < n; ++k) {
    out.push_back(sample_admissible(tri, one, 0.3, rng));
  }
  return out;
}

// Least-squares slope of log(residual) against t over the last half of the
// samples.
double tail_log_slope(const FlowTrajectory & traj)
{
  const std::size_t n = traj.samples.size();
  double st = 0, sy = 0, stt = 0, sty = 0;
  int m = 0;
  for (std::size_t k = n / 2; k < n; ++k) {
    const double r = traj.samples[k].residual;
    if (!(r > 0.0)) {
      continue;
    }
    const double t = traj.samples[k].t;
    const double y = std::log(r);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
    ++m;
  }
  if (m < 2) {
    return std::nan("");
  }
  return (m * sty - st * sy) / (m * stt - st * st);
}

void criterion_1(Outcome & o)
{
  const auto t0 = Clock::now();
  const auto tri = build_16cell();
  const Vector R = ricci(tri, PLMetric::uniform(tri, 1.0));
  const double elapsed = seconds_since(t0);
  const double expected = 2 * kPi - 4 * std::acos(1.0 / 3.0);
  const double err = (R.array() - expected).abs().maxCoeff();
  o.detail << "edges=" << R.size() << " max|R - closed form|=" << err << " runtime=" << elapsed << "s";
  o.require(R.size() == 24, "24 edges");
  o.require(err <= 1e-10, "abs error <= 1e-10");
  o.require(elapsed < 1.0, "runtime < 1 s");
}

void einstein_check(Outcome & o, const PLMetric & g, const Triangulation3 & tri)
{
  const bool adm = is_admissible(tri, g);
  o.require(adm, "admissible");
  if (!adm) {
    return;
  }
  const auto res = einstein_residual(tri, g, 2.0);
  o.detail << "sup_norm=" << res.sup_norm << " lambda=" << res.lambda_alpha;
  o.require(res.sup_norm <= 1e-3, "sup-norm Einstein residual <= 1e-3");
}

void criterion_2(Outcome & o)
{
  const auto tri = build_16cell();
  einstein_check(o, fixed_point_one(tri), tri);
}

void criterion_3(Outcome & o)
{
  const auto tri = build_16cell();
  einstein_check(o, fixed_point_two(tri), tri);
}

void criterion_4(Outcome & o)
{
  const auto tri = build_16cell();
  const auto t0 = Clock::now();
  SplitMix64 rng(20260501);
  const auto g0 = log_perturb(fixed_point_one(tri), 0.05, rng);
  FlowConfig cfg;
  const auto traj = integrate(tri, g0, cfg);
  const double elapsed = seconds_since(t0);
  const auto cons = conservation_check(traj);
  const double slope = tail_log_slope(traj);
  const auto & last = traj.samples.back();
  o.detail << "status=" << to_string(traj.status) << " t=" << last.t << " residual=" << last.residual
           << " V_drift=" << cons.V_drift << " E_rise=" << cons.E_monotone_violation
           << " log-residual slope=" << slope << " min_volume_ratio=" << traj.min_volume_ratio
           << " runtime=" << elapsed << "s";
  o.require(traj.status == FlowStatus::Converged, "status Converged");
  o.require(last.residual <= 1e-8, "final residual <= 1e-8");
  o.require(cons.V_drift <= 1e-6, "sum l^3 drift <= 1e-6");
  o.require(cons.E_monotone_violation <= 1e-8, "E non-increasing within 1e-8");
  o.require(slope < 0.0, "log-residual eventually decreasing");
  o.require(elapsed < 30.0, "runtime < 30 s");
}

void polish(Outcome & o, const char * name, const Triangulation3 & tri, const PLMetric & g0)
{
  FlowConfig cfg;
  const auto traj = integrate(tri, g0, cfg);
  const Vector & a = g0.squared();
  const Vector & b = traj.final_metric.squared();
  const double move = ((b - a).array() / a.array()).abs().maxCoeff();
  o.detail << name << ": status=" << to_string(traj.status) << " residual=" << traj.samples.back().residual
           << " max rel move=" << move << "; ";
  o.require(traj.status == FlowStatus::Converged && traj.samples.back().residual <= 1e-8,
    std::string(name) + " residual <= 1e-8");
  o.require(move < 5e-3, std::string(name) + " entries move < 0.5%");
}

void criterion_5(Outcome & o)
{
  const auto tri = build_16cell();
  polish(o, "fixed point 1", tri, fixed_point_one(tri));
  polish(o, "fixed point 2", tri, fixed_point_two(tri));
}

void criterion_6(Outcome & o)
{
  const auto tri = build_16cell();
  double worst = 0.0;
  for (const auto & g : random_metrics(tri, 100, 6)) {
    const Matrix L = jacobian_R_wrt_l(tri, g);
    const Vector R = ricci(tri, g);
    worst = std::max(worst, (g.lengths().transpose() * L).cwiseAbs().maxCoeff() / R.cwiseAbs().maxCoeff());
  }
  o.detail << "max |l^T L|_inf / |R|_inf=" << worst << " over 100 metrics";
  o.require(worst <= 1e-6, "Schlafli residual <= 1e-6");
}

void criterion_7(Outcome & o)
{
  // Same sample as criterion 6.
  const auto tri = build_16cell();
  double worst_e = 0.0;
  double worst_q = 0.0;
  for (const auto & g : random_metrics(tri, 100, 6)) {
    const Vector R = ricci(tri, g);
    worst_e = std::max(worst_e, rel_diff(action_gradient_fd(tri, g), R));

    const Vector closed = grad_Q(tri, g);
    Vector fd(g.size());
    for (Index e = 0; e < g.size(); ++e) {
      Vector up = g.squared();
      Vector dn = g.squared();
      const double h = kDefaultFdStep * g[e];
      up[e] += h;
      dn[e] -= h;
      fd[e] = (normalized_action(tri, PLMetric(up)) - normalized_action(tri, PLMetric(dn))) / (2 * h);
    }
    worst_q = std::max(worst_q, rel_diff(fd, closed));
  }
  o.detail << "dE/dl vs R: " << worst_e << "; grad_Q vs FD: " << worst_q;
  o.require(worst_e <= 1e-6, "dE/dl = R to 1e-6");
  o.require(worst_q <= 1e-6, "grad_Q = FD to 1e-6");
}

void criterion_8(Outcome & o)
{
  const auto tri = build_16cell();
  const auto one = PLMetric::uniform(tri, 1.0);
  SplitMix64 rng(8);
  int convex_fail = 0;
  int cone_fail = 0;
  double worst_det = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto g1 = sample_admissible(tri, one, 0.3, rng);
    const auto g2 = sample_admissible(tri, one, 0.3, rng);
    const double t = rng.uniform();
    convex_fail += !is_admissible(tri, PLMetric(t * g1.squared() + (1.0 - t) * g2.squared()));
    const double c = std::pow(10.0, rng.uniform(-3.0, 3.0));
    cone_fail += !is_admissible(tri, scale(g1, c));

    const auto vals = g1.tet_values(tri, static_cast<Index>(k % tri.num_tets()));
    const double v = tet_volume_cm(vals);
    const double det = gram_matrix(vals).determinant();
    worst_det = std::max(worst_det, std::abs(det - 36.0 * v * v) / (36.0 * v * v));
  }
  o.detail << "convex failures=" << convex_fail << "/1000 cone failures=" << cone_fail
           << "/1000 max rel |det Gram - 36 V^2|=" << worst_det;
  o.require(convex_fail == 0, "all convex combinations admissible");
  o.require(cone_fail == 0, "all scalings admissible");
  o.require(worst_det <= 1e-10, "Gram determinant consistency 1e-10");
}

void criterion_9(Outcome & o)
{
  const auto tri = build_16cell();
  double worst = 0.0;
  for (const auto & g : random_metrics(tri, 100, 9)) {
    const Vector R = ricci(tri, g);
    const Vector S = cooper_rivin(tri, g);
    for (Index v = 0; v < tri.num_vertices(); ++v) {
      double sum = 0.0;
      for (Index e : tri.vertex_edges(v)) {
        sum += R[e];
      }
      worst = std::max(worst, std::abs(S[v] - sum));
    }
  }
  o.detail << "max |S_cr - sum R|=" << worst << " over 100 metrics";
  o.require(worst <= 1e-10, "abs error <= 1e-10");
}

void criterion_10(Outcome & o)
{
  const auto tri = build_16cell();
  double worst = 0.0;
  for (const auto & g : random_metrics(tri, 20, 10)) {
    const auto base = functionals(tri, g);
    for (double c : {0.25, 4.0, 1e6}) {
      const auto rep = functionals(tri, scale(g, c));
      worst = std::max(worst, rel_diff(rep.R, base.R));
      worst = std::max(worst, rel_diff(rep.S_cr, base.S_cr));
      worst = std::max(worst, std::abs(rep.Q - base.Q) / std::abs(base.Q));
      worst = std::max(worst, std::abs(rep.lambda * c - base.lambda) / std::abs(base.lambda));
    }
  }
  o.detail << "max relative deviation=" << worst;
  o.require(worst <= 1e-10, "relative error <= 1e-10");
}

const std::vector<std::pair<const char *, std::function<void(Outcome &)>>> kCriteria = {
  {"16-cell trivial metric curvature", criterion_1},
  {"fixed point 1 Einstein residual", criterion_2},
  {"fixed point 2 Einstein residual", criterion_3},
  {"flow from perturbed fixed point 1", criterion_4},
  {"fixed point refinement by flow", criterion_5},
  {"Schlafli identity", criterion_6},
  {"gradient identities", criterion_7},
  {"admissible cone properties", criterion_8},
  {"Cooper-Rivin row-sum identity", criterion_9},
  {"scale invariance", criterion_10},
};

bool run_one(std::size_t n)
{
  Outcome o;
  try {
    kCriteria[n - 1].second(o);
  } catch (const std::exception & ex) {
    o.pass = false;
    o.detail << " [exception: " << ex.what() << "]";
  }
  std::printf("criterion %2zu %s: %s  %s\n", n, o.pass ? "PASS" : "FAIL", kCriteria[n - 1].first,
    o.detail.str().c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char ** argv)
{
  std::vector<std::size_t> which;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      const long n = std::strtol(argv[++i], nullptr, 10);
      if (n < 1 || n > static_cast<long>(kCriteria.size())) {
        std::fprintf(stderr, "criterion must be 1..%zu\n", kCriteria.size());
        return 2;
      }
      which.push_back(static_cast<std::size_t>(n));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (which.empty()) {
    for (std::size_t n = 1; n <= kCriteria.size(); ++n) {
      which.push_back(n);
    }
  }
  bool all = true;
  for (std::size_t n : which) {
    all = run_one(n) && all;
  }
  return all ? 0 : 1;
}
