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

#include "regge/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "regge/complex.hpp"
#include "regge/curvature.hpp"
#include "regge/errors.hpp"
#include "regge/flow.hpp"
#include "regge/metric.hpp"
#include "regge/random.hpp"
#include "regge/stability.hpp"

namespace regge::cli
{

namespace
{

using json = nlohmann::ordered_json;

class IoError : public Error
{
public:
  using Error::Error;
};

std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write '" + path + "'");
  }
  out << text;
  if (!out) {
    throw IoError("write failed for '" + path + "'");
  }
}

struct InputOptions
{
  std::string triangulation;
  std::string builtin;
  std::string metric;
  std::optional<double> uniform;

  void add_to(CLI::App & cmd)
  {
    auto * tri = cmd.add_option("--triangulation", triangulation, "Triangulation JSON file");
    auto * bi = cmd.add_option("--builtin", builtin, "Built-in triangulation (16cell)");
    tri->excludes(bi);
    auto * m = cmd.add_option("--metric", metric, "Metric JSON file (squared lengths)");
    auto * u = cmd.add_option("--uniform", uniform, "Same squared length on every edge");
    m->excludes(u);
  }

  Triangulation3 load_triangulation() const
  {
    if (!builtin.empty()) {
      if (builtin != "16cell") {
        throw IoError("unknown builtin '" + builtin + "' (available: 16cell)");
      }
      return build_16cell();
    }
    if (triangulation.empty()) {
      throw IoError("one of --triangulation or --builtin is required");
    }
    return parse_triangulation(read_file(triangulation));
  }

  PLMetric load_metric(const Triangulation3 & tri) const
  {
    if (uniform) {
      if (!(*uniform > 0.0)) {
        throw MetricError("--uniform must be positive");
      }
      return PLMetric::uniform(tri, *uniform);
    }
    if (metric.empty()) {
      throw IoError("one of --metric or --uniform is required");
    }
    return parse_metric(read_file(metric), tri);
  }

  json to_json() const
  {
    json j;
    if (!builtin.empty()) {
      j["builtin"] = builtin;
    } else {
      j["triangulation"] = triangulation;
    }
    if (uniform) {
      j["uniform"] = *uniform;
    } else {
      j["metric"] = metric;
    }
    return j;
  }
};

json metric_json(const PLMetric & g, const Triangulation3 & tri)
{
  json edges = json::object();
  for (Index e = 0; e < tri.num_edges(); ++e) {
    edges[tri.edge_key(e)] = g[e];
  }
  return edges;
}

/// Manifest written next to outputs; replaying its argv reproduces them.
void write_manifest(
  const std::string & path, const std::string & command, const std::vector<std::string> & args, json inputs,
  json config, std::optional<std::uint64_t> seed, const std::vector<std::string> & outputs)
{
  json m;
  m["tool"] = "regge";
  m["version"] = kVersion;
  m["command"] = command;
  m["argv"] = args;
  m["inputs"] = std::move(inputs);
  m["config"] = std::move(config);
  if (seed) {
    m["seed"] = *seed;
  } else {
    m["seed"] = nullptr;
  }
  m["outputs"] = outputs;
  write_file(path, m.dump(2) + "\n");
}

std::string manifest_path_for(const std::string & manifest, const std::string & out)
{
  if (!manifest.empty()) {
    return manifest;
  }
  return out.empty() ? std::string() : out + ".manifest.json";
}

void emit(std::ostream & out, const std::string & path, const std::string & text)
{
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

std::string inadmissible_diagnostic(const Triangulation3 & tri, const PLMetric & g, const InadmissibleError & ex)
{
  std::ostringstream msg;
  msg << ex.what() << "\n";
  if (ex.tet() >= 0 && ex.tet() < tri.num_tets()) {
    msg << "  first failing tetrahedron #" << ex.tet() << ", squared lengths:";
    for (Index e : tri.tet_edges(ex.tet())) {
      msg << " " << tri.edge_key(e) << "=" << format_double(g[e]);
    }
    msg << "\n";
  }
  return msg.str();
}

}  // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Discrete Ricci curvature, Regge action and discrete Ricci flow on triangulated 3-manifolds", "regge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  InputOptions inputs;
  std::string out_path;
  std::string manifest;

  // curvature
  double curv_alpha = 2.0;
  auto * curvature = app.add_subcommand("curvature", "Curvature report for a metric");
  inputs.add_to(*curvature);
  curvature->add_option("--alpha", curv_alpha, "Order of lambda_alpha / Q_alpha")->capture_default_str();
  curvature->add_option("--out", out_path, "Write the JSON report here instead of stdout");
  curvature->add_option("--manifest", manifest, "Manifest path (default <out>.manifest.json)");

  // flow
  FlowConfig cfg;
  bool unnormalized = false;
  std::string final_path;
  double perturb = 0.0;
  std::uint64_t seed = 0;
  auto * flow = app.add_subcommand("flow", "Integrate a discrete Ricci flow");
  inputs.add_to(*flow);
  flow->add_flag("--normalized", "Normalized flow (default)");
  flow->add_flag("--unnormalized", unnormalized, "Unnormalized flow dg/dt = -2R");
  flow->add_option("--alpha", cfg.alpha, "Flow variable u = l^alpha")->capture_default_str();
  flow->add_option("--dt", cfg.dt_init, "Initial step")->capture_default_str();
  flow->add_option("--dt-min", cfg.dt_min, "Smallest step before giving up")->capture_default_str();
  flow->add_option("--t-max", cfg.t_max, "End time")->capture_default_str();
  flow->add_option("--tol", cfg.conv_tol, "Einstein residual for convergence")->capture_default_str();
  flow->add_option("--step-tol", cfg.step_tol, "Relative step-doubling error")->capture_default_str();
  flow->add_option("--record-every", cfg.record_every, "Record every k-th accepted step")->capture_default_str();
  flow->add_option("--perturb", perturb, "Log-perturb the start by U[-s, s] per edge")->capture_default_str();
  flow->add_option("--seed", seed, "Seed for --perturb")->capture_default_str();
  flow->add_option("--out", out_path, "Trajectory CSV path");
  flow->add_option("--final", final_path, "Final-state JSON path (default stdout)");
  flow->add_option("--manifest", manifest, "Manifest path (default <out>.manifest.json)");

  // stability
  double fd_step = kDefaultFdStep;
  auto * stability = app.add_subcommand("stability", "Lichnerowicz spectrum and stability test at an Einstein metric");
  stability->set_help_flag("--help", "Print this help message and exit");
  inputs.add_to(*stability);
  stability->add_option("--h", fd_step, "Relative finite-difference step")->capture_default_str();
  stability->add_option("--out", out_path, "Write the JSON report here instead of stdout");
  stability->add_option("--manifest", manifest, "Manifest path (default <out>.manifest.json)");

  // minimize-q
  int seeds = 1;
  double sigma = 0.3;
  int workers = 0;
  MinimizeOptions mopts;
  auto * minq = app.add_subcommand("minimize-q", "Descend the normalized action from random starts");
  inputs.add_to(*minq);
  minq->add_option("--seeds", seeds, "Number of random starts")->capture_default_str();
  minq->add_option("--seed", seed, "Base seed")->capture_default_str();
  minq->add_option("--sigma", sigma, "Log-perturbation half-width (0: start at the given metric)")
    ->capture_default_str();
  minq->add_option("--max-iters", mopts.max_iters, "Iteration cap per start")->capture_default_str();
  minq->add_option("--tol", mopts.tol, "Gradient tolerance relative to max(|Q|,1)")->capture_default_str();
  minq->add_option("--workers", workers, "Worker threads (0: hardware concurrency)")->capture_default_str();
  minq->add_option("--out", out_path, "Write the JSON summary here instead of stdout");
  minq->add_option("--manifest", manifest, "Manifest path (default <out>.manifest.json)");

  // emit-builtin
  std::string builtin_name = "16cell";
  auto * emitb = app.add_subcommand("emit-builtin", "Write a built-in triangulation as JSON");
  emitb->add_option("name", builtin_name, "Built-in name (16cell)")->capture_default_str();
  emitb->add_option("--out", out_path, "Output path (default stdout)");

  // replay
  std::string replay_path;
  auto * replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("manifest", replay_path, "Manifest JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError & ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Triangulation3 * tri_for_diag = nullptr;
  std::optional<Triangulation3> tri;
  std::optional<PLMetric> g;

  try {
    if (*replay) {
      const auto m = nlohmann::json::parse(read_file(replay_path));
      if (!m.contains("argv") || !m["argv"].is_array()) {
        throw IoError("manifest has no argv array");
      }
      return run(m["argv"].get<std::vector<std::string>>(), out, err);
    }

    if (*emitb) {
      if (builtin_name != "16cell") {
        throw IoError("unknown builtin '" + builtin_name + "' (available: 16cell)");
      }
      emit(out, out_path, triangulation_to_json(build_16cell()));
      return kOk;
    }

    tri = inputs.load_triangulation();
    tri_for_diag = &*tri;
    g = inputs.load_metric(*tri);

    if (*curvature) {
      require_admissible(*tri, *g);
      const auto rep = functionals(*tri, *g, curv_alpha);
      const auto res = einstein_residual(rep.R, *g, curv_alpha);
      emit(out, out_path, report_to_json(rep, *tri, &res));
      if (auto mp = manifest_path_for(manifest, out_path); !mp.empty()) {
        json c;
        c["alpha"] = curv_alpha;
        write_manifest(mp, "curvature", args, inputs.to_json(), c, std::nullopt, {out_path});
      }
      return kOk;
    }

    if (*flow) {
      cfg.normalized = !unnormalized;
      cfg.validate();
      std::optional<std::uint64_t> used_seed;
      PLMetric start = *g;
      if (perturb > 0.0) {
        SplitMix64 rng(seed);
        start = log_perturb(*g, perturb, rng);
        used_seed = seed;
      }
      g = start;
      const auto traj = integrate(*tri, start, cfg);
      if (!out_path.empty()) {
        write_file(out_path, trajectory_to_csv(traj, *tri));
      }
      const auto & last = traj.samples.back();
      json fin;
      fin["status"] = std::string(to_string(traj.status));
      fin["t"] = last.t;
      fin["residual"] = last.residual;
      fin["lambda"] = last.lambda_alpha;
      fin["Q"] = last.Q_alpha;
      fin["E"] = last.E;
      fin["sumL3"] = last.sum_l3;
      fin["accepted_steps"] = traj.accepted_steps;
      fin["rejected_steps"] = traj.rejected_steps;
      fin["min_volume_ratio"] = traj.min_volume_ratio;
      if (cfg.normalized && cfg.alpha == 2.0) {
        const auto cons = conservation_check(traj);
        fin["V_drift"] = cons.V_drift;
        fin["E_monotone_violation"] = cons.E_monotone_violation;
      }
      fin["initial_metric"] = metric_json(start, *tri);
      fin["final_metric"] = metric_json(traj.final_metric, *tri);
      emit(out, final_path, fin.dump(2) + "\n");

      const std::string anchor = out_path.empty() ? final_path : out_path;
      if (auto mp = manifest_path_for(manifest, anchor); !mp.empty()) {
        json c;
        c["alpha"] = cfg.alpha;
        c["normalized"] = cfg.normalized;
        c["dt_init"] = cfg.dt_init;
        c["dt_min"] = cfg.dt_min;
        c["t_max"] = cfg.t_max;
        c["conv_tol"] = cfg.conv_tol;
        c["step_tol"] = cfg.step_tol;
        c["record_every"] = cfg.record_every;
        c["safety"] = cfg.safety;
        c["perturb"] = perturb;
        std::vector<std::string> outs;
        for (const auto & p : {out_path, final_path}) {
          if (!p.empty()) {
            outs.push_back(p);
          }
        }
        write_manifest(mp, "flow", args, inputs.to_json(), c, used_seed, outs);
      }
      return kOk;
    }

    if (*stability) {
      const auto rep = stability_test(*tri, *g, fd_step);
      emit(out, out_path, stability_to_json(rep, *tri));
      if (auto mp = manifest_path_for(manifest, out_path); !mp.empty()) {
        json c;
        c["h"] = fd_step;
        c["gate"] = kStabilityGate;
        write_manifest(mp, "stability", args, inputs.to_json(), c, std::nullopt, {out_path});
      }
      return kOk;
    }

    if (*minq) {
      if (seeds < 1) {
        throw IoError("--seeds must be >= 1");
      }
      require_admissible(*tri, *g);
      const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
      const int n_workers = std::clamp(workers > 0 ? workers : static_cast<int>(hw), 1, seeds);

      struct Run
      {
        std::uint64_t stream = 0;
        MinimizeResult result;
      };
      std::vector<Run> runs(static_cast<std::size_t>(seeds));
      auto work = [&](int first) {
        for (int k = first; k < seeds; k += n_workers) {
          auto & r = runs[static_cast<std::size_t>(k)];
          r.stream = stream_seed(seed, static_cast<std::uint64_t>(k));
          SplitMix64 rng(r.stream);
          const PLMetric start = sigma > 0.0 ? sample_admissible(*tri, *g, sigma, rng) : *g;
          r.result = minimize_Q(*tri, start, mopts);
        }
      };
      std::vector<std::future<void>> pool;
      for (int w = 0; w < n_workers; ++w) {
        pool.push_back(std::async(std::launch::async, work, w));
      }
      for (auto & f : pool) {
        f.get();
      }

      json doc;
      json list = json::array();
      std::vector<double> qs;
      std::size_t best = 0;
      for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto & r = runs[k].result;
        json item;
        item["index"] = k;
        item["stream_seed"] = runs[k].stream;
        item["Q_start"] = r.Q_start;
        item["Q_min"] = r.Q_min;
        item["status"] = std::string(to_string(r.status));
        item["converged"] = r.converged;
        item["iterations"] = r.iterations;
        item["grad_norm"] = r.grad_norm;
        list.push_back(std::move(item));
        qs.push_back(r.Q_min);
        if (r.Q_min < runs[best].result.Q_min) {
          best = k;
        }
      }
      std::vector<double> sorted = qs;
      std::sort(sorted.begin(), sorted.end());
      const std::size_t n = sorted.size();
      const double median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
      doc["seeds"] = seeds;
      doc["min_Q"] = sorted.front();
      doc["median_Q"] = median;
      doc["boundary_escapes"] = std::count_if(runs.begin(), runs.end(), [](const Run & r) {
        return r.result.status == MinimizeStatus::BoundaryEscape;
      });
      doc["runs"] = std::move(list);
      doc["best"] = {{"index", best}, {"Q_min", runs[best].result.Q_min},
                     {"metric", metric_json(runs[best].result.g_min, *tri)}};
      emit(out, out_path, doc.dump(2) + "\n");
      if (auto mp = manifest_path_for(manifest, out_path); !mp.empty()) {
        json c;
        c["seeds"] = seeds;
        c["sigma"] = sigma;
        c["max_iters"] = mopts.max_iters;
        c["tol"] = mopts.tol;
        c["armijo"] = mopts.armijo;
        c["shrink"] = mopts.shrink;
        c["boundary_ratio"] = mopts.boundary_ratio;
        write_manifest(mp, "minimize-q", args, inputs.to_json(), c, seed, {out_path});
      }
      return kOk;
    }
  } catch (const InadmissibleError & ex) {
    if (tri_for_diag != nullptr && g) {
      err << "error: " << inadmissible_diagnostic(*tri_for_diag, *g, ex);
    } else {
      err << "error: " << ex.what() << "\n";
    }
    return kInadmissible;
  } catch (const MetricError & ex) {
    err << "error: " << ex.what() << "\n";
    return kInadmissible;
  } catch (const BoundaryError & ex) {
    err << "error: " << ex.what() << "\n";
    return kBoundary;
  } catch (const GateError & ex) {
    err << "error: " << ex.what() << "\nmeasured residual: " << format_double(ex.residual()) << "\n";
    return kGate;
  } catch (const std::exception & ex) {
    err << "error: " << ex.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace regge::cli
