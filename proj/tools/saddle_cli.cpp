// Copyright 2026 The saddle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <Eigen/QR>
#include <json.hpp>

#include "saddle/budget.hpp"
#include "saddle/certify.hpp"
#include "saddle/instance_file.hpp"
#include "saddle/report.hpp"
#include "saddle/sampler.hpp"
#include "saddle/solver.hpp"

namespace {

using saddle::Vector;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUncertified = 2;
constexpr int kExitEstimateOnly = 3;

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw saddle::ConfigError("cannot write '" + path + "'");
  out << body;
}

// "0.5,0.5" inline, or "@file" holding numbers separated by commas or
// whitespace.
Vector parse_point(const std::string& arg, const std::string& side) {
  std::string body = arg;
  if (!body.empty() && body.front() == '@') {
    std::ifstream in(body.substr(1));
    if (!in) throw saddle::ConfigError(side + ": cannot read point file '" + body.substr(1) + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  for (char& ch : body) {
    if (ch == ',' || ch == '[' || ch == ']') ch = ' ';
  }
  std::istringstream in(body);
  std::vector<double> vals;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw saddle::ConfigError(side + ": '" + tok + "' is not a number");
    }
  }
  return Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

// Original coordinates to body coordinates through the stored embedding.
Vector to_body(const saddle::AffineMap& map, const saddle::ConvexBody& body,
               const Vector& p, const std::string& side) {
  if (p.size() != map.output_dimension()) {
    throw saddle::DimensionError(side + ": point has " + std::to_string(p.size()) +
                                 " coordinates, expected " +
                                 std::to_string(map.output_dimension()));
  }
  Vector z = Vector::Zero(map.input_dimension());
  if (map.input_dimension() > 0) {
    z = map.linear.colPivHouseholderQr().solve(p - map.offset);
  }
  const double residual = (map.apply(z) - p).lpNorm<Eigen::Infinity>();
  if (residual > 1e-9 * std::max(1.0, p.lpNorm<Eigen::Infinity>())) {
    throw saddle::GeometryError(side + ": point violates the equality constraints of " +
                                (side == "x" ? "X" : "Y"));
  }
  if (!body.contains(z)) {
    throw saddle::GeometryError(side + ": point lies outside " + (side == "x" ? "X" : "Y"));
  }
  return z;
}

struct SolveArgs {
  std::string instance;
  double epsilon = 0.1;
  std::optional<std::uint64_t> seed;
  std::optional<int> walk_steps;
  std::optional<std::int64_t> t_override;
  int max_restarts = 4;
  std::string trace;
  std::string result;
  bool timing = false;
  bool no_early_stop = false;
  int phi_grid = 0;
};

int cmd_solve(const SolveArgs& a) {
  const saddle::Instance inst = saddle::build_instance(saddle::load_instance_file(a.instance));
  saddle::SolverConfig cfg;
  cfg.epsilon = a.epsilon;
  cfg.seed = a.seed.value_or(fresh_seed());
  cfg.walk_steps = a.walk_steps;
  cfg.t_override = a.t_override;
  cfg.max_restarts = a.max_restarts;
  cfg.early_stop = !a.no_early_stop;
  cfg.phi_grid = a.phi_grid;
  const saddle::Certifier* cert = inst.certifier ? &*inst.certifier : nullptr;
  const saddle::SolveReport report = saddle::solve(inst.x_body, inst.y_body, inst.payoff, cfg, cert);

  saddle::RecordOptions opts;
  opts.instance_path = a.instance;
  opts.seed_generated = !a.seed.has_value();
  opts.include_timing = a.timing;
  const nlohmann::json rec = saddle::result_record(inst, cfg, report, opts);
  if (!a.result.empty()) write_file(a.result, rec.dump(2) + "\n");
  if (!a.trace.empty()) write_file(a.trace, saddle::trace_csv(report));

  const auto& c = report.certificate;
  std::cout << "status: " << (c.certified ? "certified" : "uncertified") << "\n"
            << "gap: " << c.gap << " (" << saddle::to_string(c.method) << ")\n"
            << "epsilon: " << cfg.epsilon << "\n"
            << "seed: " << cfg.seed << "\n"
            << "runs: " << c.runs_used << "\n"
            << "iterations: " << c.cost.iterations << " of budget " << report.budget.T << "\n"
            << "membership calls: " << c.cost.membership_calls_x << " + "
            << c.cost.membership_calls_y << "\n";
  if (a.result.empty()) std::cout << rec.dump(2) << "\n";
  return c.certified ? kExitOk : kExitUncertified;
}

struct CertifyArgs {
  std::string instance;
  std::string x;
  std::string y;
  std::optional<std::uint64_t> seed;
  int budget = 64;
  double exponent_scale = 0.0;
};

int cmd_certify(const CertifyArgs& a) {
  const saddle::Instance inst = saddle::build_instance(saddle::load_instance_file(a.instance));
  const Vector x = to_body(inst.embed_x, inst.x_body, parse_point(a.x, "x"), "x");
  const Vector y = to_body(inst.embed_y, inst.y_body, parse_point(a.y, "y"), "y");
  if (inst.certifier) {
    const double gap = inst.certifier->gap(x, y);
    std::cout << "gap: " << gap << "\nmethod: " << saddle::to_string(inst.certifier->method)
              << "\n";
    return kExitOk;
  }
  saddle::SampledGapConfig sg;
  sg.budget = a.budget;
  sg.exponent_scale = a.exponent_scale;
  sg.seed = a.seed.value_or(fresh_seed());
  const double gap = saddle::gap_sampled(inst.x_body, inst.y_body, inst.payoff, x, y, sg);
  std::cout << "gap: " << gap << "\nmethod: "
            << saddle::to_string(saddle::CertMethod::sampled_estimate) << "\nseed: " << sg.seed
            << "\n";
  return kExitEstimateOnly;
}

struct SampleArgs {
  std::string instance;
  std::string side = "x";
  int count = 1000;
  double exponent_scale = 0.0;
  std::optional<std::uint64_t> seed;
  std::optional<int> walk_steps;
  std::string output;
};

int cmd_sample(const SampleArgs& a) {
  const saddle::Instance inst = saddle::build_instance(saddle::load_instance_file(a.instance));
  if (a.count < 0) throw saddle::ConfigError("count must be nonnegative");
  const bool is_x = a.side == "x";
  const saddle::ConvexBody& body = is_x ? inst.x_body : inst.y_body;
  const saddle::PayoffFunction f = inst.payoff;
  const Vector xc = inst.x_body.inner_center();
  const Vector yc = inst.y_body.inner_center();
  saddle::DensitySpec spec = saddle::uniform_density(body);
  if (a.exponent_scale != 0.0) {
    const double s = a.exponent_scale;
    if (is_x) {
      spec.exponent = [f, yc, s](const saddle::VectorRef& xi) { return -s * f.evaluate(xi, yc); };
    } else {
      spec.exponent = [f, xc, s](const saddle::VectorRef& eta) { return s * f.evaluate(xc, eta); };
    }
  }
  const std::uint64_t seed = a.seed.value_or(fresh_seed());
  const int steps = a.walk_steps.value_or(saddle::default_walk_steps(body.dimension()));
  if (steps < 1) throw saddle::ConfigError("walk length must be at least 1");
  saddle::HitAndRunWalker walker(spec, body.inner_center(), seed);
  walker.advance(steps);

  std::ostringstream out;
  out.precision(17);
  for (int i = 0; i < body.dimension(); ++i) out << (i ? "," : "") << "z" << i;
  out << "\n";
  for (int k = 0; k < a.count; ++k) {
    const Vector& p = walker.advance(steps);
    for (Eigen::Index i = 0; i < p.size(); ++i) out << (i ? "," : "") << p(i);
    out << "\n";
  }
  if (a.output.empty()) std::cout << out.str();
  else write_file(a.output, out.str());
  if (!a.seed) std::cerr << "seed: " << seed << "\n";
  return kExitOk;
}

struct DiagnoseArgs {
  std::string instance;
  double epsilon = 0.1;
};

int cmd_diagnose(const DiagnoseArgs& a) {
  const saddle::InstanceFile file = saddle::load_instance_file(a.instance);
  const saddle::Instance inst = saddle::build_instance(file);
  const saddle::ProductBody z(inst.x_body, inst.y_body);
  const saddle::VolumeBounds vb = saddle::volume_bounds(z);
  nlohmann::json d;
  d["kind"] = inst.kind;
  auto side = [](const saddle::ConvexBody& b, const auto& verts) {
    nlohmann::json s = {{"dimension", b.dimension()},
                        {"inner_radius", b.inner_radius()},
                        {"outer_radius", b.outer_radius()}};
    s["vertices"] = verts ? nlohmann::json(verts->size()) : nlohmann::json(nullptr);
    return s;
  };
  d["x"] = side(inst.x_body, inst.x_vertices);
  d["y"] = side(inst.y_body, inst.y_vertices);
  d["width"] = inst.payoff.width_bound();
  d["log_volume_bounds"] = {vb.log_lower, vb.log_upper};
  d["certifier"] = inst.certifier ? std::string(saddle::to_string(inst.certifier->method))
                                  : std::string(saddle::to_string(saddle::CertMethod::sampled_estimate));
  d["chord_membership_calls"] = saddle::chord_membership_calls();
  if (inst.payoff.width_bound() > 0.0) {
    const double eps_s = a.epsilon / inst.payoff.width_bound();
    if (eps_s < 1.0) {
      const saddle::IterationBudget b = saddle::iteration_bound(z.total_dimension, eps_s, z);
      d["budget"] = {{"epsilon", a.epsilon},
                     {"epsilon_scaled", eps_s},
                     {"alpha", b.alpha},
                     {"T", b.T},
                     {"case", std::string(saddle::to_string(b.case_tag))}};
    }
  }
  d["canonical"] = nlohmann::json::parse(saddle::serialize_instance(file));
  std::cout << d.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate saddle points of convex-concave games from membership oracles"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Run the solver and certify the result");
  solve->add_option("instance", solve_args.instance, "Instance file")->required();
  solve->add_option("--epsilon", solve_args.epsilon, "Target duality gap");
  solve->add_option("--seed", solve_args.seed, "Root seed (generated and recorded if absent)");
  solve->add_option("--walk-steps", solve_args.walk_steps, "Hit-and-run steps per sample");
  solve->add_option("--t-override", solve_args.t_override, "Iterations per run");
  solve->add_option("--max-restarts", solve_args.max_restarts, "Restarts after the first run");
  solve->add_option("--trace", solve_args.trace, "Trace CSV path");
  solve->add_option("--result", solve_args.result, "Result record path");
  solve->add_flag("--timing", solve_args.timing, "Include wall-clock time in the record");
  solve->add_flag("--no-early-stop", solve_args.no_early_stop, "Always run the full budget");
  solve->add_option("--phi-grid", solve_args.phi_grid, "Potential quadrature grid (N <= 4)");

  CertifyArgs cert_args;
  auto* certify = app.add_subcommand("certify", "Duality gap of a given pair");
  certify->add_option("instance", cert_args.instance, "Instance file")->required();
  certify->add_option("--x", cert_args.x, "Minimizer point, inline or @file")->required();
  certify->add_option("--y", cert_args.y, "Maximizer point, inline or @file")->required();
  certify->add_option("--seed", cert_args.seed, "Seed for sampled estimates");
  certify->add_option("--budget", cert_args.budget, "Samples per side for sampled estimates");
  certify->add_option("--exponent-scale", cert_args.exponent_scale,
                      "Tilt of the sampled best-response search");

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Draw hit-and-run samples from one body");
  sample->add_option("instance", sample_args.instance, "Instance file")->required();
  sample->add_option("--side", sample_args.side, "x or y")->check(CLI::IsMember({"x", "y"}));
  sample->add_option("--count", sample_args.count, "Number of samples");
  sample->add_option("--exponent-scale", sample_args.exponent_scale,
                     "Density exp(-s F(z, y_c)) on x, exp(s F(x_c, z)) on y");
  sample->add_option("--seed", sample_args.seed, "Seed (generated and printed if absent)");
  sample->add_option("--walk-steps", sample_args.walk_steps, "Steps between samples");
  sample->add_option("--output", sample_args.output, "CSV path (stdout if absent)");

  DiagnoseArgs diag_args;
  auto* diagnose = app.add_subcommand("diagnose", "Describe an instance and its budget");
  diagnose->add_option("instance", diag_args.instance, "Instance file")->required();
  diagnose->add_option("--epsilon", diag_args.epsilon, "Epsilon for the budget line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) return cmd_solve(solve_args);
    if (*certify) return cmd_certify(cert_args);
    if (*sample) return cmd_sample(sample_args);
    return cmd_diagnose(diag_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
