// Copyright 2026 The alpha-bandits Authors.
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

#include "alpha_bandits/cli/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include "CLI11.hpp"

#include "alpha_bandits/analysis.hpp"
#include "alpha_bandits/cli/config.hpp"
#include "alpha_bandits/cli/csv.hpp"
#include "alpha_bandits/error.hpp"
#include "alpha_bandits/simulator.hpp"

namespace alpha_bandits::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kToolName = "alpha-bandits";
constexpr int kManifestVersion = 1;
constexpr const char* kR0Caveat =
    "r0 is not computable in closed form; r0-dependent bounds use the configured value";

struct CommonOptions {
  std::string config_path;
  std::string output_dir = ".";
  int threads = 0;
  std::vector<std::string> overrides;
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kConfigParseError, "cannot write " + path.string());
  return out;
}

void write_json(const fs::path& path, const Json& value) {
  auto out = open_output(path);
  out << value.dump(2) << '\n';
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

int cmd_simulate(const Json& config, const fs::path& dir, unsigned threads, std::ostream& out) {
  const ExperimentConfig experiment = parse_experiment(config);
  const std::vector<RegretTrace> traces = run_experiment(experiment, threads);
  const std::vector<double> percentiles{10.0, 50.0, 90.0};
  const std::vector<GroupSummary> groups = aggregate(traces, percentiles);

  {
    auto f = open_output(dir / "traces.csv");
    write_traces_csv(f, traces);
  }
  {
    auto f = open_output(dir / "summary.csv");
    write_summary_csv(f, groups);
  }
  Json seeds = Json::array();
  for (const auto& t : traces) {
    seeds.push_back({{"policy_index", t.policy_index},
                     {"algorithm", t.algorithm},
                     {"replicate", t.replicate_id},
                     {"seed", t.seed},
                     {"warm_start_regret", t.warm_start_regret}});
  }
  Json manifest = {{"manifest_version", kManifestVersion},
                   {"tool", kToolName},
                   {"version", ALPHA_BANDITS_VERSION},
                   {"config_hash", config_hash(config)},
                   {"config", config},
                   {"seeds", seeds},
                   {"outputs", {"traces.csv", "summary.csv"}}};
  write_json(dir / "manifest.json", manifest);
  out << "simulate: " << traces.size() << " traces, " << groups.size() << " groups -> "
      << dir.string() << '\n';
  return kExitOk;
}

Json report_to_json(const BoundReport& r) {
  Json arms = Json::array();
  for (const auto& a : r.arms) {
    arms.push_back({{"gap", a.gap},
                    {"thm1", a.thm1},
                    {"thm1_log_term_dropped", a.thm1_log_term_dropped},
                    {"thm2", a.thm2},
                    {"thm2_small_gap", a.thm2_small_gap},
                    {"thm3", a.thm3}});
  }
  return {{"alpha", r.alpha},
          {"D", r.D},
          {"r0", r.r0},
          {"horizon", r.horizon},
          {"num_arms", r.num_arms},
          {"c_alpha", r.c_alpha},
          {"thm1_bound", r.thm1_bound},
          {"thm2_bound", r.thm2_bound},
          {"thm2_envelope", r.thm2_envelope},
          {"thm2_envelope_sqrt_term", r.thm2_envelope_sqrt_term},
          {"thm3_bound", r.thm3_bound},
          {"lb_coefficient", r.lb_coefficient ? Json(*r.lb_coefficient) : Json(nullptr)},
          {"per_arm", arms},
          {"r0_caveat", kR0Caveat}};
}

int cmd_bounds(const Json& config, const fs::path& dir, std::ostream& out, std::ostream& err) {
  const BoundsJob job = parse_bounds(config);
  const BoundReport report =
      bound_report(job.inputs, job.instance ? &*job.instance : nullptr);
  write_json(dir / "bounds.json", report_to_json(report));
  err << "note: " << kR0Caveat << " (r0=" << format_number(report.r0) << ")\n";
  out << "bounds: c_alpha=" << format_number(report.c_alpha)
      << " thm1=" << format_number(report.thm1_bound)
      << " thm2=" << format_number(report.thm2_bound)
      << " thm3=" << format_number(report.thm3_bound) << '\n';
  return kExitOk;
}

int cmd_concentration(const Json& config, const fs::path& dir, unsigned threads,
                      std::ostream& out) {
  ConcentrationJob job = parse_concentration(config);
  job.mc.threads = threads;
  auto f = open_output(dir / "concentration.csv");
  f << "alpha,nabla,n,empirical,std_error,bound,holds\n";
  bool all_hold = true;
  for (double alpha : job.alphas) {
    for (double nabla : job.nablas) {
      for (std::uint64_t n : job.ns) {
        const ConcentrationResult r =
            verify_concentration(job.prior, job.true_model, alpha, nabla, n, job.mc, job.D);
        all_hold = all_hold && r.holds;
        f << format_number(alpha) << ',' << format_number(nabla) << ',' << n << ','
          << format_number(r.empirical) << ',' << format_number(r.std_error) << ','
          << format_number(r.bound) << ',' << (r.holds ? "pass" : "fail") << '\n';
        out << (r.holds ? "PASS" : "FAIL") << " alpha=" << format_number(alpha)
            << " nabla=" << format_number(nabla) << " n=" << n
            << " empirical=" << format_number(r.empirical)
            << " bound=" << format_number(r.bound) << '\n';
      }
    }
  }
  return all_hold ? kExitOk : kExitVerificationFailed;
}

int cmd_divergence(const Json& config, const fs::path& dir, std::ostream& out) {
  const DivergenceJob job = parse_divergence(config);
  const DivergenceOrder order(job.alpha);
  Json record = {{"family", std::string(to_string(job.a.family()))},
                 {"alpha", job.alpha},
                 {"mean_a", mean(job.a)},
                 {"mean_b", mean(job.b)}};
  auto attempt = [&](const char* key, auto&& compute) {
    try {
      record[key] = number_or_null(compute());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kMixedFamilies) throw;
      record[key] = nullptr;
      record[std::string(key) + "_error"] = std::string(to_string(e.code()));
    }
  };
  attempt("renyi", [&] { return renyi_divergence(job.a, job.b, order); });
  attempt("kl", [&] { return kl_divergence(job.a, job.b); });
  if (job.a.family() == Family::kGaussian && job.alpha != 1.0) {
    attempt("quadrature_oracle", [&] { return renyi_quadrature_oracle(job.a, job.b, order); });
  }
  write_json(dir / "divergence.json", record);
  out << "divergence: " << record.dump() << '\n';
  return kExitOk;
}

int cmd_prior_mass(const Json& config, const fs::path& dir, std::ostream& out) {
  const PriorMassJob job = parse_prior_mass(config);
  const PriorMassResult r =
      check_prior_mass_b1(job.prior, job.theta0, job.alpha, job.eps, job.n);
  Json record = {{"family", std::string(to_string(job.prior.family()))},
                 {"theta0", job.theta0},
                 {"alpha", job.alpha},
                 {"eps", job.eps},
                 {"n", job.n},
                 {"lhs", r.lhs},
                 {"rhs", r.rhs},
                 {"ball_lower", number_or_null(r.ball_lower)},
                 {"ball_upper", number_or_null(r.ball_upper)},
                 {"holds", r.holds}};
  write_json(dir / "prior_mass.json", record);
  out << "prior-mass: lhs=" << format_number(r.lhs) << " rhs=" << format_number(r.rhs)
      << (r.holds ? " holds" : " FAILS") << '\n';
  return r.holds ? kExitOk : kExitVerificationFailed;
}

}  // namespace

unsigned resolve_threads(int flag_value) {
  if (flag_value > 0) return static_cast<unsigned>(flag_value);
  if (const char* env = std::getenv("ALPHA_BANDITS_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 0;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"alpha-TS bandit simulation and analysis toolkit", kToolName};
  app.set_version_flag("--version", ALPHA_BANDITS_VERSION);
  app.require_subcommand(1);

  CommonOptions opts;
  const std::vector<std::pair<const char*, const char*>> subcommands = {
      {"simulate", "Run replicates and write traces.csv, summary.csv, manifest.json"},
      {"bounds", "Evaluate C(alpha), regret upper bounds and the lower-bound coefficient"},
      {"concentration", "Monte Carlo check of the alpha-posterior tail inequality"},
      {"divergence", "Renyi/KL divergence between two reward models"},
      {"prior-mass", "Check the prior-mass condition on a D_2 ball"}};
  for (const auto& [name, help] : subcommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", opts.config_path, "JSON config (or a simulate manifest)")
        ->required();
    sub->add_option("-o,--output-dir", opts.output_dir, "Directory for outputs");
    sub->add_option("-j,--threads", opts.threads,
                    "Worker threads (fallback: ALPHA_BANDITS_THREADS); never changes outputs");
    sub->add_option("-s,--set", opts.overrides, "Config override key.path=value (repeatable)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Json config = load_config(opts.config_path);
    apply_overrides(config, opts.overrides);
    const fs::path dir(opts.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::kConfigParseError, "cannot create " + dir.string());
    const unsigned threads = resolve_threads(opts.threads);

    if (command == "simulate") return cmd_simulate(config, dir, threads, out);
    if (command == "bounds") return cmd_bounds(config, dir, out, err);
    if (command == "concentration") return cmd_concentration(config, dir, threads, out);
    if (command == "divergence") return cmd_divergence(config, dir, out);
    return cmd_prior_mass(config, dir, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const Json::exception& e) {
    err << "error: ConfigParseError: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace alpha_bandits::cli
