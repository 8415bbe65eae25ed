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

#include "alpha_bandits/cli/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "alpha_bandits/error.hpp"

namespace alpha_bandits::cli {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kConfigParseError, where + ": " + what);
}

std::string child(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

std::string child(const std::string& where, std::size_t index) {
  return where + "[" + std::to_string(index) + "]";
}

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(child(where, key), "required field is missing");
  return *it;
}

const Json* optional_field(const Json& obj, const std::string& key) {
  if (!obj.is_object()) return nullptr;
  const auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double as_double(const Json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

std::uint64_t as_u64(const Json& v, const std::string& where) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  fail(where, "expected a nonnegative integer");
}

std::string as_string(const Json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

std::vector<double> as_doubles(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_double(v[i], child(where, i)));
  return out;
}

double get_double(const Json& obj, const std::string& key, const std::string& where,
                  std::optional<double> fallback = std::nullopt) {
  if (const Json* v = optional_field(obj, key)) return as_double(*v, child(where, key));
  if (fallback) return *fallback;
  fail(child(where, key), "required field is missing");
}

std::uint64_t get_u64(const Json& obj, const std::string& key, const std::string& where,
                      std::optional<std::uint64_t> fallback = std::nullopt) {
  if (const Json* v = optional_field(obj, key)) return as_u64(*v, child(where, key));
  if (fallback) return *fallback;
  fail(child(where, key), "required field is missing");
}

// Runs a constructor, turning model/prior validation failures into config
// diagnostics that carry the field path.
template <class F>
auto checked(const std::string& where, F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigParseError) throw;
    fail(where, e.what());
  }
}

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

PolicySpec parse_policy(const Json& p, const std::string& where) {
  const std::string kind = as_string(require(p, "kind", where), child(where, "kind"));
  return checked(where, [&] {
    if (kind == "alpha_ts") return PolicySpec::alpha_ts(get_double(p, "alpha", where));
    if (kind == "ts") return PolicySpec::thompson();
    if (kind == "ucb1") return PolicySpec::ucb1();
    if (kind == "moss") return PolicySpec::moss();
    if (kind == "ucbv") {
      UCBVConstants c;
      c.variance_scale = get_double(p, "variance_scale", where, c.variance_scale);
      c.bias_scale = get_double(p, "bias_scale", where, c.bias_scale);
      return PolicySpec::ucbv(c);
    }
    fail(child(where, "kind"), "unknown policy kind '" + kind + "'");
  });
}

std::vector<RewardModel> parse_arms(const Json& instance, std::string* family_out) {
  const std::string where = "instance";
  const std::string family =
      as_string(require(instance, "family", where), child(where, "family"));
  const Json& params = require(instance, "params", where);
  if (!params.is_array()) fail(child(where, "params"), "expected an array with one entry per arm");
  const Json* support = optional_field(instance, "support");
  std::vector<RewardModel> arms;
  for (std::size_t i = 0; i < params.size(); ++i) {
    arms.push_back(
        parse_reward_model(params[i], family, support, child(child(where, "params"), i)));
  }
  if (family_out != nullptr) *family_out = family;
  return arms;
}

}  // namespace

Json load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path.string(), "cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  Json config;
  try {
    config = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte);
    fail(path.string() + ":" + std::to_string(line) + ":" + std::to_string(column),
         "JSON syntax error");
  }
  if (!config.is_object()) fail(path.string(), "top level must be a JSON object");
  if (config.contains("manifest_version") && config.contains("config")) {
    return config.at("config");
  }
  return config;
}

void apply_overrides(Json& config, std::span<const std::string> overrides) {
  for (const std::string& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) fail(item, "override must look like key=value");
    const std::string key = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    Json value = Json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;

    Json* node = &config;
    std::size_t start = 0;
    for (;;) {
      const auto dot = key.find('.', start);
      const std::string part = key.substr(start, dot == std::string::npos ? dot : dot - start);
      if (part.empty()) fail(key, "empty path segment in override");
      const bool is_index =
          node->is_array() && std::all_of(part.begin(), part.end(), ::isdigit);
      Json& next = is_index ? node->at(std::stoul(part)) : (*node)[part];
      if (dot == std::string::npos) {
        next = value;
        break;
      }
      node = &next;
      start = dot + 1;
    }
  }
}

RewardModel parse_reward_model(const Json& params, const std::string& family,
                               const Json* support, const std::string& where) {
  return checked(where, [&] {
    if (family == "bernoulli") return RewardModel::bernoulli(as_double(params, where));
    if (family == "poisson") return RewardModel::poisson(as_double(params, where));
    if (family == "gaussian") {
      if (params.is_number()) return RewardModel::gaussian(params.get<double>());
      return RewardModel::gaussian(get_double(params, "mean", where),
                                   get_double(params, "var", where, 1.0));
    }
    if (family == "categorical") {
      std::vector<double> probs = as_doubles(params, where);
      if (support != nullptr) {
        return RewardModel::categorical(std::move(probs), as_doubles(*support, "instance.support"));
      }
      return RewardModel::categorical(std::move(probs));
    }
    fail(where, "unknown reward family '" + family + "'");
  });
}

PriorSpec parse_prior(const Json& prior, const std::string& family, const std::string& where) {
  return checked(where, [&] {
    if (family == "bernoulli") {
      return PriorSpec::beta(get_double(prior, "a", where, 1.0), get_double(prior, "b", where, 1.0));
    }
    if (family == "categorical") {
      std::vector<double> support;
      if (const Json* s = optional_field(prior, "support")) support = as_doubles(*s, child(where, "support"));
      return PriorSpec::dirichlet(
          as_doubles(require(prior, "concentration", where), child(where, "concentration")),
          std::move(support));
    }
    if (family == "gaussian") {
      return PriorSpec::gaussian(get_double(prior, "mean", where, 0.0),
                                 get_double(prior, "precision", where, 1.0),
                                 get_double(prior, "likelihood_var", where, 1.0));
    }
    if (family == "poisson") {
      return PriorSpec::gamma(get_double(prior, "shape", where, 1.0),
                              get_double(prior, "rate", where, 1.0));
    }
    fail(where, "unknown reward family '" + family + "'");
  });
}

ExperimentConfig parse_experiment(const Json& config) {
  ExperimentConfig out;
  const Json& instance = require(config, "instance", "");
  std::string family;
  out.arms = parse_arms(instance, &family);
  if (const Json* ties = optional_field(instance, "allow_ties")) {
    if (!ties->is_boolean()) fail("instance.allow_ties", "expected a boolean");
    out.allow_ties = ties->get<bool>();
  }
  if (const Json* prior = optional_field(config, "prior")) {
    out.prior = parse_prior(*prior, family, "prior");
  }
  out.horizon = get_u64(config, "horizon", "");
  out.replicates = get_u64(config, "replicates", "", 1);
  out.init_pulls = get_u64(config, "init_pulls", "", 1);
  out.base_seed = get_u64(config, "base_seed", "", 0);
  if (const Json* fold = optional_field(config, "fold_warm_start")) {
    if (!fold->is_boolean()) fail("fold_warm_start", "expected a boolean");
    out.fold_warm_start = fold->get<bool>();
  }
  const Json& policies = require(config, "policies", "");
  if (!policies.is_array() || policies.empty()) fail("policies", "expected a non-empty array");
  for (std::size_t i = 0; i < policies.size(); ++i) {
    out.policies.push_back(parse_policy(policies[i], child("policies", i)));
  }
  checked("config", [&] {
    out.validate();
    return 0;
  });
  return out;
}

BoundsJob parse_bounds(const Json& config) {
  const Json empty = Json::object();
  const Json* analysis_ptr = optional_field(config, "analysis");
  const Json& analysis = analysis_ptr != nullptr ? *analysis_ptr : empty;
  const std::string where = "analysis";

  BoundsJob job;
  if (const Json* instance = optional_field(config, "instance")) {
    job.instance = checked("instance", [&] { return BanditInstance(parse_arms(*instance, nullptr)); });
  }
  BoundInputs& in = job.inputs;
  in.alpha = get_double(analysis, "alpha", where);
  in.r0 = get_double(analysis, "r0", where, 1.0);
  if (optional_field(analysis, "m") != nullptr || optional_field(analysis, "c_g") != nullptr) {
    in.D = checked(where, [&] {
      return exponential_family_D(get_double(analysis, "m", where),
                                  get_double(analysis, "c_g", where));
    });
  } else {
    in.D = get_double(analysis, "D", where, 1.0);
  }
  if (optional_field(analysis, "horizon") != nullptr) {
    in.horizon = get_u64(analysis, "horizon", where);
  } else {
    in.horizon = get_u64(config, "horizon", "");
  }
  if (const Json* gaps = optional_field(analysis, "gaps")) {
    in.gaps = as_doubles(*gaps, child(where, "gaps"));
    in.num_arms = get_u64(analysis, "num_arms", where, 0);
  } else if (job.instance) {
    const BoundInputs derived =
        BoundInputs::from_instance(*job.instance, in.horizon, in.alpha, in.D, in.r0);
    in.gaps = derived.gaps;
    in.num_arms = derived.num_arms;
  } else {
    fail(child(where, "gaps"), "either analysis.gaps or an instance is required");
  }
  checked(where, [&] {
    in.validate();
    return 0;
  });
  return job;
}

ConcentrationJob parse_concentration(const Json& config) {
  const std::string where = "concentration";
  const Json& c = require(config, where, "");
  const std::string family = as_string(require(c, "family", where), child(where, "family"));
  const Json empty = Json::object();
  const Json* prior = optional_field(c, "prior");
  ConcentrationJob job{
      parse_prior(prior != nullptr ? *prior : empty, family, child(where, "prior")),
      parse_reward_model(require(c, "true_model", where), family, optional_field(c, "support"),
                         child(where, "true_model")),
      as_doubles(require(c, "alphas", where), child(where, "alphas")),
      as_doubles(require(c, "nablas", where), child(where, "nablas")),
      {},
      {},
      get_double(c, "D", where, 1.0)};
  const Json& ns = require(c, "ns", where);
  if (!ns.is_array()) fail(child(where, "ns"), "expected an array of integers");
  for (std::size_t i = 0; i < ns.size(); ++i) job.ns.push_back(as_u64(ns[i], child(child(where, "ns"), i)));
  job.mc.outer = get_u64(c, "outer", where, 500);
  job.mc.inner = get_u64(c, "inner", where, 5000);
  job.mc.seed = get_u64(c, "seed", where, 0);
  if (job.mc.outer < 100 || job.mc.inner < 1000) {
    fail(where, "outer must be >= 100 and inner >= 1000");
  }
  for (double a : job.alphas) {
    if (!(a > 0.0 && a < 1.0)) fail(child(where, "alphas"), "each alpha must lie in (0, 1)");
  }
  return job;
}

DivergenceJob parse_divergence(const Json& config) {
  const std::string where = "divergence";
  const Json& d = require(config, where, "");
  const std::string family = as_string(require(d, "family", where), child(where, "family"));
  const Json* support = optional_field(d, "support");
  DivergenceJob job{
      parse_reward_model(require(d, "a", where), family, support, child(where, "a")),
      parse_reward_model(require(d, "b", where), family, support, child(where, "b")),
      get_double(d, "alpha", where)};
  checked(child(where, "alpha"), [&] { return DivergenceOrder(job.alpha); });
  return job;
}

PriorMassJob parse_prior_mass(const Json& config) {
  const std::string where = "prior_mass";
  const Json& p = require(config, where, "");
  const std::string family = as_string(require(p, "family", where), child(where, "family"));
  const Json empty = Json::object();
  const Json* prior = optional_field(p, "prior");
  PriorMassJob job{parse_prior(prior != nullptr ? *prior : empty, family, child(where, "prior")),
                   get_double(p, "theta0", where), get_double(p, "alpha", where),
                   get_double(p, "eps", where), get_u64(p, "n", where)};
  return job;
}

std::string config_hash(const Json& config) {
  const std::string text = config.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace alpha_bandits::cli
