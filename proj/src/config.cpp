// Copyright 2026 The wwkde Authors
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

#include "wwkde/config.hpp"

#include <set>

#include "wwkde/error.hpp"

namespace wwkde {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

DensitySpec density_from_json(const json& j) {
  reject_unknown(j, {"family", "dim", "mean", "sigma", "components"}, "density");
  DensitySpec spec;
  spec.family = density_family_from_string(get_or<std::string>(j, "family", "gaussian"));
  spec.dim = get_or<int>(j, "dim", 1);
  spec.mean = get_or<std::vector<double>>(j, "mean", {});
  spec.sigma = get_or<double>(j, "sigma", 1.0);
  if (j.contains("components")) {
    for (const auto& c : j.at("components")) {
      reject_unknown(c, {"weight", "mean", "sigma"}, "density component");
      MixtureComponent comp;
      comp.weight = get_or<double>(c, "weight", 1.0);
      comp.mean = get_or<std::vector<double>>(c, "mean", std::vector<double>(spec.dim, 0.0));
      comp.sigma = get_or<double>(c, "sigma", 1.0);
      spec.components.push_back(std::move(comp));
    }
  }
  return spec;
}

GridConfig grid_from_json(const json& j) {
  reject_unknown(j, {"type", "x0", "lower", "upper", "cells", "measure"}, "grid");
  GridConfig g;
  const auto type = get_or<std::string>(j, "type", "point");
  if (type == "point") {
    g.kind = GridConfig::Kind::point;
    g.x0 = get_or<std::vector<double>>(j, "x0", {});
  } else if (type == "box") {
    g.kind = GridConfig::Kind::box;
    g.lower = get_or<std::vector<double>>(j, "lower", {});
    g.upper = get_or<std::vector<double>>(j, "upper", {});
    g.cells = get_or<std::vector<int>>(j, "cells", {});
    const auto measure = get_or<std::string>(j, "measure", "lebesgue");
    if (measure == "lebesgue")
      g.measure = GridMeasure::lebesgue;
    else if (measure == "probability")
      g.measure = GridMeasure::probability;
    else
      throw ConfigError("unknown grid measure '" + measure + "'");
  } else {
    throw ConfigError("unknown grid type '" + type + "'");
  }
  return g;
}

}  // namespace

KernelConfig kernel_config_from_json(const json& j) {
  reject_unknown(j, {"family", "dim", "order", "truncation_radius"}, "kernel");
  KernelConfig k;
  k.family = kernel_family_from_string(get_or<std::string>(j, "family", "epanechnikov"));
  k.dim = get_or<int>(j, "dim", 1);
  k.order = get_or<int>(j, "order", 1);
  k.truncation_radius = get_or<double>(j, "truncation_radius", 10.0);
  if (k.dim < 1) throw ConfigError("kernel dim must be positive");
  if (k.order < 0) throw ConfigError("kernel order must be nonnegative");
  return k;
}

ExperimentConfig experiment_config_from_json(const json& j) {
  reject_unknown(j,
                 {"density", "kernel", "bandwidth", "smoothness", "grid", "n_values",
                  "replications", "seed", "target", "statistic", "tail", "theory",
                  "acceptance"},
                 "experiment config");
  ExperimentConfig cfg;
  if (!j.contains("density")) throw ConfigError("experiment config needs a density block");
  cfg.density = density_from_json(j.at("density"));

  const json smooth = j.value("smoothness", json::object());
  reject_unknown(smooth, {"beta", "L"}, "smoothness");
  cfg.smoothness = SmoothnessClass(get_or<double>(smooth, "beta", 1.0),
                                   get_or<double>(smooth, "L", 1.0));
  cfg.density.smoothness = cfg.smoothness;
  if (cfg.density.family == DensityFamily::triangular && cfg.smoothness.beta > 1.0)
    throw ConfigError("the triangular density only belongs to smoothness classes with beta <= 1");

  json kernel = j.value("kernel", json::object());
  if (!kernel.contains("dim")) kernel["dim"] = cfg.density.dim;
  cfg.kernel = kernel_config_from_json(kernel);

  const json bw = j.value("bandwidth", json::object());
  reject_unknown(bw, {"c2", "gamma", "exponent"}, "bandwidth");
  cfg.c2 = get_or<double>(bw, "c2", 1.0);
  cfg.log_gamma = get_or<double>(bw, "gamma", 0.0);
  if (bw.contains("exponent")) cfg.bandwidth_exponent = get_or<double>(bw, "exponent", 0.0);

  cfg.grid = grid_from_json(j.value("grid", json::object()));
  cfg.n_values = get_or<std::vector<std::uint64_t>>(j, "n_values", {});
  cfg.replications = get_or<std::uint64_t>(j, "replications", 2);
  cfg.seed = get_or<std::uint64_t>(j, "seed", 0);

  const auto target = get_or<std::string>(j, "target", "rate");
  if (target == "rate")
    cfg.target = Target::rate;
  else if (target == "tail")
    cfg.target = Target::tail;
  else if (target == "calibrate")
    cfg.target = Target::calibrate;
  else
    throw ConfigError("unknown target '" + target + "'");

  const json stat = j.value("statistic", json::object());
  reject_unknown(stat, {"kind", "p"}, "statistic");
  const auto kind = get_or<std::string>(stat, "kind", "pointwise");
  if (kind == "pointwise")
    cfg.statistic = StatisticKind::pointwise;
  else if (kind == "sup")
    cfg.statistic = StatisticKind::sup;
  else if (kind == "lp")
    cfg.statistic = StatisticKind::lp;
  else
    throw ConfigError("unknown statistic '" + kind + "'");
  cfg.p = get_or<double>(stat, "p", 2.0);
  if (cfg.p < 1.0) throw ConfigError("statistic p must be at least 1");

  const json tail = j.value("tail", json::object());
  reject_unknown(tail, {"center", "u_points", "u_max"}, "tail");
  const auto center = get_or<std::string>(tail, "center", "mean");
  if (center == "mean")
    cfg.center = Centering::replication_mean;
  else if (center == "truth")
    cfg.center = Centering::truth;
  else
    throw ConfigError("unknown tail centering '" + center + "'");
  cfg.u_points = get_or<int>(tail, "u_points", 200);
  if (tail.contains("u_max")) cfg.u_max = get_or<double>(tail, "u_max", 0.0);

  const json theory = j.value("theory", json::object());
  reject_unknown(theory, {"c4", "c14", "c8", "c_two_regime", "c_sum", "c3", "c4_max"}, "theory");
  cfg.constants.c4 = get_or<double>(theory, "c4", 1.0);
  cfg.constants.c14 = get_or<double>(theory, "c14", 1.0);
  cfg.constants.c8 = get_or<double>(theory, "c8", 1.0);
  cfg.constants.c_two_regime = get_or<double>(theory, "c_two_regime", 1.0);
  cfg.constants.c_sum = get_or<double>(theory, "c_sum", 1.0);
  cfg.c3 = get_or<double>(theory, "c3", 0.0);
  cfg.c4_max = get_or<double>(theory, "c4_max", 1e6);

  const json acc = j.value("acceptance", json::object());
  reject_unknown(acc, {"slope_tolerance", "exponent_tolerance"}, "acceptance");
  if (acc.contains("slope_tolerance"))
    cfg.slope_tolerance = get_or<double>(acc, "slope_tolerance", 0.0);
  if (acc.contains("exponent_tolerance"))
    cfg.exponent_tolerance = get_or<double>(acc, "exponent_tolerance", 0.0);
  return cfg;
}

}  // namespace wwkde
