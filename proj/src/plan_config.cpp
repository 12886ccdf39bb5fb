// JSON form of an ExperimentPlan.
//
// {
//   "name": "finite-1",
//   "distribution": {"kind": "finite", "m": 2, "K": 5, "atom_law": "uniform",
//                    "support_file": "", "resources": {"law": "uniform", "value": 0.5}},
//   "algorithms": ["M1", "M2"],
//   "horizons": [1000, 10000] | "grid": {"lo": 1000, "hi": 100000, "points": 10},
//   "trials": 100, "seed": 1,
//   "two_phase": {"mode": "experiment" | "theorem", "gamma": 2, "mu": 0.5,
//                 "diam": 0, "constant": 1},
//   "decider_mu": 0.5, "resolve_every": 0, "record_timing": false,
//   "output": {"csv": "out.csv", "plot_dir": "plots", "svg": false},
//   "workers": 0
// }
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>
#include "olp/bench.hpp"

namespace olp {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) throw std::invalid_argument("plan: unknown key '" + it.key() + "' in " + where);
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ExperimentPlan plan_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("plan: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("plan: top level must be an object");
  reject_unknown(j,
                 {"name", "distribution", "algorithms", "horizons", "grid", "trials", "seed", "two_phase",
                  "decider_mu", "resolve_every", "record_timing", "output", "workers"},
                 "plan");
  ExperimentPlan plan;
  try {
    read(j, "name", plan.name);
    if (j.contains("distribution")) {
      const auto& d = j.at("distribution");
      reject_unknown(d, {"kind", "m", "K", "atom_law", "support_file", "resources"}, "distribution");
      auto& dc = plan.distribution;
      read(d, "kind", dc.kind);
      read(d, "m", dc.m);
      read(d, "K", dc.K);
      if (d.contains("atom_law")) dc.atom_law = atom_law_from_string(d.at("atom_law").get<std::string>());
      read(d, "support_file", dc.support_file);
      if (d.contains("resources")) {
        const auto& r = d.at("resources");
        reject_unknown(r, {"law", "value"}, "resources");
        if (r.contains("law")) dc.resources.law = resource_law_from_string(r.at("law").get<std::string>());
        read(r, "value", dc.resources.value);
      }
    }
    if (j.contains("algorithms")) {
      plan.algorithms.clear();
      for (const auto& a : j.at("algorithms")) plan.algorithms.push_back(algo_from_string(a.get<std::string>()));
    }
    if (j.contains("horizons") && j.contains("grid")) {
      throw std::invalid_argument("plan: give either horizons or grid, not both");
    }
    read(j, "horizons", plan.horizons);
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      reject_unknown(g, {"lo", "hi", "points"}, "grid");
      plan.horizons = log_grid(g.at("lo").get<std::size_t>(), g.at("hi").get<std::size_t>(),
                               g.value("points", std::size_t{10}));
    }
    if (plan.horizons.empty()) {
      plan.horizons = plan.distribution.kind == "finite" ? log_grid(1000, 100000, 10) : log_grid(100, 100000, 10);
    }
    read(j, "trials", plan.trials);
    read(j, "seed", plan.seed);
    if (j.contains("two_phase")) {
      const auto& t = j.at("two_phase");
      reject_unknown(t, {"mode", "gamma", "mu", "diam", "constant"}, "two_phase");
      const std::string mode = t.value("mode", std::string("experiment"));
      if (mode == "experiment") {
        plan.two_phase_mode = TwoPhaseMode::kExperiment;
      } else if (mode == "theorem") {
        plan.two_phase_mode = TwoPhaseMode::kTheorem;
      } else {
        throw std::invalid_argument("plan: unknown two_phase mode " + mode);
      }
      read(t, "gamma", plan.theorem_gamma);
      read(t, "mu", plan.theorem_mu);
      read(t, "diam", plan.theorem_diam);
      read(t, "constant", plan.theorem_constant);
    }
    read(j, "decider_mu", plan.decider_mu);
    read(j, "resolve_every", plan.resolve_every);
    read(j, "record_timing", plan.record_timing);
    if (j.contains("output")) {
      const auto& o = j.at("output");
      reject_unknown(o, {"csv", "plot_dir", "svg"}, "output");
      read(o, "csv", plan.csv_path);
      read(o, "plot_dir", plan.plot_dir);
      read(o, "svg", plan.svg);
    }
    read(j, "workers", plan.workers);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("plan: ") + e.what());
  }
  plan.validate();
  return plan;
}

ExperimentPlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read plan " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  ExperimentPlan plan = plan_from_json(buf.str());
  // Relative support files resolve against the plan's directory.
  auto& sf = plan.distribution.support_file;
  if (!sf.empty() && sf.front() != '/') {
    auto pos = path.find_last_of('/');
    if (pos != std::string::npos) sf = path.substr(0, pos + 1) + sf;
  }
  return plan;
}

std::string plan_to_json(const ExperimentPlan& plan) {
  const auto& dc = plan.distribution;
  json j;
  j["name"] = plan.name;
  j["distribution"] = {{"kind", dc.kind},
                       {"m", dc.m},
                       {"K", dc.K},
                       {"atom_law", to_string(dc.atom_law)},
                       {"support_file", dc.support_file},
                       {"resources", {{"law", to_string(dc.resources.law)}, {"value", dc.resources.value}}}};
  j["algorithms"] = json::array();
  for (Algo a : plan.algorithms) j["algorithms"].push_back(to_string(a));
  j["horizons"] = plan.horizons;
  j["trials"] = plan.trials;
  j["seed"] = plan.seed;
  j["two_phase"] = {{"mode", plan.two_phase_mode == TwoPhaseMode::kTheorem ? "theorem" : "experiment"},
                    {"gamma", plan.theorem_gamma},
                    {"mu", plan.theorem_mu},
                    {"diam", plan.theorem_diam},
                    {"constant", plan.theorem_constant}};
  j["decider_mu"] = plan.decider_mu;
  j["resolve_every"] = plan.resolve_every;
  j["record_timing"] = plan.record_timing;
  j["output"] = {{"csv", plan.csv_path}, {"plot_dir", plan.plot_dir}, {"svg", plan.svg}};
  j["workers"] = plan.workers;
  return j.dump();
}

}  // namespace olp
