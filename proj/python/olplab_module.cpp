// Python bindings for the simulation core.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "olp/algorithms.hpp"
#include "olp/bench.hpp"
#include "olp/hindsight.hpp"

namespace py = pybind11;

namespace {

olp::DistributionSpec make_spec(const std::string& kind, std::size_t m, const std::string& support_json) {
  if (kind == "continuous-u1") return olp::ContinuousU1{m};
  if (kind == "multi-secretary") return olp::MultiSecretary{};
  if (kind == "beta") return olp::BetaCont{m};
  if (kind == "wide-uniform") return olp::WideUniform{m};
  if (kind == "finite") {
    if (support_json.empty()) throw std::invalid_argument("finite needs a support JSON document");
    return olp::Finite{olp::finite_support_from_json(support_json), "json"};
  }
  throw std::invalid_argument("unknown distribution kind: " + kind);
}

olp::ArrivalSequence to_sequence(py::array_t<double, py::array::c_style | py::array::forcecast> rewards,
                                 py::array_t<double, py::array::c_style | py::array::forcecast> requests) {
  if (rewards.ndim() != 1 || requests.ndim() != 2 || requests.shape(0) != rewards.shape(0)) {
    throw std::invalid_argument("expected rewards of shape (T,) and requests of shape (T, m)");
  }
  const auto T = static_cast<std::size_t>(rewards.shape(0));
  const auto m = static_cast<std::size_t>(requests.shape(1));
  olp::ArrivalSequence seq(m);
  seq.reserve(T);
  const double* c = rewards.data();
  const double* a = requests.data();
  for (std::size_t t = 0; t < T; ++t) seq.push_back(c[t], std::span<const double>(a + t * m, m));
  return seq;
}

py::tuple to_arrays(const olp::ArrivalSequence& seq) {
  const auto T = static_cast<py::ssize_t>(seq.size());
  const auto m = static_cast<py::ssize_t>(seq.dimension());
  py::array_t<double> c(T);
  py::array_t<double> a({T, m});
  std::copy(seq.rewards().begin(), seq.rewards().end(), c.mutable_data());
  std::copy(seq.requests().begin(), seq.requests().end(), a.mutable_data());
  return py::make_tuple(c, a);
}

py::dict trace_dict(const olp::DecisionTrace& trace, const olp::Vector& final_price) {
  py::dict d;
  d["decisions"] = py::array_t<double>(static_cast<py::ssize_t>(trace.size()), trace.decisions().data());
  d["revenue"] = trace.revenue();
  d["consumption"] = trace.consumption();
  d["phase_boundary"] = trace.phase_boundary();
  d["final_price"] = final_price;
  return d;
}

}  // namespace

PYBIND11_MODULE(olplab, m) {
  m.doc() = "Online linear programming simulation core";

  py::register_exception<olp::SolverError>(m, "SolverError", PyExc_RuntimeError);

  m.def(
      "philox",
      [](std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key) {
        return olp::philox4x32_10(counter, key);
      },
      py::arg("counter"), py::arg("key"));

  m.def(
      "generate_arrivals",
      [](const std::string& kind, std::size_t horizon, std::uint64_t seed, std::size_t dim,
         const std::string& support_json) {
        auto spec = make_spec(kind, dim, support_json);
        olp::MarketConfig config;
        config.horizon = horizon;
        config.m = olp::dimension(spec);
        config.resources.assign(config.m, 0.5);
        config.seed = seed;
        return to_arrays(olp::generate_arrivals(spec, config));
      },
      py::arg("kind"), py::arg("horizon"), py::arg("seed"), py::arg("m") = 1, py::arg("support_json") = "",
      "Arrivals of one trial as (rewards, requests) arrays.");

  m.def(
      "solve_hindsight",
      [](py::array_t<double> rewards, py::array_t<double> requests, std::vector<double> budget) {
        auto seq = to_sequence(rewards, requests);
        auto sol = olp::solve_hindsight(seq, budget);
        py::dict d;
        d["optimal"] = sol.status == olp::SolveStatus::kOptimal;
        d["value"] = sol.value;
        d["dual_value"] = sol.dual_value;
        d["x"] = sol.x;
        d["y"] = sol.y;
        d["iterations"] = sol.iterations;
        return d;
      },
      py::arg("rewards"), py::arg("requests"), py::arg("budget"));

  m.def("benchmark_stepsize",
        [](double request_bound, double reward_bound, double d_lo, double d_hi, std::size_t dim,
           std::size_t horizon) {
          olp::BoundsSpec b{dim, request_bound, reward_bound, d_lo, d_hi, false};
          return olp::benchmark_stepsize(b, horizon);
        },
        py::arg("request_bound"), py::arg("reward_bound"), py::arg("d_lo"), py::arg("d_hi"), py::arg("m"),
        py::arg("horizon"));

  m.def(
      "run_subgradient",
      [](py::array_t<double> rewards, py::array_t<double> requests, std::vector<double> resources, double alpha,
         std::vector<double> y0) {
        auto seq = to_sequence(rewards, requests);
        if (y0.empty()) y0.assign(resources.size(), 0.0);
        auto res = olp::run_benchmark_subgradient(seq, resources, olp::ConstantStep{alpha},
                                                  olp::DualPrice(std::move(y0)));
        return trace_dict(res.trace, res.final_price.values());
      },
      py::arg("rewards"), py::arg("requests"), py::arg("resources"), py::arg("alpha"),
      py::arg("y0") = std::vector<double>{}, "Constant-step dual subgradient policy.");

  m.def(
      "run_two_phase",
      [](py::array_t<double> rewards, py::array_t<double> requests, std::vector<double> resources,
         const std::string& kind, std::size_t dim, const std::string& support_json, bool finite) {
        auto seq = to_sequence(rewards, requests);
        auto spec = make_spec(kind, dim, support_json);
        olp::ResourceSpec rs{olp::ResourceLaw::kUniform, 0.5};
        auto bounds = olp::derive_bounds(spec, rs);
        auto tp = olp::configure_two_phase_experiment(
            seq.size(), finite ? olp::SupportSetting::kFinite : olp::SupportSetting::kContinuous);
        auto res = olp::run_two_phase(seq, resources, bounds, tp);
        auto d = trace_dict(res.trace, res.final_price.values());
        d["learned_price"] = res.learned_price.values();
        d["config"] = tp.describe();
        return d;
      },
      py::arg("rewards"), py::arg("requests"), py::arg("resources"), py::arg("kind"), py::arg("m") = 1,
      py::arg("support_json") = "", py::arg("finite") = false,
      "Two-phase policy with the experiment settings for the horizon.");

  m.def("scenario_names", &olp::scenario_names);
  m.def(
      "run_scenario",
      [](const std::string& name, std::vector<std::size_t> horizons, std::size_t trials, std::uint64_t seed) {
        auto plan = olp::scenario_plan(name);
        if (!horizons.empty()) plan.horizons = std::move(horizons);
        plan.trials = trials;
        plan.seed = seed;
        plan.workers = 1;
        olp::PlanResult result;
        {
          py::gil_scoped_release release;
          result = olp::run_plan(plan);
        }
        py::list rows;
        for (const auto& r : result.rows) {
          py::dict d;
          d["algo"] = r.algo;
          d["dist"] = r.dist;
          d["T"] = r.horizon;
          d["trials"] = r.trials;
          d["mean_regret"] = r.mean_regret;
          d["mean_violation"] = r.mean_violation;
          d["mean_r_plus_v"] = r.mean_rpv;
          d["std_r_plus_v"] = r.std_rpv;
          d["normalized"] = r.normalized_rpv;
          rows.append(d);
        }
        return py::make_tuple(rows, olp::reports_to_csv(result.reports));
      },
      py::arg("name"), py::arg("horizons") = std::vector<std::size_t>{}, py::arg("trials") = 100,
      py::arg("seed") = 1, "Aggregate rows and per-trial CSV text of a named scenario.");

  m.def(
      "growth_slope",
      [](std::vector<double> horizons, std::vector<double> values) {
        std::vector<double> x, y;
        for (double h : horizons) x.push_back(std::log(h));
        for (double v : values) {
          if (!(v > 0)) throw std::invalid_argument("growth_slope: values must be positive");
          y.push_back(std::log(v));
        }
        return olp::fit_line(x, y).slope;
      },
      py::arg("horizons"), py::arg("values"));
}
