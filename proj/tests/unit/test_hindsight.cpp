#include <doctest.h>

#include <cmath>

#include "olp/distributions.hpp"
#include "olp/hindsight.hpp"
#include "olp/rng.hpp"
#include "support.hpp"

using namespace olp;

namespace {

// Optimality conditions of the LP pair: x_t = 0 when c_t < a_t.y and
// x_t = 1 when c_t > a_t.y, plus the dual objective matching.
void check_optimality(const ArrivalSequence& arr, const Vector& b, const OfflineSolution& sol) {
  const std::size_t m = b.size();
  REQUIRE(sol.x.size() == arr.size());
  Vector used(m, 0.0);
  for (std::size_t t = 0; t < arr.size(); ++t) {
    double price = 0;
    for (std::size_t i = 0; i < m; ++i) {
      price += arr[t].request[i] * sol.y[i];
      used[i] += arr[t].request[i] * sol.x[t];
    }
    REQUIRE(sol.x[t] >= 0.0);
    REQUIRE(sol.x[t] <= 1.0);
    if (arr[t].reward < price - 1e-8) REQUIRE(sol.x[t] <= 1e-8);
    if (arr[t].reward > price + 1e-8) REQUIRE(sol.x[t] >= 1 - 1e-8);
  }
  for (std::size_t i = 0; i < m; ++i) {
    REQUIRE(sol.y[i] >= 0.0);
    REQUIRE(used[i] <= b[i] + 1e-7);
    // Complementary slackness on the rows.
    if (sol.y[i] > 1e-9) REQUIRE(std::abs(used[i] - b[i]) <= 1e-6);
  }
  REQUIRE(sol.duality_gap() <= 1e-8);
}

ArrivalSequence random_instance(RandomStream& rng, std::size_t T, std::size_t m, bool allow_negative) {
  ArrivalSequence arr(m);
  Vector a(m);
  for (std::size_t t = 0; t < T; ++t) {
    for (auto& ai : a) ai = allow_negative && rng.uniform() < 0.15 ? -rng.uniform() : rng.uniform(0, 2);
    if (rng.uniform() < 0.1) a[0] = 0.0;
    const double c = allow_negative && rng.uniform() < 0.15 ? -rng.uniform() : rng.uniform(0, 2);
    arr.push_back(c, a);
  }
  return arr;
}

}  // namespace

TEST_CASE("knapsack examples") {
  auto s1 = solve_knapsack_m1(testing::sequence({3, 2, 1}, {{1}, {1}, {1}}), 2);
  CHECK(s1.value == doctest::Approx(5));
  CHECK(s1.x == Vector{1, 1, 0});
  auto s2 = solve_knapsack_m1(testing::sequence({3, 2}, {{2}, {2}}), 3);
  CHECK(s2.value == doctest::Approx(4));
  CHECK(s2.x[0] == doctest::Approx(1));
  CHECK(s2.x[1] == doctest::Approx(0.5));
  CHECK(s2.y[0] == doctest::Approx(1.0));
  auto s3 = solve_knapsack_m1(testing::sequence({3, -1, 2}, {{1}, {1}, {1}}), 10);
  CHECK(s3.value == doctest::Approx(5));
  CHECK(s3.y[0] == 0.0);
  CHECK(s3.x == Vector{1, 0, 1});
  auto free_item = solve_knapsack_m1(testing::sequence({1, 2}, {{0}, {1}}), 0.5);
  CHECK(free_item.value == doctest::Approx(2.0));
}

TEST_CASE("simplex matches the greedy knapsack on random single-resource instances") {
  RandomStream rng(1, Stream::kTest);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t T = 1 + static_cast<std::size_t>(rng.uniform() * 60);
    auto arr = random_instance(rng, T, 1, false);
    const double b = rng.uniform(0, 0.8) * static_cast<double>(T);
    auto k = solve_knapsack_m1(arr, b);
    auto s = solve_simplex(arr, Vector{b});
    CAPTURE(rep);
    REQUIRE(std::abs(k.value - s.value) <= 1e-9);
    REQUIRE(s.duality_gap() <= 1e-8);
    REQUIRE(k.duality_gap() <= 1e-8);
    check_optimality(arr, {b}, s);
    check_optimality(arr, {b}, k);
  }
}

TEST_CASE("simplex matches vertex enumeration on tiny instances") {
  RandomStream rng(2, Stream::kTest);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t T = 1 + static_cast<std::size_t>(rng.uniform() * 6);
    const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform() * 2);
    auto arr = random_instance(rng, T, m, rep % 2 == 1);
    Vector b(m);
    for (auto& bi : b) bi = rng.uniform(0, 0.7) * static_cast<double>(T);
    auto s = solve_simplex(arr, b);
    const double brute = testing::vertex_enumeration(arr, b);
    CAPTURE(rep);
    REQUIRE(std::abs(s.value - brute) <= 1e-9);
    check_optimality(arr, b, s);
  }
}

TEST_CASE("zero resources give zero value") {
  auto arr = testing::sequence({1, 2, 3}, {{1, 0.5}, {0.2, 1}, {1, 1}});
  auto s = solve_simplex(arr, Vector{0, 0});
  CHECK(s.value == doctest::Approx(0.0));
  auto k = solve_knapsack_m1(testing::sequence({1, 2}, {{1}, {2}}), 0);
  CHECK(k.value == 0.0);
}

TEST_CASE("negative budgets are infeasible") {
  auto arr = testing::sequence({1}, {{1}});
  CHECK(solve_knapsack_m1(arr, -1).status == SolveStatus::kInfeasible);
  CHECK(solve_simplex(arr, Vector{-1}).status == SolveStatus::kInfeasible);
}

TEST_CASE("desk-scale solves keep strong duality and the price envelope") {
  struct Case {
    DistributionSpec spec;
    std::size_t T;
  };
  std::vector<Case> cases{{ContinuousU1{2}, 20000}, {BetaCont{5}, 20000}, {WideUniform{5}, 20000}};
  RandomStream atoms(3, Stream::kAtoms), probs(3, Stream::kProbabilities);
  cases.push_back({Finite{finite_support_build(2, 5, AtomLaw::kUniform, atoms, probs), ""}, 20000});
  cases.push_back({Finite{finite_support_build(5, 10, AtomLaw::kGamma, atoms, probs), ""}, 20000});
  std::uint64_t seed = 10;
  for (const auto& c : cases) {
    MarketConfig config;
    config.horizon = c.T;
    config.m = dimension(c.spec);
    RandomStream res(seed, Stream::kResources);
    config.resources = sample_resources({}, config.m, res);
    config.seed = seed++;
    auto arr = generate_arrivals(c.spec, config);
    auto sol = solve_hindsight(arr, config.budget());
    CAPTURE(distribution_name(c.spec));
    check_optimality(arr, config.budget(), sol);
    auto bounds = derive_bounds(c.spec, {});
    CHECK(norm2(sol.y) <= bounds.dual_radius() + 1e-9);
  }
}

TEST_CASE("knapsack value is monotone in the budget") {
  RandomStream rng(4, Stream::kTest);
  for (int rep = 0; rep < 300; ++rep) {
    auto arr = random_instance(rng, 30, 1, false);
    const double b1 = rng.uniform(0, 20), b2 = b1 + rng.uniform(0, 5);
    CHECK(solve_knapsack_m1(arr, b1).value <= solve_knapsack_m1(arr, b2).value + 1e-12);
  }
}

TEST_CASE("instance dump round trip") {
  RandomStream rng(5, Stream::kTest);
  auto arr = random_instance(rng, 7, 2, true);
  Vector b{1.25, 2.5};
  const std::string text = dump_instance(arr, b);
  CHECK(text.rfind("olp-instance 7 2\n", 0) == 0);
  Vector back_b;
  auto back = parse_instance(text, back_b);
  CHECK(back_b == b);
  REQUIRE(back.size() == arr.size());
  CHECK(std::equal(arr.requests().begin(), arr.requests().end(), back.requests().begin()));
  CHECK(std::equal(arr.rewards().begin(), arr.rewards().end(), back.rewards().begin()));
  CHECK_THROWS(parse_instance("bogus", back_b));
}

TEST_CASE("expected finite dual") {
  FiniteSupport one;
  one.atoms = {Arrival{1.0, {2.0}}};
  one.probs = {1.0};
  auto s = solve_expected_dual_finite(one, Vector{1.0});
  CHECK(s.y[0] == doctest::Approx(0.5));
  CHECK(s.value == doctest::Approx(0.5));
  auto slack = solve_expected_dual_finite(one, Vector{5.0});
  CHECK(slack.y[0] == doctest::Approx(0.0));
}

TEST_CASE("expected finite dual matches its best breakpoint") {
  // f is convex and piecewise linear on the orthant, so its minimum sits
  // where two of the lines c_k = a_k.y and y_i = 0 cross.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomStream atoms(seed, Stream::kAtoms), probs(seed, Stream::kProbabilities), res(seed, Stream::kResources);
    auto support = finite_support_build(2, 5, AtomLaw::kUniform, atoms, probs);
    auto d = sample_resources({}, 2, res);
    auto sol = solve_expected_dual_finite(support, d);
    std::vector<std::pair<Vector, double>> lines{{{1.0, 0.0}, 0.0}, {{0.0, 1.0}, 0.0}};
    for (const auto& atom : support.atoms) lines.push_back({atom.request, atom.reward});
    double best = 1e300;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        Vector y;
        if (!testing::gauss_solve({lines[i].first, lines[j].first}, {lines[i].second, lines[j].second}, y)) continue;
        if (y[0] < -1e-12 || y[1] < -1e-12) continue;
        y[0] = std::max(y[0], 0.0);
        y[1] = std::max(y[1], 0.0);
        best = std::min(best, expected_dual_finite(y, support, d));
      }
    }
    CAPTURE(seed);
    CHECK(sol.value == doctest::Approx(best).epsilon(1e-10));
    CHECK(expected_dual_finite(sol.y, support, d) == doctest::Approx(best).epsilon(1e-10));
  }
}
