#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "epe/errors.hpp"
#include "epe/instance.hpp"
#include "epe/instance_io.hpp"
#include "epe/sampler.hpp"
#include "support.hpp"

using namespace epe;
using epe::testing::make_instance;
using epe::testing::random_instance;

TEST_CASE("derived seeds depend on every component") {
  CHECK(derive_seed(1, "a", 0) != derive_seed(2, "a", 0));
  CHECK(derive_seed(1, "a", 0) != derive_seed(1, "b", 0));
  CHECK(derive_seed(1, "a", 0) != derive_seed(1, "a", 1));
  CHECK(derive_seed(1, "a", 0, 1) != derive_seed(1, "a", 1, 0));
  CHECK(derive_seed(7, "x", 3) == derive_seed(7, "x", 3));
}

TEST_CASE("rng uniforms stay in range and index is unbiased") {
  Rng rng(42);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const double u = rng.uniform();
    const double w = rng.uniform_open();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(w > 0.0);
    REQUIRE(w < 1.0);
    ++hits[rng.index(7)];
  }
  for (int h : hits) CHECK(std::abs(h - 10000) < 500);
}

TEST_CASE("split does not advance the parent") {
  Rng a(5), b(5);
  (void)a.split("child");
  CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("supergraph in-neighbors are the transpose") {
  Supergraph g({{1, 2, 2}, {0}, {2, 1}});
  CHECK(g.out_edges(0) == std::vector<StateIndex>{1, 2});
  CHECK(g.in_neighbors(0) == std::vector<StateIndex>{1});
  CHECK(g.in_neighbors(1) == std::vector<StateIndex>{0, 2});
  CHECK(g.in_neighbors(2) == std::vector<StateIndex>{0, 2});
  CHECK(g.edge_count() == 5);
  CHECK(g.average_degree() == doctest::Approx(5.0 / 3.0));
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(1, 2));
  CHECK_THROWS_AS(Supergraph({{3}, {}, {}}), ContractViolation);
}

TEST_CASE("supergraph transpose property on random graphs") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t s = 1 + rng.index(15);
    AdjacencyLists out(s);
    for (auto& row : out)
      for (std::size_t j = 0; j < s; ++j)
        if (rng.bernoulli(0.3)) row.push_back(j);
    Supergraph g(out);
    double degree_sum = 0.0;
    for (StateIndex to = 0; to < s; ++to) {
      degree_sum += static_cast<double>(g.in_degree(to));
      for (StateIndex from = 0; from < s; ++from) {
        const bool in = std::binary_search(g.in_neighbors(to).begin(), g.in_neighbors(to).end(), from);
        REQUIRE(in == g.has_edge(from, to));
      }
    }
    CHECK(g.average_degree() == doctest::Approx(degree_sum / static_cast<double>(s)));
  }
}

TEST_CASE("validation accepts the degenerate one-state chain") {
  CHECK(validate_instance(epe::testing::point_mass_chain()).empty());
}

TEST_CASE("validation reports absolute continuity at the offending pair") {
  ProblemInstance bad(0.5, {1.0, 0.0}, DenseMatrix::from_rows({{0.5, 0.5}, {1.0, 0.0}}),
                      Supergraph({{0}, {0}}));
  const auto v = validate_instance(bad);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::absolute_continuity);
  CHECK(v[0].row == 0);
  CHECK(v[0].col == 1);
  CHECK_THROWS_AS(require_valid(bad), ContractViolation);
}

TEST_CASE("validation reports a row that does not sum to one") {
  ProblemInstance bad(0.5, {1.0, 0.0}, DenseMatrix::from_rows({{0.5, 0.4}, {1.0, 0.0}}),
                      Supergraph::complete(2));
  const auto v = validate_instance(bad);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::row_not_stochastic);
  CHECK(v[0].row == 0);
}

TEST_CASE("validation reports negative entries and a bad discount") {
  ProblemInstance bad(1.0, {-1.0, 0.0}, DenseMatrix::from_rows({{1.5, -0.5}, {0.0, 1.0}}),
                      Supergraph::complete(2));
  const auto v = validate_instance(bad);
  auto has = [&](ViolationKind k) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == k; });
  };
  CHECK(has(ViolationKind::discount_out_of_range));
  CHECK(has(ViolationKind::negative_cost));
  CHECK(has(ViolationKind::negative_transition));
}

TEST_CASE("mismatched dimensions are rejected at construction") {
  CHECK_THROWS_AS(ProblemInstance(0.5, {1.0}, DenseMatrix::identity(2), Supergraph::complete(2)),
                  ContractViolation);
}

TEST_CASE("exact value of the two-cycle") {
  const auto inst = make_instance(0.5, {1.0, 0.0}, {{0.0, 1.0}, {1.0, 0.0}});
  const Vector v = exact_value(inst);
  CHECK(v[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(v[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  const Vector series = exact_value_power_series(inst, 30);
  CHECK(linf_distance(v, series) < 1e-8);
}

TEST_CASE("exact value trivial cases") {
  for (double alpha : {0.1, 0.5, 0.99}) {
    const auto inst = epe::testing::point_mass_chain(alpha, 3.5);
    CHECK(exact_value(inst)[0] == doctest::Approx(3.5));
  }
  const auto zero = make_instance(0.7, {0.0, 0.0}, {{0.3, 0.7}, {1.0, 0.0}});
  CHECK(linf_norm(exact_value(zero)) == 0.0);
  CHECK(linf_norm(exact_value_power_series(zero, 5)) == 0.0);
}

TEST_CASE("one-term power series is the scaled cost") {
  const auto inst = make_instance(0.3, {1.0, 2.0}, {{0.5, 0.5}, {0.25, 0.75}});
  const Vector v = exact_value_power_series(inst, 1);
  CHECK(v[0] == doctest::Approx(0.7));
  CHECK(v[1] == doctest::Approx(1.4));
}

TEST_CASE("power series truncation bound and value range on random instances") {
  Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const double alpha = 0.05 + 0.9 * rng.uniform();
    const auto inst = random_instance(rng, 20, alpha);
    REQUIRE(validate_instance(inst).empty());
    const Vector v = exact_value(inst);
    const double c_inf = linf_norm(inst.cost());
    for (double x : v) {
      CHECK(x >= -1e-12);
      CHECK(x <= c_inf + 1e-12);
    }
    for (std::size_t t = 1; t <= 50; ++t) {
      const Vector series = exact_value_power_series(inst, t);
      REQUIRE(linf_distance(v, series) <= c_inf * std::pow(alpha, static_cast<double>(t)) + 1e-12);
    }
  }
}

TEST_CASE("sampler follows a point-mass row and counts every draw") {
  const auto inst = make_instance(0.5, {1.0, 0.0, 0.0}, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  CountingSampler sampler(inst, 3);
  for (int i = 0; i < 100; ++i) REQUIRE(sampler.sample_next(0) == 2);
  CHECK(sampler.draw_count() == 100);
  const SparseRow row = sampler.sample_row(1, 25);
  CHECK(row.at(0) == 1.0);
  CHECK(row.support_size() == 1);
  CHECK(sampler.draw_count() == 125);
  CHECK_THROWS_AS(sampler.sample_next(3), ContractViolation);
}

TEST_CASE("sampler frequencies match the row") {
  const auto inst = make_instance(0.5, {1.0, 0.0}, {{0.5, 0.5}, {0.2, 0.8}});
  CountingSampler sampler(inst, 99);
  int ones = 0;
  for (int i = 0; i < 100000; ++i) ones += sampler.sample_next(0) == 1;
  CHECK(std::abs(ones / 1e5 - 0.5) < 0.01);
}

TEST_CASE("single draws and multinomial rows match Q within 0.01 per entry") {
  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const auto inst = random_instance(rng, 8, 0.5);
    const std::size_t s = inst.size();
    CountingSampler sampler(inst, trial);
    for (StateIndex i = 0; i < s; ++i) {
      std::vector<double> freq(s, 0.0);
      for (int d = 0; d < 100000; ++d) freq[sampler.sample_next(i)] += 1e-5;
      const SparseRow row = sampler.sample_row(i, 100000);
      CHECK(row.sum() == doctest::Approx(1.0));
      for (StateIndex j = 0; j < s; ++j) {
        CHECK(std::abs(freq[j] - inst.transitions()(i, j)) < 0.01);
        CHECK(std::abs(row.at(j) - inst.transitions()(i, j)) < 0.01);
        if (inst.transitions()(i, j) == 0.0) CHECK(row.at(j) == 0.0);
      }
    }
    CHECK(sampler.draw_count() == 200000 * s);
  }
}

TEST_CASE("samplers with the same seed agree") {
  Rng rng(1);
  const auto inst = random_instance(rng, 10, 0.5);
  CountingSampler a(inst, 77), b(inst, 77);
  for (int i = 0; i < 1000; ++i) {
    const StateIndex s = static_cast<StateIndex>(i) % inst.size();
    REQUIRE(a.sample_next(s) == b.sample_next(s));
  }
  CHECK(a.sample_row(0, 50) == b.sample_row(0, 50));
}

TEST_CASE("empirical rows are write-once") {
  EmpiricalRows rows(3);
  rows.set(1, SparseRow::from_counts({{0, 1}, {2, 3}}, 4));
  CHECK(rows.has(1));
  CHECK_FALSE(rows.has(0));
  CHECK(rows.row(1).at(2) == 0.75);
  CHECK(rows.count() == 1);
  CHECK_THROWS_AS(rows.set(1, SparseRow::from_counts({{0, 1}}, 1)), ContractViolation);
}

TEST_CASE("instance JSON round trip is exact") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = random_instance(rng, 12, 0.1 + 0.8 * rng.uniform(), true);
    const auto back = instance_from_json(instance_to_json(inst));
    CHECK(back == inst);
  }
  CHECK_THROWS_AS(instance_from_json(nlohmann::json{{"S", 2}}), ContractViolation);
}
