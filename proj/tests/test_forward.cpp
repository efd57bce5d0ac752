#include <doctest.h>

#include <cmath>

#include "epe/errors.hpp"
#include "epe/forward.hpp"
#include "epe/sampler.hpp"
#include "support.hpp"

using namespace epe;
using epe::testing::make_instance;

TEST_CASE("horizon one returns the scaled cost without sampling") {
  const auto inst = make_instance(0.4, {1.0, 2.0}, {{0.5, 0.5}, {0.1, 0.9}});
  CountingSampler sampler(inst, 1);
  const auto rep = forward_epe(sampler, inst.cost(), inst.alpha(), {1, 7});
  CHECK(rep.estimate[0] == doctest::Approx(0.6));
  CHECK(rep.estimate[1] == doctest::Approx(1.2));
  CHECK(rep.samples_used == 0);
}

TEST_CASE("one-state chain gives the geometric partial sum") {
  const auto inst = epe::testing::point_mass_chain(0.5, 1.0);
  for (std::uint64_t t : {1, 2, 5, 10}) {
    CountingSampler sampler(inst, t);
    const auto rep = forward_epe(sampler, inst.cost(), inst.alpha(), {t, 3});
    CHECK(rep.estimate[0] == doctest::Approx(1.0 - std::pow(0.5, double(t))).epsilon(1e-14));
  }
}

TEST_CASE("samples used is S m (T - 1)") {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = epe::testing::random_instance(rng, 12, 0.7);
    const std::uint64_t t = 1 + rng.index(12), m = 1 + rng.index(6);
    CountingSampler sampler(inst, trial);
    const auto rep = forward_epe(sampler, inst.cost(), inst.alpha(), {t, m});
    CHECK(rep.samples_used == inst.size() * m * (t - 1));
    CHECK(rep.samples_used == sampler.draw_count());
    CHECK(rep.iterations == inst.size() * m);
  }
}

TEST_CASE("mean of repeated runs matches the truncated series") {
  const auto inst = make_instance(0.8, {1.0, 0.0, 0.5},
                                  {{0.2, 0.5, 0.3}, {0.4, 0.4, 0.2}, {0.0, 0.9, 0.1}});
  const std::uint64_t t = 8;
  const Vector target = exact_value_power_series(inst, t);
  std::vector<std::vector<double>> runs(3);
  for (int r = 0; r < 20; ++r) {
    CountingSampler sampler(inst, 1000 + r);
    const auto rep = forward_epe(sampler, inst.cost(), inst.alpha(), {t, 5000});
    for (int s = 0; s < 3; ++s) runs[s].push_back(rep.estimate[s]);
  }
  for (int s = 0; s < 3; ++s)
    CHECK(std::abs(epe::testing::mean(runs[s]) - target[s]) <= 3 * epe::testing::standard_error(runs[s]));
}

TEST_CASE("bias on a deterministic cycle is within the truncation bound") {
  const auto inst = make_instance(0.9, {1.0, 0.0}, {{0.0, 1.0}, {1.0, 0.0}});
  const Vector v = exact_value(inst);
  for (std::uint64_t t = 1; t < 40; ++t) {
    CountingSampler sampler(inst, t);
    const auto rep = forward_epe(sampler, inst.cost(), inst.alpha(), {t, 1});
    CHECK(linf_distance(rep.estimate, v) <= std::pow(0.9, double(t)) + 1e-12);
  }
}

TEST_CASE("forward sample sizes") {
  const auto cfg = sample_size_forward(0.1, 0.1, 0.5, 1.0, 10);
  CHECK(cfg.horizon == 6);
  CHECK(cfg.trajectories == 355);
  CHECK(sample_size_forward(2.5, 0.1, 0.5, 1.0, 10).horizon == 1);
  CHECK(sample_size_forward(0.1, 0.1, 0.5, 1.0, 100).trajectories >= cfg.trajectories);
  CHECK_THROWS_AS(sample_size_forward(0.0, 0.1, 0.5, 1.0, 10), ContractViolation);
  CHECK_THROWS_AS(sample_size_forward(0.1, 0.1, 1.5, 1.0, 10), ContractViolation);
}

TEST_CASE("zero horizon or trajectory count is rejected") {
  const auto inst = epe::testing::point_mass_chain();
  CountingSampler sampler(inst, 1);
  CHECK_THROWS_AS(forward_epe(sampler, inst.cost(), 0.5, {0, 1}), ContractViolation);
  CHECK_THROWS_AS(forward_epe(sampler, inst.cost(), 0.5, {1, 0}), ContractViolation);
}
