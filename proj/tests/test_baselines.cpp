#include <doctest.h>

#include <cmath>

#include "epe/backward.hpp"
#include "epe/baselines.hpp"
#include "epe/sampler.hpp"
#include "support.hpp"

using namespace epe;
using epe::testing::make_instance;
using epe::testing::random_instance;

TEST_CASE("known-Q push on the one-state chain") {
  const auto inst = epe::testing::point_mass_chain(0.5, 1.0);
  Rng ties(1);
  const auto rep = approx_contributions(inst.transitions(), inst.cost(), 0.5, 0.3, ties);
  CHECK(rep.estimate[0] == 0.75);
  CHECK(rep.iterations == 2);
  CHECK(rep.samples_used == 0);
}

TEST_CASE("known-Q push with a loose tolerance does nothing") {
  const auto inst = make_instance(0.5, {1.0, 0.5}, {{0.5, 0.5}, {1.0, 0.0}});
  Rng ties(1);
  const auto rep = approx_contributions(inst.transitions(), inst.cost(), 0.5, 1.0, ties);
  CHECK(rep.iterations == 0);
  CHECK(linf_norm(rep.estimate) == 0.0);
}

TEST_CASE("known-Q push: exact invariant at every iteration, accuracy, iteration bound") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const double alpha = 0.1 + 0.85 * rng.uniform();
    const auto inst = random_instance(rng, 20, alpha);
    const double eps = 0.005 + 0.2 * rng.uniform();
    Rng ties(trial);
    const auto rep = approx_contributions(inst.transitions(), inst.cost(), alpha, eps, ties, true);
    const Vector v = exact_value(inst);
    CHECK(linf_distance(rep.estimate, v) <= eps + 1e-12);
    CHECK(double(rep.iterations) <= l1_norm(v) / (eps * (1 - alpha)) + 1e-9);
    const auto err = error_process(*rep.trace, inst.transitions());
    CHECK(err.iterations() == rep.iterations);
    double worst = 0.0;
    for (double e : err.values.data()) worst = std::max(worst, std::abs(e));
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("resampling variant on the one-state chain matches the cached estimator") {
  const auto inst = epe::testing::point_mass_chain(0.5, 1.0);
  CountingSampler a(inst, 1), b(inst, 1);
  Rng ta(2), tb(2);
  const auto alt = backward_epe_alternative(a, inst.cost(), 0.5, inst.graph(), 0.3, 4, ta);
  const auto run = backward_epe(b, inst.cost(), 0.5, inst.graph(), {0.3, 4, false}, tb);
  CHECK(alt.estimate == run.report.estimate);
  CHECK(alt.samples_used == 8);  // resampled at both pushes
}

TEST_CASE("resampling variant counts n per predecessor per push") {
  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = random_instance(rng, 15, 0.7, true);
    const std::uint64_t n = 1 + rng.index(5);
    CountingSampler a(inst, trial), b(inst, trial);
    Rng ta(trial), tb(trial);
    const auto alt = backward_epe_alternative(a, inst.cost(), inst.alpha(), inst.graph(), 0.05, n, ta, true);
    std::uint64_t expected = 0;
    for (const auto& push : alt.trace->pushes) expected += n * inst.graph().in_degree(push.state);
    CHECK(alt.samples_used == expected);
    CHECK(alt.samples_used == a.draw_count());
    const auto run = backward_epe(b, inst.cost(), inst.alpha(), inst.graph(), {0.05, n, false}, tb);
    if (alt.iterations > 0 && alt.trace->pushes.size() > 1) CHECK(alt.samples_used >= run.report.samples_used);
  }
}

TEST_CASE("error process starts at zero") {
  Rng rng(33);
  const auto inst = random_instance(rng, 10, 0.8);
  CountingSampler sampler(inst, 1);
  Rng ties(1);
  const auto alt = backward_epe_alternative(sampler, inst.cost(), 0.8, inst.graph(), 0.05, 2, ties, true);
  const auto err = error_process(*alt.trace, inst.transitions());
  for (double e : err.at(0)) CHECK(std::abs(e) <= 1e-12);
}

TEST_CASE("error process of the resampling variant has mean zero and no drift") {
  const auto inst = make_instance(0.7, {1.0, 0.0, 0.4, 0.8},
                                  {{0.1, 0.4, 0.3, 0.2},
                                   {0.5, 0.0, 0.5, 0.0},
                                   {0.2, 0.2, 0.2, 0.4},
                                   {0.0, 0.6, 0.0, 0.4}});
  const int runs = 2000;
  std::vector<std::vector<double>> finals(4);
  std::vector<std::vector<double>> increments(4), weighted(4);
  for (int r = 0; r < runs; ++r) {
    CountingSampler sampler(inst, derive_seed(9, "alt", r));
    Rng ties(derive_seed(9, "ties", r));
    const auto alt = backward_epe_alternative(sampler, inst.cost(), 0.7, inst.graph(), 0.1, 3, ties, true);
    const auto err = error_process(*alt.trace, inst.transitions());
    for (int s = 0; s < 4; ++s) {
      finals[s].push_back(err.final()[s]);
      // first increment only, so that samples are independent across runs
      if (err.iterations() >= 1) {
        const double d = err.at(1)[s] - err.at(0)[s];
        increments[s].push_back(d);
        weighted[s].push_back(d * alt.trace->pushes[0].pushed_residual);
      }
    }
  }
  for (int s = 0; s < 4; ++s) {
    CHECK(std::abs(epe::testing::mean(finals[s])) <= 3 * epe::testing::standard_error(finals[s]));
    CHECK(std::abs(epe::testing::mean(increments[s])) <= 3 * epe::testing::standard_error(increments[s]) + 1e-15);
    CHECK(std::abs(epe::testing::mean(weighted[s])) <= 3 * epe::testing::standard_error(weighted[s]) + 1e-15);
  }
}
