#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fock.hpp"
#include "oracle.hpp"

using ncbound::VerifyConfig;

TEST_CASE("poisson_state builds the Poissonian number distribution") {
  const auto p1 = ncbound::poisson_state(1.0);
  CHECK(std::abs(p1.weight(0) - std::exp(-1.0)) < 1e-16);
  CHECK(std::abs(p1.weight(1) - std::exp(-1.0)) < 1e-16);
  CHECK(std::abs(p1.weight(3) - std::exp(-1.0) / 6.0) < 1e-16);
  CHECK(p1.tail_bound() <= 1e-12);
  CHECK(std::abs(ncbound::trace(p1) - 1.0) < 2e-12);

  const auto m = ncbound::moments(ncbound::poisson_state(2.3));
  CHECK(std::abs(m.mean - 2.3) < 1e-10);
  CHECK(std::abs(m.variance - 2.3) < 1e-9);
  // Poissonian statistics sit exactly on the classical boundary
  CHECK(std::abs(ncbound::mandel_q(ncbound::poisson_state(2.3))) < 1e-9);

  const auto vac = ncbound::poisson_state(0.0);
  CHECK(vac.weight(0) == 1.0);

  CHECK_THROWS_AS(ncbound::poisson_state(-1.0), std::domain_error);
  CHECK_THROWS_AS(ncbound::poisson_state(1.0, 0.0), std::domain_error);
}

TEST_CASE("simpson integrates smooth functions to near machine precision") {
  const double two = ncbound::simpson([](double x) { return std::sin(x); },
                                      0.0, std::numbers::pi, 1024);
  CHECK(std::abs(two - 2.0) < 1e-10);
  CHECK(ncbound::simpson([](double) { return 1.0; }, 2.0, 2.0, 64) == 0.0);
  CHECK_THROWS_AS(ncbound::simpson([](double) { return 1.0; }, 0.0, 1.0, 7),
                  std::domain_error);
  CHECK_THROWS_AS(ncbound::simpson([](double) { return 1.0; }, 0.0, 1.0, 0),
                  std::domain_error);
  CHECK_THROWS_AS(ncbound::simpson({}, 0.0, 1.0, 64), std::invalid_argument);
}

TEST_CASE("default grid covers the documented rectangle") {
  const auto grid = ncbound::default_grid();
  CHECK(grid.size() == 620);
  CHECK(grid.front().nbar == 0.0);
  CHECK(grid.front().eta == 0.05);
  CHECK(grid.back().nbar == 3.0);
  CHECK(grid.back().eta == 1.0);
}

TEST_CASE("the default verify run passes every check in declared order") {
  const auto report = ncbound::run_verify();
  REQUIRE(report.checks.size() == 5);
  CHECK(report.checks[0].name == "probability_equivalence");
  CHECK(report.checks[1].name == "q_maxima");
  CHECK(report.checks[2].name == "classical_never_violates");
  CHECK(report.checks[3].name == "duality_and_traces");
  CHECK(report.checks[4].name == "low_eta_probe");
  for (const auto& chk : report.checks) {
    INFO(chk.name << " max error " << chk.max_abs_error);
    CHECK(chk.passed);
  }
  CHECK(report.overall);
  CHECK(report.rng_seed == 42);
  CHECK(report.checks[0].max_abs_error < 1e-9);
  // the probe records a genuine probability increase at eta = 0.05
  CHECK(report.checks[4].max_abs_error > 0.0);
}

TEST_CASE("verify is deterministic for a fixed seed") {
  VerifyConfig cfg;
  cfg.grid = {{0.2, 0.9}, {0.2, 0.4}, {1.0, 0.6}};
  cfg.rng_seed = 7;
  const auto a = ncbound::run_verify(cfg);
  const auto b = ncbound::run_verify(cfg);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].max_abs_error == b.checks[i].max_abs_error);
    CHECK(a.checks[i].passed == b.checks[i].passed);
  }
  CHECK(a.overall);
}

TEST_CASE("a tolerance below the truncation floor fails honestly") {
  VerifyConfig cfg;
  cfg.match_tol = 1e-15;
  const auto report = ncbound::run_verify(cfg);
  CHECK(!report.overall);
}

TEST_CASE("config validation") {
  VerifyConfig bad_tail;
  bad_tail.tail_tol = -1.0;
  CHECK_THROWS_AS(ncbound::run_verify(bad_tail), std::domain_error);

  VerifyConfig bad_eta;
  bad_eta.grid = {{0.2, 0.0}};
  CHECK_THROWS_AS(ncbound::run_verify(bad_eta), std::domain_error);

  VerifyConfig bad_nbar;
  bad_nbar.grid = {{-0.2, 0.5}};
  CHECK_THROWS_AS(ncbound::run_verify(bad_nbar), std::domain_error);
}
