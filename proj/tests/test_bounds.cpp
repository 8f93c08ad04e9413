#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bounds.hpp"

using ncbound::MDeltaMode;

TEST_CASE("click probability closed form at reference points") {
  CHECK(std::abs(ncbound::probability(0.2, 0.9) - 0.66827669820186095) <
        1e-15);
  CHECK(std::abs(ncbound::probability(0.2, 0.4) - 0.4191434232586496) <
        1e-15);
  CHECK(std::abs(ncbound::probability(1.0, 0.4) - 0.379008746355685) < 1e-14);
  CHECK(std::abs(ncbound::probability(3.0, 0.1) - 0.304961310878471) < 1e-14);
  CHECK(std::abs(ncbound::probability(0.2, 0.05) - 0.067456015280971289) <
        1e-15);
  CHECK(ncbound::probability(0.0, 1.0) == 1.0);

  CHECK_THROWS_AS(ncbound::probability(-0.1, 0.5), std::domain_error);
  CHECK_THROWS_AS(ncbound::probability(0.2, 0.0), std::domain_error);
  CHECK_THROWS_AS(ncbound::probability(0.2, 1.5), std::domain_error);
  CHECK_THROWS_AS(ncbound::probability(std::nan(""), 0.5), std::domain_error);
}

TEST_CASE("the state bound is 1/e and the measurement bounds take their "
          "reference values") {
  CHECK(ncbound::bound_s() == std::exp(-1.0));

  CHECK(std::abs(ncbound::bound_m_delta(0.2, 0.9, MDeltaMode::Paper) -
                 0.31302405347665511) < 1e-12);
  CHECK(std::abs(ncbound::bound_m_delta(0.2, 0.9, MDeltaMode::True) -
                 0.31302405347665511) < 1e-12);
  CHECK(std::abs(ncbound::bound_m_delta(0.2, 0.4, MDeltaMode::Paper) -
                 0.52840552127067551) < 1e-12);
  CHECK(std::abs(ncbound::bound_m_delta(0.2, 0.4, MDeltaMode::True) -
                 0.51440329218106996) < 1e-12);

  CHECK(std::abs(ncbound::bound_m_delta_tilde(0.2, 0.9) -
                 0.34062911219577993) < 1e-12);
  CHECK(std::abs(ncbound::bound_m_delta_tilde(0.2, 0.4) -
                 0.76641550244050484) < 1e-12);
  // product form against the collapsed closed form
  for (double nbar : {0.0, 0.3, 1.7}) {
    for (double eta : {0.05, 0.5, 1.0}) {
      CHECK(std::abs(ncbound::bound_m_delta_tilde(nbar, eta) -
                     std::exp(-1.0) / (eta * (nbar + 1.0))) <
            1e-14 / (eta * (nbar + 1.0)));
    }
  }
}

TEST_CASE("at full efficiency the two measurement bounds coincide exactly") {
  for (double nbar : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    const double paper = ncbound::bound_m_delta(nbar, 1.0, MDeltaMode::Paper);
    const double truth = ncbound::bound_m_delta(nbar, 1.0, MDeltaMode::True);
    const double tilde = ncbound::bound_m_delta_tilde(nbar, 1.0);
    CHECK(paper == truth);
    CHECK(truth == tilde);
    CHECK(std::abs(truth - std::exp(-1.0) / (nbar + 1.0)) < 1e-15);
  }
}

TEST_CASE("reports carry the right flags at the reference points") {
  const auto all = ncbound::report(0.2, 0.9, MDeltaMode::Paper);
  CHECK(all.nbar == 0.2);
  CHECK(all.eta == 0.9);
  CHECK(all.m_delta_mode == MDeltaMode::Paper);
  CHECK(all.violates_s);
  CHECK(all.violates_m_delta);
  CHECK(all.violates_m_delta_tilde);

  // Moderate efficiency: only the state-and-measurement bound S is beaten.
  for (MDeltaMode mode : {MDeltaMode::Paper, MDeltaMode::True}) {
    const auto r = ncbound::report(0.2, 0.4, mode);
    CHECK(r.violates_s);
    CHECK(!r.violates_m_delta);
    CHECK(!r.violates_m_delta_tilde);
  }

  // Large nbar, tiny eta: nothing is certified.
  const auto none = ncbound::report(3.0, 0.1, MDeltaMode::True);
  CHECK(!none.violates_s);
  CHECK(!none.violates_m_delta);
  CHECK(!none.violates_m_delta_tilde);

  // Lossless single photon: p = 1 tops every bound.
  const auto top = ncbound::report(0.0, 1.0, MDeltaMode::Paper);
  CHECK(top.p == 1.0);
  CHECK(top.violates_s);
  CHECK(top.violates_m_delta);
  CHECK(top.violates_m_delta_tilde);
}

TEST_CASE("probability is eventually monotone in nbar except at low "
          "efficiency") {
  // Nonincreasing in nbar once eta reaches one half.
  for (double eta : {0.5, 0.7, 0.9, 1.0}) {
    double prev = ncbound::probability(0.0, eta);
    for (int i = 1; i <= 60; ++i) {
      const double p = ncbound::probability(0.05 * i, eta);
      CHECK(p <= prev + 1e-15);
      prev = p;
    }
  }
  // Below one half, thermal photons can help at small nbar.
  for (double eta : {0.05, 0.4}) {
    const double base = ncbound::probability(0.0, eta);
    bool increased = false;
    for (int i = 1; i <= 60; ++i) {
      increased = increased || ncbound::probability(0.05 * i, eta) > base;
    }
    CHECK(increased);
  }
}

TEST_CASE("the state-only ceiling sits above the measurement ceiling in "
          "true mode") {
  for (double nbar : {0.0, 0.4, 1.1, 2.6}) {
    for (double eta : {0.05, 0.3, 0.8, 1.0}) {
      CHECK(ncbound::bound_m_delta_tilde(nbar, eta) >=
            ncbound::bound_m_delta(nbar, eta, MDeltaMode::True));
    }
  }
}
