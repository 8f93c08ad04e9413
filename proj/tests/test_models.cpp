#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fock.hpp"
#include "models.hpp"
#include "oracle.hpp"

using ncbound::DetectorSpec;
using ncbound::MDeltaMode;

namespace {

constexpr double kPi = std::numbers::pi;

double uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("thermal_params and domain validation") {
  const auto tp = ncbound::thermal_params(0.2);
  CHECK(std::abs(tp.xi - 1.0 / 6.0) < 1e-16);
  CHECK_THROWS_AS(ncbound::thermal_params(-0.1), std::domain_error);
  CHECK_THROWS_AS(ncbound::thermal(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(ncbound::inefficient_detector({0.0}), std::domain_error);
  CHECK_THROWS_AS(ncbound::inefficient_detector({1.2}), std::domain_error);
}

TEST_CASE("degenerate constructions at nbar = 0") {
  const auto vac = ncbound::thermal(0.0);
  CHECK(vac.weight(0) == 1.0);
  CHECK(vac.tail_bound() == 0.0);
  const auto one = ncbound::photon_added_thermal(0.0);
  CHECK(one.weight(0) == 0.0);
  CHECK(one.weight(1) == 1.0);
}

TEST_CASE("cutoffs follow the analytic tail policy with a floor of 32") {
  // Wide distribution: the smallest cutoff whose geometric tail drops
  // under 1e-12. For nbar = 3, xi = 0.75, that is exactly 96.
  const auto th3 = ncbound::thermal(3.0);
  CHECK(th3.cutoff() == 96);
  CHECK(th3.tail_bound() <= 1e-12);
  CHECK(std::pow(0.75L, th3.cutoff()) > 1e-12L);  // one level fewer fails

  // Narrow distribution: the floor takes over.
  CHECK(ncbound::thermal(0.01).cutoff() == 32);

  // The declared tail bound really covers the truncated mass.
  for (double nbar : {0.3, 1.0, 3.0}) {
    for (const auto& op : {ncbound::thermal(nbar),
                           ncbound::photon_added_thermal(nbar)}) {
      CHECK(op.tail_bound() <= 1e-12);
      CHECK(ncbound::trace(op) + op.tail_bound() >= 1.0 - 1e-13);
      CHECK(ncbound::trace(op) <= 1.0 + 1e-13);
    }
  }

  // A looser tolerance yields a smaller (or floor) cutoff.
  CHECK(ncbound::thermal(3.0, 1e-6).cutoff() < th3.cutoff());
}

TEST_CASE("photon-added thermal weights are the tilted geometric "
          "distribution") {
  const double nbar = 0.7;
  const double xi = nbar / (nbar + 1.0);
  const auto pats = ncbound::photon_added_thermal(nbar);
  CHECK(pats.weight(0) == 0.0);
  for (std::size_t n = 1; n <= 8; ++n) {
    const double expected = (1.0 - xi) * (1.0 - xi) *
                            static_cast<double>(n) *
                            std::pow(xi, static_cast<double>(n - 1));
    CHECK(std::abs(pats.weight(n) - expected) < 1e-15);
  }
  const auto m = ncbound::moments(pats);
  // The second moment amplifies the discarded tail by cutoff^2, so the
  // guaranteed accuracy is tail_tol * cutoff^2, about 1e-9 here.
  CHECK(std::abs(m.mean - (2.0 * nbar + 1.0)) < 1e-10);
  CHECK(std::abs(m.variance - 2.0 * nbar * (nbar + 1.0)) < 1e-8);
}

TEST_CASE("detector operators") {
  const auto ideal = ncbound::ideal_detector();
  CHECK(ideal.cutoff() == 1);
  CHECK(ideal.weight(0) == 0.0);
  CHECK(ideal.weight(1) == 1.0);
  CHECK(ideal.tail_bound() == 0.0);

  // Full efficiency collapses the smeared detector onto the projector.
  const auto full = ncbound::inefficient_detector({1.0});
  CHECK(full.cutoff() == 1);
  CHECK(full.weight(1) == 1.0);

  const auto det = ncbound::inefficient_detector({0.4});
  CHECK(det.weight(0) == 0.0);
  for (std::size_t m = 1; m <= 10; ++m) {
    const double expected = 0.4 * static_cast<double>(m) *
                            std::pow(0.6, static_cast<double>(m - 1));
    CHECK(std::abs(det.weight(m) - expected) < 1e-15);
    CHECK(det.weight(m) <= 1.0);
  }
  CHECK(std::abs(ncbound::trace(det) - 2.5) < 1e-10);
  CHECK(std::abs(ncbound::trace(ncbound::inefficient_detector({0.5})) - 2.0) <
        1e-10);
  CHECK(std::abs(ncbound::trace(ncbound::inefficient_detector({0.9})) -
                 1.0 / 0.9) < 1e-10);
}

TEST_CASE("closed-form Q profiles evaluate to their known peak values") {
  CHECK(std::abs(ncbound::pats_q(1.2, 0.2) - 0.097583052540531934) < 1e-15);
  const auto pmax = ncbound::pats_q_max(0.2);
  CHECK(pmax.u_star == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(std::abs(pmax.q_max - 0.097583052540531934) < 1e-15);

  const auto imax = ncbound::ideal_det_q_max();
  CHECK(imax.u_star == 1.0);
  CHECK(std::abs(kPi * imax.q_max - std::exp(-1.0)) < 1e-15);
  CHECK(std::abs(ncbound::ideal_det_q(1.0) - imax.q_max) < 1e-16);

  const auto nmax = ncbound::inefficient_det_q_max(0.4);
  CHECK(nmax.u_star == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(std::abs(nmax.q_max - imax.q_max) < 1e-16);
  CHECK(std::abs(ncbound::inefficient_det_q(2.5, 0.4) - nmax.q_max) < 1e-15);
}

TEST_CASE("lossy profile maxima: interior, boundary, and lossless limits") {
  // Interior regime.
  const auto interior = ncbound::lossy_pats_q_max(0.2, 0.9, MDeltaMode::True);
  CHECK(std::abs(interior.u_star - 1.0707407407407407) < 1e-12);
  CHECK(std::abs(kPi * interior.q_max - 0.31302405347665511) < 1e-12);
  const auto interior_paper =
      ncbound::lossy_pats_q_max(0.2, 0.9, MDeltaMode::Paper);
  CHECK(interior_paper.q_max == interior.q_max);

  // Boundary regime: the stationary point falls at negative u; the paper
  // formula keeps quoting it while the true maximum sits at zero.
  const auto paper = ncbound::lossy_pats_q_max(0.2, 0.4, MDeltaMode::Paper);
  CHECK(std::abs(paper.u_star - (-0.27)) < 1e-12);
  CHECK(std::abs(kPi * paper.q_max - 0.52840552127067551) < 1e-12);
  const auto truth = ncbound::lossy_pats_q_max(0.2, 0.4, MDeltaMode::True);
  CHECK(truth.u_star == 0.0);
  CHECK(std::abs(kPi * truth.q_max - 0.51440329218106996) < 1e-12);
  CHECK(std::abs(kPi * truth.q_max - 0.6 / 1.1664) < 1e-12);

  const auto deep = ncbound::lossy_pats_q_max(3.0, 0.1, MDeltaMode::Paper);
  CHECK(std::abs(deep.u_star - (-1.625)) < 1e-12);
  CHECK(std::abs(kPi * deep.q_max - 0.826116676322329) < 1e-10);
  const auto deep_true = ncbound::lossy_pats_q_max(3.0, 0.1, MDeltaMode::True);
  CHECK(std::abs(kPi * deep_true.q_max - 0.532544378698225) < 1e-10);

  // eta = 1 short-circuits to the lossless profile maximum, exactly.
  const auto lossless = ncbound::lossy_pats_q_max(0.7, 1.0, MDeltaMode::True);
  CHECK(lossless.u_star == ncbound::pats_q_max(0.7).u_star);
  CHECK(lossless.q_max == ncbound::pats_q_max(0.7).q_max);
  CHECK(std::abs(kPi * lossless.q_max - 0.216399671277319) < 1e-12);
}

TEST_CASE("true mode never exceeds paper mode and they agree exactly in "
          "the interior regime") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const double nbar = 3.0 * uniform(gen);
    const double eta = 0.05 + 0.95 * uniform(gen);
    const auto p = ncbound::lossy_pats_q_max(nbar, eta, MDeltaMode::Paper);
    const auto t = ncbound::lossy_pats_q_max(nbar, eta, MDeltaMode::True);
    CHECK(t.q_max <= p.q_max);
    if (eta * (nbar + 2.0) >= 1.0) {
      CHECK(t.q_max == p.q_max);
      CHECK(t.u_star >= 0.0);
    } else {
      CHECK(t.u_star == 0.0);
      CHECK(t.q_max < p.q_max);
    }
  }
}

TEST_CASE("losing the state matches absorbing the loss into the closed "
          "form") {
  // Brute-force Fock route for the lossy Husimi profile against the closed
  // form, across regimes and well past the peak.
  const struct {
    double nbar, eta;
  } points[] = {{0.2, 0.9}, {0.7, 0.4}, {3.0, 0.1}, {1.5, 0.65}};
  for (const auto& pt : points) {
    const auto lossy =
        ncbound::apply_loss(ncbound::photon_added_thermal(pt.nbar), pt.eta);
    const double c = pt.eta * pt.nbar + 1.0;
    for (int j = 0; j <= 64; ++j) {
      const double u = 4.0 * c * static_cast<double>(j) / 64.0;
      const double closed = ncbound::lossy_pats_q(u, pt.nbar, pt.eta);
      CHECK(std::abs(ncbound::q_at(lossy, u) - closed) < 1e-10);
    }
  }
}

TEST_CASE("smeared detector Q matches its truncated Fock sum") {
  for (double eta : {0.25, 0.6, 0.9}) {
    const auto det = ncbound::inefficient_detector({eta});
    for (double u : {0.1, 1.0, 3.0, 8.0}) {
      CHECK(std::abs(ncbound::q_at(det, u) -
                     ncbound::inefficient_det_q(u, eta)) < 1e-10);
    }
  }
}

TEST_CASE("the P representation dips negative below the crossover and "
          "normalizes") {
  const double nbar = 0.2;
  const double crossover = nbar / (nbar + 1.0);
  CHECK(ncbound::pats_p_rep(0.5 * crossover, nbar) < 0.0);
  CHECK(ncbound::pats_p_rep(2.0 * crossover, nbar) > 0.0);
  CHECK(std::abs(ncbound::pats_p_rep(crossover, nbar)) < 1e-12);

  const double u_hi = nbar * 60.0 + 5.0;
  const double norm = ncbound::simpson(
      [nbar](double u) { return kPi * ncbound::pats_p_rep(u, nbar); }, 0.0,
      u_hi, 8192);
  CHECK(std::abs(norm - 1.0) < 1e-8);
  // first moment of the P function gives the mean photon number
  const double mean = ncbound::simpson(
      [nbar](double u) { return kPi * u * ncbound::pats_p_rep(u, nbar); },
      0.0, u_hi, 8192);
  CHECK(std::abs(mean - (2.0 * nbar + 1.0)) < 1e-6);

  CHECK_THROWS_AS(ncbound::pats_p_rep(0.5, 0.0), std::domain_error);
}

TEST_CASE("QProfile dispatches every form consistently") {
  const auto closed = ncbound::QProfile::pats(0.2);
  CHECK(closed(1.2) == ncbound::pats_q(1.2, 0.2));
  const auto fock =
      ncbound::QProfile::fock_sum(ncbound::photon_added_thermal(0.2));
  CHECK(std::abs(fock(1.2) - closed(1.2)) < 1e-10);
  const auto lossy = ncbound::QProfile::lossy_pats(0.2, 0.9);
  CHECK(lossy(1.0) == ncbound::lossy_pats_q(1.0, 0.2, 0.9));
  const auto ideal = ncbound::QProfile::ideal_det();
  CHECK(ideal(1.0) == ncbound::ideal_det_q(1.0));
  const auto ineff = ncbound::QProfile::inefficient_det(0.4);
  CHECK(ineff(2.5) == ncbound::inefficient_det_q(2.5, 0.4));
  // lossless limit of the lossy closed form collapses onto the plain one
  for (double u : {0.0, 0.5, 1.2, 4.0}) {
    CHECK(std::abs(ncbound::lossy_pats_q(u, 0.2, 1.0) -
                   ncbound::pats_q(u, 0.2)) < 1e-16);
  }
}
