#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "entrobound/entcore.hpp"
#include "entrobound/mbound.hpp"

using namespace entrobound;
using namespace entrobound::bound;

TEST_CASE("entropy curve is strictly increasing with matching inverse") {
  for (int d : {2, 3, 10, 100}) {
    const double smax = (d - 1.0) / d;
    double prev = -1.0;
    for (int i = 0; i <= 50; ++i) {
      const double s = smax * i / 50.0;
      const double v = entropy_curve(d, s);
      CHECK(v > prev);
      prev = v;
      CHECK(entropy_curve_inverse(d, v) == doctest::Approx(s).epsilon(1e-8));
    }
    CHECK(entropy_curve(d, 0.0) == 0.0);
    CHECK(entropy_curve(d, smax) == doctest::Approx(std::log(d)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(entropy_curve(2, 0.7), std::invalid_argument);
  CHECK_THROWS_AS(entropy_curve_inverse(2, 1.0), std::invalid_argument);
}

TEST_CASE("curve derivative matches finite differences") {
  for (double s : {0.1, 0.3, 0.6}) {
    const double h = 1e-7;
    const double fd = (entropy_curve(10, s + h) - entropy_curve(10, s - h)) / (2 * h);
    CHECK(entropy_curve_derivative(10, s) == doctest::Approx(fd).epsilon(1e-6));
  }
  CHECK(std::isinf(entropy_curve_derivative(5, 0.0)));
}

TEST_CASE("M endpoints") {
  for (int d : {2, 3, 7, 50}) {
    const double ld = std::log(static_cast<double>(d));
    CHECK(compute_M(d, 0.0).value == 0.0);
    const auto lo = compute_M(d, -ld);
    CHECK(lo.value == doctest::Approx(ld).epsilon(1e-12));
    CHECK(lo.s_opt == doctest::Approx(0.0));
    CHECK(lo.r_opt == doctest::Approx((d - 1.0) / d));
    CHECK(compute_M(d, ld).is_infinite());
  }
  CHECK_THROWS_AS(compute_M(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(compute_M(1, 0.0), std::invalid_argument);
}

TEST_CASE("d=1000 delta=6 reference point") {
  const auto res = compute_M(1000, 6.0);
  CHECK(res.value == doctest::Approx(2.2994).epsilon(2e-4));
  CHECK(res.s_opt == doctest::Approx(0.9497).epsilon(2e-4));
  CHECK(res.r_opt == doctest::Approx(0.0723).epsilon(2e-3));
  CHECK(core::binary_relative_entropy(res.r_opt, res.s_opt) ==
        doctest::Approx(2.5177).epsilon(1e-3));
  CHECK(res.brackets_found == 1);
}

TEST_CASE("optimal pair attains the bound") {
  for (int d : {2, 4, 30}) {
    const double ld = std::log(static_cast<double>(d));
    for (double f : {-0.8, -0.3, 0.3, 0.8}) {
      const auto res = compute_M(d, f * ld);
      const auto [sigma, rho] = optimal_pair(d, f * ld);
      const double delta = core::shannon_entropy(sigma) - core::shannon_entropy(rho);
      CHECK(delta == doctest::Approx(f * ld).epsilon(1e-9));
      CHECK(core::relative_entropy(sigma, rho) ==
            doctest::Approx(res.value).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(optimal_pair(4, std::log(4.0)), std::invalid_argument);
}

TEST_CASE("N(d) against a dense grid over all spectra shapes") {
  for (int d : {2, 3, 8, 40}) {
    const auto nb = compute_N(d);
    // the two-level family contains the maximizer; a fine sweep over it
    // must not beat the reported optimum
    double best = 0.0;
    for (int i = 1; i < 20000; ++i) {
      const double s = (d - 1.0) / d * i / 20000.0;
      best = std::max(best,
                      core::surprisal_variance(core::ProbVector::two_level(d, s)));
    }
    CHECK(best <= nb.n_value + 1e-9);
    CHECK(nb.n_value >= best - 1e-7);
    // root residual of the maximizer condition
    const double resid =
        (1.0 - 2.0 * nb.r_d) * std::log((1.0 - nb.r_d) / nb.r_d * (d - 1.0)) - 2.0;
    CHECK(std::abs(resid) <= 1e-10);
    CHECK(nb.n_closed == doctest::Approx(0.25 * std::pow(std::log(d - 1.0), 2) + 1.0));
    CHECK(nb.n_value < nb.n_closed);
    CHECK(nb.n_value > nb.n_closed - 1.0);
    const double ld = std::log(static_cast<double>(d));
    CHECK(nb.n_value < ld * ld);
  }
  CHECK(compute_N(2).n_value == doctest::Approx(0.4392288399).epsilon(1e-9));
  CHECK(compute_N(2).r_d == doctest::Approx(0.0832217202).epsilon(1e-8));
}

TEST_CASE("closed-form chain ordering") {
  for (int d : {2, 6, 25}) {
    const double ld = std::log(static_cast<double>(d));
    const double n_exact = compute_N(d).n_value;
    for (int i = 0; i <= 100; ++i) {
      const double delta = -ld + 2.0 * ld * i / 100.0;
      const double m = compute_M(d, delta).value;
      for (double n : {n_exact, compute_N(d).n_closed, ld * ld}) {
        const auto lb = closed_form_lower_bounds(d, delta, n);
        CHECK(m >= lb.exp_bound - 1e-10);
        CHECK(lb.exp_bound >= lb.cubic_bound - 1e-10);
      }
      CHECK(m >= closed_form_lower_bounds(d, delta).quad_bound - 1e-10);
    }
  }
  CHECK_THROWS_AS(closed_form_lower_bounds(5, 0.5, 0.1), std::invalid_argument);
}

TEST_CASE("pinsker composite bound") {
  const auto pb = pinsker_fa_bound(4, 0.0);
  CHECK(pb.bound == 0.0);
  CHECK(pb.closed_form == 0.0);
  for (int d : {2, 5, 40}) {
    const double ld = std::log(static_cast<double>(d));
    for (double f : {-0.9, -0.4, 0.4, 0.9}) {
      const auto b = pinsker_fa_bound(d, f * ld);
      CHECK(b.bound > 0.0);
      // the closed-form inversion underestimates the exact one
      CHECK(b.closed_form <= b.bound + 1e-12);
      // symmetric in the sign of delta
      CHECK(pinsker_fa_bound(d, -f * ld).bound == doctest::Approx(b.bound));
      // Pinsker is valid: it never exceeds the tight bound at negative delta
      if (f < 0.0) CHECK(b.bound <= compute_M(d, f * ld).value + 1e-9);
    }
  }
  CHECK(pinsker_fa_bound(2, -std::log(2.0)).bound == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("M is symmetric-dominant: positive delta costs more") {
  for (int d : {2, 3, 10}) {
    const double ld = std::log(static_cast<double>(d));
    for (double f : {0.2, 0.5, 0.8}) {
      CHECK(compute_M(d, f * ld).value > compute_M(d, -f * ld).value);
    }
  }
}
