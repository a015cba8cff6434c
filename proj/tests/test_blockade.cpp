#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rydpol/blockade.hpp"

using namespace rydpol;

TEST_CASE("pulse accessors") {
    for (auto shape : {PulseShape::Square, PulseShape::Gaussian}) {
        const ExcitationPulse pulse(shape, 0.004, 0.04);
        CHECK(pulse.area_until(0.0) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(pulse.area_until(0.004) == doctest::Approx(0.04).epsilon(1e-12));
        double prev = 0.0;
        for (int k = 0; k <= 40; ++k) {
            const double t = 0.004 * k / 40.0;
            CHECK(pulse.rabi(t) >= 0.0);
            CHECK(pulse.area_until(t) >= prev);
            prev = pulse.area_until(t);
        }
    }
    CHECK_THROWS_AS(ExcitationPulse(PulseShape::Square, 0.0), std::domain_error);
    CHECK(parse_pulse_shape("gaussian") == PulseShape::Gaussian);
    CHECK_THROWS_AS(parse_pulse_shape("sech"), std::invalid_argument);
}

TEST_CASE("pair correlation limits") {
    const ExcitationPulse square(PulseShape::Square, 0.5);
    const ExcitationPulse gauss(PulseShape::Gaussian, 0.5);
    CHECK(pair_correlation(square, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(pair_correlation(gauss, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pair_correlation(square, 1e5) < 1e-8);
    CHECK(pair_correlation(gauss, 1e5) < 1e-6);
}

TEST_CASE("square pulse matches the closed form") {
    const ExcitationPulse square(PulseShape::Square, 1.0);
    for (double theta : {1e-4, 0.01, 0.5, 3.0, 17.0, 250.0, 999.0, 1001.0, 3000.0, 1e5}) {
        CAPTURE(theta);
        CHECK(pair_correlation(square, theta) == doctest::Approx(square_pulse_correlation(theta)).epsilon(1e-9));
    }
    CHECK(square_pulse_correlation(3.0) == doctest::Approx(0.599173577523).epsilon(1e-11));
    CHECK(square_pulse_correlation(-3.0) == square_pulse_correlation(3.0));
}

TEST_CASE("0 <= G <= 1 on a sweep") {
    for (auto shape : {PulseShape::Square, PulseShape::Gaussian}) {
        const ExcitationPulse pulse(shape, 0.004);
        for (int k = -40; k <= 80; ++k) {
            const double kappa = std::pow(10.0, k / 10.0);
            const double g = pair_correlation(pulse, kappa);
            CHECK(g >= 0.0);
            CHECK(g <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("blockade crossing is at kappa tau of order one") {
    double lo = 0.0, hi = 100.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (square_pulse_correlation(mid) > 0.5 ? lo : hi) = mid;
    }
    CHECK(lo > 1.0);
    CHECK(lo < 10.0);
}

TEST_CASE("correction factor") {
    SUBCASE("c -> 1 as tau -> 0") {
        double previous_gap = 1.0;
        for (double tau : {1e-3, 1e-4, 1e-5, 1e-6}) {
            const auto c = correction_factor(ExcitationPulse(PulseShape::Square, tau), 4.0, kAttractiveVdw);
            const double gap = 1.0 - c.c;
            CHECK(gap < previous_gap);
            previous_gap = gap;
        }
        CHECK(previous_gap < 1e-3);
    }
    SUBCASE("non-increasing in tau at fixed T") {
        double prev = 1.0;
        for (double tau : {1e-4, 1e-3, 0.004, 0.01, 0.04, 0.1, 0.4, 1.0, 4.0}) {
            const auto c = correction_factor(ExcitationPulse(PulseShape::Square, tau), 4.0, kAttractiveVdw);
            CAPTURE(tau);
            CHECK(c.c <= prev + 1e-12);
            CHECK(c.c > 0.0);
            prev = c.c;
        }
    }
    SUBCASE("reported value at the example pulse") {
        const auto c = correction_factor(ExcitationPulse(PulseShape::Square, 0.004), 0.004, kAttractiveVdw);
        CHECK(c.c == doctest::Approx(0.677481141544799).epsilon(1e-9));
        CHECK(c.c == c.ratio.real());
        const auto r = correction_factor(ExcitationPulse(PulseShape::Square, 0.004), 0.004, kRepulsiveVdw);
        CHECK(std::abs(r.ratio - std::conj(c.ratio)) < 1e-12);
    }
    CHECK_THROWS_AS(correction_factor(ExcitationPulse(PulseShape::Square, 1.0), 0.5, kAttractiveVdw),
                    std::domain_error);
}
