#include <doctest.h>

#include <cmath>

#include "rydpol/quadrature.hpp"
#include "rydpol/special_functions.hpp"

using namespace rydpol;

namespace {
bool close(cplx a, cplx b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }
}  // namespace

TEST_CASE("E1 against reference values") {
    CHECK(close(expint_e1({1.0, 0.0}), {0.21938393439552027, 0.0}, 1e-13));
    CHECK(close(expint_e1({0.0, 1.0}), {-0.33740392290096813, -0.62471325642771360}, 1e-13));
    CHECK(close(expint_e1({0.0, -3.0}), {-0.11962978600800033, -0.27785620120457164}, 1e-13));
    CHECK(close(expint_e1({0.0, 10.0}), {0.045456433004455373, 0.087551267423977430}, 1e-12));
    CHECK(close(expint_e1({2.5, -7.0}), {-0.0027356120497168662, 0.010052992581900708}, 1e-11));
    CHECK(close(expint_e1({0.0, -0.01}), {4.0279795209823921, 1.5607963823502855}, 1e-13));
}

TEST_CASE("upper incomplete gamma at imaginary arguments") {
    CHECK(close(upper_gamma(1.0 / 3.0, {0.0, -0.5}), {0.50689863369828828, 0.91602889532600114}, 1e-12));
    CHECK(close(upper_gamma(-2.0 / 3.0, {0.0, -5.0}), {0.031309903456191392, 0.054438120130254253}, 1e-11));
    CHECK(close(upper_gamma(-2.0 / 3.0, {0.0, -0.2}), {-0.28557485194612754, 2.9599731780227987}, 1e-12));
    CHECK(close(upper_gamma(1.0 / 3.0, {0.0, 20.0}), {-0.075772005314514640, -0.11224503641930353}, 1e-11));
    CHECK(close(upper_gamma(0.5, {0.0, -0.0625}), {1.4116749013996191, 0.34605166804156739}, 1e-13));
}

TEST_CASE("oscillatory power tail") {
    struct Case {
        double s, x;
        cplx expected;
    };
    const Case cases[] = {
        {0.5, 0.0625, {-2.5014206678464665, 2.0066933717338678}},
        {0.5, 10.0, {-0.61951217643439530, -0.028053284306073167}},
        {1.0, 3.0, {-0.38547463099557685, -0.072589783321377920}},
        {1.0, 0.001, {-1.5702963268087855, 7.3305396974139354}},
        {2.0, 6.0, {-0.011297187559902435, 0.0030790319886837117}},
        {1.0 / 3.0, 50.0, {-0.81276339115523550, 0.0051942929149816688}},
        {1.0 / 6.0, 2.0, {-5.7121182368169594, -0.011981064026240755}},
    };
    for (const auto& c : cases) {
        CAPTURE(c.s);
        CAPTURE(c.x);
        CHECK(close(oscillatory_power_tail(c.s, c.x, 1.0), c.expected, 1e-11));
        CHECK(close(oscillatory_power_tail(c.s, c.x, -1.0), std::conj(c.expected), 1e-11));
    }
}

TEST_CASE("Gauss-Kronrod adaptive integration") {
    const auto r = integrate_adaptive<double>([](double x) { return std::exp(-x * x); }, -6.0, 6.0, 1e-14);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));

    const auto z = integrate_adaptive<cplx>([](double x) { return std::exp(cplx(0.0, 40.0 * x)); }, 0.0, 1.0, 1e-13);
    const cplx exact = (std::exp(cplx(0.0, 40.0)) - 1.0) / cplx(0.0, 40.0);
    CHECK(std::abs(z.value - exact) < 1e-13);
}

TEST_CASE("unattainable tolerance reports non-convergence") {
    const auto r = integrate_adaptive<double>([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-300, 20);
    CHECK_FALSE(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(0.05));
}
