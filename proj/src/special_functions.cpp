#include "rydpol/special_functions.hpp"

#include <cmath>
#include <numbers>

namespace rydpol {

namespace {

constexpr int kMaxIterations = 5000;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

bool is_nonpositive_integer(double b) { return b <= 0.0 && b == std::floor(b); }

// gamma(b, z) = z^b sum_n (-z)^n / (n! (b + n)), b not a non-positive integer.
cplx lower_gamma_series(double b, cplx z) {
    cplx term = 1.0;  // (-z)^n / n!
    cplx sum = 1.0 / b;
    for (int n = 1; n < kMaxIterations; ++n) {
        term *= -z / static_cast<double>(n);
        const cplx add = term / (b + n);
        sum += add;
        if (std::abs(add) < kEps * std::abs(sum)) return std::pow(z, b) * sum;
    }
    throw SpecialFunctionError("lower_gamma_series: no convergence");
}

// Gamma(b, z) = e^{-z} z^b / (z + 1 - b - 1(1-b)/(z + 3 - b - ...)), modified Lentz.
cplx upper_gamma_continued_fraction(double b, cplx z) {
    cplx bb = z + 1.0 - b;
    cplx c = 1.0 / kTiny;
    cplx d = 1.0 / bb;
    cplx h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - b);
        bb += 2.0;
        d = an * d + bb;
        if (std::abs(d) < kTiny) d = kTiny;
        c = bb + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const cplx delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) return std::exp(-z) * std::pow(z, b) * h;
    }
    throw SpecialFunctionError("upper_gamma_continued_fraction: no convergence");
}

}  // namespace

cplx expint_e1(cplx z) {
    if (z == 0.0) throw SpecialFunctionError("expint_e1: pole at z = 0");
    if (std::abs(z) <= 4.0) {
        cplx term = 1.0;
        cplx sum = 0.0;
        for (int n = 1; n < kMaxIterations; ++n) {
            term *= -z / static_cast<double>(n);
            const cplx add = term / static_cast<double>(n);
            sum += add;
            if (std::abs(add) < kEps * std::max(1.0, std::abs(sum)))
                return -std::numbers::egamma - std::log(z) - sum;
        }
        throw SpecialFunctionError("expint_e1: series did not converge");
    }
    return upper_gamma_continued_fraction(0.0, z);
}

cplx upper_gamma(double b, cplx z) {
    if (is_nonpositive_integer(b)) {
        // Gamma(-m, z) = ((-1)^m / m!) [E1(z) - e^{-z} sum_{k<m} (-1)^k k! / z^{k+1}]
        const int m = static_cast<int>(-b);
        if (std::abs(z) > 4.0) return upper_gamma_continued_fraction(b, z);
        cplx finite = 0.0;
        double kfact = 1.0;
        cplx zpow = z;
        for (int k = 0; k < m; ++k) {
            if (k > 0) {
                kfact *= k;
                zpow *= z;
            }
            finite += ((k % 2 == 0) ? 1.0 : -1.0) * kfact / zpow;
        }
        double mfact = 1.0;
        for (int k = 2; k <= m; ++k) mfact *= k;
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        return sign / mfact * (expint_e1(z) - std::exp(-z) * finite);
    }
    if (std::abs(z) <= 4.0) return std::tgamma(b) - lower_gamma_series(b, z);
    return upper_gamma_continued_fraction(b, z);
}

cplx oscillatory_power_tail(double s, double x, double sigma) {
    if (!(s > 0.0) || !(x > 0.0))
        throw SpecialFunctionError("oscillatory_power_tail: requires s > 0 and x > 0");
    const cplx isigma{0.0, sigma};
    if (s == std::floor(s)) {
        // Integration by parts down to int_x^inf e^{i sigma v}/v dv = E1(-i sigma x).
        const int m = static_cast<int>(s);
        const cplx ex = std::exp(isigma * x) - 1.0;
        cplx f = ex / x + isigma * expint_e1(-isigma * x);
        for (int k = 2; k <= m; ++k)
            f = std::pow(x, -k) * ex / static_cast<double>(k) +
                isigma / static_cast<double>(k) * (f + std::pow(x, 1 - k) / static_cast<double>(k - 1));
        return f;
    }
    const cplx rotation = std::polar(1.0, -sigma * std::numbers::pi * s / 2.0);
    if (x <= 4.0) {
        // (i sigma)^{-s} Gamma(-s) - x^{-s} sum_{n>=1} (i sigma x)^n / (n! (n - s));
        // the x^{-s}/s pieces cancel analytically.
        cplx term = 1.0;
        cplx sum = 0.0;
        for (int n = 1; n < kMaxIterations; ++n) {
            term *= isigma * x / static_cast<double>(n);
            const cplx add = term / (n - s);
            sum += add;
            if (std::abs(add) < kEps * std::abs(sum))
                return rotation * std::tgamma(-s) - std::pow(x, -s) * sum;
        }
        throw SpecialFunctionError("oscillatory_power_tail: series did not converge");
    }
    // int_x^inf v^{-s-1} e^{i sigma v} dv = (i sigma)^{-s} Gamma(-s, -i sigma x)
    return rotation * upper_gamma(-s, cplx{0.0, -sigma * x}) - std::pow(x, -s) / s;
}

}  // namespace rydpol
