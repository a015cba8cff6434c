#ifndef RYDPOL_INTEGRALS_HPP
#define RYDPOL_INTEGRALS_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rydpol/kernels.hpp"
#include "rydpol/monte_carlo.hpp"
#include "rydpol/quadrature.hpp"

namespace rydpol {

enum class IntegralMethod { Analytic, Quadrature, ShortTime, MonteCarlo };

std::string to_string(IntegralMethod m);
IntegralMethod parse_integral_method(const std::string& text);

/// Volume-averaged interaction integrals over a uniformly filled sphere:
///   I2 = <e^{-i phi_ij} - 1>,
///   J3 = <(e^{-i phi_ij} - 1)(e^{-i phi_is} - 1)>,
///   I3 = <(e^{-i phi_ij} - 1)(e^{-i phi_is} - 1)(e^{-i phi_js} - 1)>.
struct PairIntegrals {
    double t = 0.0;
    std::complex<double> i2;
    std::optional<std::complex<double>> j3;
    std::optional<std::complex<double>> i3;
    IntegralMethod method = IntegralMethod::Quadrature;
    double stat_error = 0.0;  // Monte Carlo only: largest standard error over I2, J3, I3
    std::array<double, 3> component_error{};  // Monte Carlo only: per quantity, max(se_re, se_im)
    double error_estimate = 0.0;  // deterministic methods: absolute error bound/estimate
    bool out_of_range = false;    // t outside the validated range of the method
};

/// Density of the distance u (in units of R) between two points drawn
/// uniformly in a ball of radius 1: 3u^2 - 9u^3/4 + 3u^5/16 on [0, 2].
double pair_distance_pdf(double u);
/// Cumulative distribution of pair_distance_pdf.
double pair_distance_cdf(double u);

/// Weighted pair average
///   int_0^2 p(u) w(u) (e^{-i phi(u,t)} - 1) du
/// with an oscillation-aware split: plain adaptive quadrature where
/// |phi| <= pi, and panels of one period in the phase variable v = t/u^p
/// below, closed by a two-term integration-by-parts tail.
QuadratureResult<std::complex<double>> weighted_pair_average(
    const InteractionModel& model, double t, const std::function<double(double)>& weight, double tol);

/// I2 by deterministic quadrature. Throws QuadratureError when `tol` is missed.
PairIntegrals i2_quadrature(const InteractionModel& model, double t, double tol = 1e-12);

/// I2 from its closed form in terms of upper incomplete gamma functions and
/// the exponential integral of imaginary argument. Exact at t = 0 (returns 0).
PairIntegrals i2_analytic(const InteractionModel& model, double t);

/// Two-term short-time expansion
///   (i - 1) sqrt(pi t / 2) + (9/32)(1 - i sqrt 3) Gamma(1/3) t^{2/3}
/// for attractive van der Waals (conjugated for repulsive). `out_of_range`
/// is set for t > 0.1. Dipole-dipole has no expansion of this form and is
/// rejected.
PairIntegrals i2_short_time(const InteractionModel& model, double t);

/// J3, I3 (and the two-body I2 from the same samples) from i.i.d. uniform
/// triples in the unit ball.
PairIntegrals triple_integrals_mc(const InteractionModel& model, double t, const McSettings& mc);

/// Triple integrals on a time grid, every time evaluated on the same triples.
std::vector<PairIntegrals> triple_integrals_mc_curve(const InteractionModel& model, std::span<const double> ts,
                                                     const McSettings& mc);

inline constexpr double kAnalyticValidMin = 1e-4;
inline constexpr double kAnalyticValidMax = 1e2;
inline constexpr double kShortTimeValidMax = 0.1;

}  // namespace rydpol

#endif  // RYDPOL_INTEGRALS_HPP
