#include "rydpol/blockade.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rydpol/integrals.hpp"
#include "rydpol/quadrature.hpp"

namespace rydpol {

using cplx = std::complex<double>;

namespace {

constexpr double kAsymptoticTheta = 1000.0;
constexpr double kGaussianWidths = 3.0;  // half-window in units of sigma

}  // namespace

std::string to_string(PulseShape s) { return s == PulseShape::Square ? "square" : "gaussian"; }

PulseShape parse_pulse_shape(const std::string& text) {
    if (text == "square") return PulseShape::Square;
    if (text == "gaussian") return PulseShape::Gaussian;
    throw std::invalid_argument("unknown pulse shape '" + text + "' (expected square|gaussian)");
}

ExcitationPulse::ExcitationPulse(PulseShape shape, double duration, double area)
    : shape_(shape), duration_(duration), area_(area) {
    if (!(duration > 0.0)) throw std::domain_error("ExcitationPulse: duration must be positive");
    if (!(area > 0.0)) throw std::domain_error("ExcitationPulse: area must be positive");
    if (shape_ == PulseShape::Gaussian) {
        sigma_ = duration / (2.0 * kGaussianWidths);
        norm_ = std::erf(kGaussianWidths / std::numbers::sqrt2);
    }
}

double ExcitationPulse::rabi(double t) const {
    if (t < 0.0 || t > duration_) return 0.0;
    if (shape_ == PulseShape::Square) return area_ / duration_;
    const double x = (t - 0.5 * duration_) / sigma_;
    return area_ * std::exp(-0.5 * x * x) / (sigma_ * std::sqrt(2.0 * std::numbers::pi) * norm_);
}

double ExcitationPulse::rabi_derivative(double t) const {
    if (t < 0.0 || t > duration_ || shape_ == PulseShape::Square) return 0.0;
    const double x = (t - 0.5 * duration_) / sigma_;
    return -x / sigma_ * rabi(t);
}

double ExcitationPulse::area_until(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= duration_) return area_;
    if (shape_ == PulseShape::Square) return area_ * t / duration_;
    const double x = (t - 0.5 * duration_) / (sigma_ * std::numbers::sqrt2);
    return area_ * 0.5 * (std::erf(x) + norm_) / norm_;
}

double square_pulse_correlation(double theta) {
    const double a = std::abs(theta);
    if (a < 2.0) {
        // G = 4 |int_0^1 s e^{i a s} ds|^2, expanded termwise; the closed form
        // below cancels catastrophically for small a.
        double re = 0.0, im = 0.0, power = 1.0;
        for (int k = 0; k < 30; ++k) {
            const double term = power / (k + 2.0);
            if (k % 4 == 0) re += term;
            else if (k % 4 == 1) im += term;
            else if (k % 4 == 2) re -= term;
            else im -= term;
            power *= a / (k + 1.0);
        }
        return 4.0 * (re * re + im * im);
    }
    const double a2 = a * a;
    return 4.0 / a2 + 8.0 * (1.0 - std::cos(a)) / (a2 * a2) - 8.0 * std::sin(a) / (a2 * a);
}

double pair_correlation(const ExcitationPulse& pulse, double kappa) {
    const double tau = pulse.duration();
    const double w = pulse.area();
    const double theta = std::abs(kappa) * tau;
    cplx integral;
    if (theta <= kAsymptoticTheta) {
        auto f = [&](double t) -> cplx {
            return cplx(std::cos(kappa * t), std::sin(kappa * t)) * pulse.rabi(t) * pulse.area_until(t);
        };
        const std::size_t panels = 200 + static_cast<std::size_t>(4.0 * theta);
        integral = integrate_adaptive<cplx>(f, 0.0, tau, 1e-13 * w * w, panels).value;
    } else {
        // f = Omega omega vanishes at t = 0, so only the upper boundary survives:
        //   int_0^tau f e^{i k t} = e^{i k tau} [f/(i k) + f'/k^2] + O(k^-3).
        const double f = pulse.rabi(tau) * w;
        const double fp = pulse.rabi_derivative(tau) * w + pulse.rabi(tau) * pulse.rabi(tau);
        const double f0p = pulse.rabi(0.0) * pulse.rabi(0.0);
        integral = cplx(std::cos(kappa * tau), std::sin(kappa * tau)) * (f / cplx(0.0, kappa) + fp / (kappa * kappa)) -
                   f0p / (kappa * kappa);
    }
    return 4.0 * std::norm(integral) / (w * w * w * w);
}

BlockadeCorrection correction_factor(const ExcitationPulse& pulse, double interaction_time,
                                     const InteractionModel& model) {
    const double tau = pulse.duration();
    if (!(interaction_time >= tau))
        throw std::domain_error("correction_factor: interaction time must be at least the pulse duration");
    const double bare = std::abs(i2_quadrature(model, interaction_time).i2);
    if (bare < 1e-12) throw std::domain_error("correction_factor: |I2| too small for a stable ratio");

    auto weight = [&](double u) { return pair_correlation(pulse, phase_magnitude(model, u, 1.0)); };
    const auto weighted = weighted_pair_average(model, interaction_time, weight, 1e-10);
    const auto plain = i2_quadrature(model, interaction_time);

    BlockadeCorrection out;
    out.tau = tau;
    out.interaction_time = interaction_time;
    out.ratio = weighted.value / plain.i2;
    out.c = out.ratio.real();
    return out;
}

}  // namespace rydpol
