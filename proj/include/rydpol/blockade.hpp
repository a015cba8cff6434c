#ifndef RYDPOL_BLOCKADE_HPP
#define RYDPOL_BLOCKADE_HPP

#include <complex>
#include <string>

#include "rydpol/kernels.hpp"

namespace rydpol {

enum class PulseShape { Square, Gaussian };

std::string to_string(PulseShape s);
PulseShape parse_pulse_shape(const std::string& text);

/// Excitation pulse on [0, duration] (scaled time) with total area `area`.
/// The Gaussian is centred at duration/2 with rms width duration/6 and
/// truncated to the window, renormalised to the requested area.
class ExcitationPulse {
public:
    ExcitationPulse(PulseShape shape, double duration, double area = 1.0);

    PulseShape shape() const { return shape_; }
    double duration() const { return duration_; }
    double area() const { return area_; }

    /// Rabi frequency Omega(t) >= 0; zero outside the window.
    double rabi(double t) const;
    double rabi_derivative(double t) const;
    /// Cumulative area omega(t) = int_0^t Omega.
    double area_until(double t) const;

private:
    PulseShape shape_;
    double duration_;
    double area_;
    double sigma_ = 0.0;
    double norm_ = 0.0;
};

/// Two-atom pair correlation after the pulse,
///   G = 4 |int_0^tau e^{i kappa t} Omega(t) omega(t) dt|^2 / omega(tau)^4,
/// for a pair interaction rate kappa (scaled units). Adaptive quadrature up
/// to |kappa| tau = 1000, two-term boundary expansion beyond.
double pair_correlation(const ExcitationPulse& pulse, double kappa);

/// Closed form of pair_correlation for a square pulse, theta = kappa tau:
///   G = 4/theta^2 + 8 (1 - cos theta)/theta^4 - 8 sin theta / theta^3.
double square_pulse_correlation(double theta);

struct BlockadeCorrection {
    double tau = 0.0;
    double interaction_time = 0.0;
    std::complex<double> ratio;  // I2 weighted by G over bare I2
    double c = 1.0;              // real part of ratio
};

/// c(tau, T): pair integral at time T with each pair weighted by its
/// post-pulse correlation G(kappa_ij), divided by the unweighted I2(T).
/// Throws std::domain_error when T < tau or |I2(T)| < 1e-12.
BlockadeCorrection correction_factor(const ExcitationPulse& pulse, double interaction_time,
                                     const InteractionModel& model);

}  // namespace rydpol

#endif  // RYDPOL_BLOCKADE_HPP
