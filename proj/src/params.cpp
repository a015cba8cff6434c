#include "rydpol/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rydpol {

double angular_coefficient(double ghz_times_um_p) {
    return 2.0 * std::numbers::pi * ghz_times_um_p * 1e9;
}

double characteristic_time_ns(double radius_um, double ghz_times_um_p, const InteractionModel& model) {
    if (!(radius_um > 0.0) || !(ghz_times_um_p > 0.0))
        throw std::domain_error("characteristic_time_ns: radius and coefficient must be positive");
    const double seconds = std::pow(radius_um, model.exponent()) / angular_coefficient(ghz_times_um_p);
    return seconds * 1e9;
}

ScaledParams to_scaled(const PhysicalParams& p, const InteractionModel& model) {
    if (p.atom_count < 1) throw std::domain_error("to_scaled: atom count must be at least 1");
    if (!(p.sphere_radius_um > 0.0) || !(p.interaction_coefficient > 0.0) ||
        !(p.pulse_duration_ns > 0.0) || !(p.interaction_time_ns > 0.0) || !(p.target_alpha > 0.0))
        throw std::domain_error("to_scaled: all physical parameters must be strictly positive");

    ScaledParams s;
    s.characteristic_time_ns = characteristic_time_ns(p.sphere_radius_um, p.interaction_coefficient, model);
    s.scaled_pulse = p.pulse_duration_ns / s.characteristic_time_ns;
    s.scaled_time = p.interaction_time_ns / s.characteristic_time_ns;
    s.alpha = {0.0, -p.target_alpha};
    s.n_max = std::max(2, default_n_max(p.target_alpha));
    return s;
}

double expected_excitations(int atom_count, double pulse_area) {
    if (!(pulse_area >= 0.0)) throw std::domain_error("expected_excitations: pulse area must be non-negative");
    return atom_count * pulse_area * pulse_area / 4.0;
}

std::complex<double> collective_alpha(int atom_count, double pulse_area) {
    if (!(pulse_area >= 0.0) || pulse_area >= std::numbers::pi)
        throw std::domain_error("collective_alpha: pulse area must lie in [0, pi); tan(omega/2) diverges at pi");
    return {0.0, -std::sqrt(static_cast<double>(atom_count)) * std::tan(pulse_area / 2.0)};
}

double pulse_area_for_alpha(int atom_count, double magnitude) {
    if (atom_count < 1 || !(magnitude >= 0.0))
        throw std::domain_error("pulse_area_for_alpha: need N >= 1 and |alpha| >= 0");
    return 2.0 * std::atan(magnitude / std::sqrt(static_cast<double>(atom_count)));
}

int default_n_max(double alpha_magnitude, double tail_tolerance) {
    // Tail of the Poisson distribution with mean |alpha|^2 beyond n.
    const double mean = alpha_magnitude * alpha_magnitude;
    double term = std::exp(-mean);
    double captured = term;
    int n = 0;
    while (1.0 - captured >= tail_tolerance && n < 170) {
        ++n;
        term *= mean / n;
        captured += term;
        // 1 - captured loses precision near the tolerance; bound the tail by
        // the next term geometric series once terms are decreasing.
        if (n + 1 > mean) {
            const double next = term * mean / (n + 1);
            const double ratio = mean / (n + 2);
            if (ratio < 1.0 && next / (1.0 - ratio) < tail_tolerance) break;
        }
    }
    return n;
}

}  // namespace rydpol
