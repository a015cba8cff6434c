#ifndef RYDPOL_PARAMS_HPP
#define RYDPOL_PARAMS_HPP

#include <complex>

#include "rydpol/kernels.hpp"

namespace rydpol {

/// Experiment parameters in laboratory units.
///
/// `interaction_coefficient` is |C_p| / (2 pi) in GHz um^p, the figure usually
/// quoted in tables. The 2 pi conversion to an angular frequency happens only
/// in to_scaled().
struct PhysicalParams {
    int atom_count = 0;
    double sphere_radius_um = 0.0;
    double interaction_coefficient = 0.0;
    double pulse_duration_ns = 0.0;
    double interaction_time_ns = 0.0;
    double target_alpha = 1.0;
};

struct ScaledParams {
    double characteristic_time_ns = 0.0;  // T_R
    double scaled_pulse = 0.0;            // tau / T_R
    double scaled_time = 0.0;             // T / T_R
    std::complex<double> alpha;
    int n_max = 2;
};

/// |C_p| in rad/s * um^p from a value quoted as |C_p|/(2 pi) in GHz um^p.
double angular_coefficient(double ghz_times_um_p);

/// T_R = R^p / |C_p| in nanoseconds.
double characteristic_time_ns(double radius_um, double ghz_times_um_p, const InteractionModel& model);

ScaledParams to_scaled(const PhysicalParams& p, const InteractionModel& model);

/// Mean excitation number N omega^2 / 4 (small-area form).
double expected_excitations(int atom_count, double pulse_area);

/// Exact collective amplitude alpha = -i sqrt(N) tan(omega/2).
/// Throws std::domain_error when omega/2 reaches pi/2.
std::complex<double> collective_alpha(int atom_count, double pulse_area);

/// Pulse area producing |alpha| = magnitude: omega = 2 atan(|alpha| / sqrt(N)).
double pulse_area_for_alpha(int atom_count, double magnitude);

/// Smallest n_max with coherent-state tail population below `tail_tolerance`.
int default_n_max(double alpha_magnitude, double tail_tolerance = 1e-10);

}  // namespace rydpol

#endif  // RYDPOL_PARAMS_HPP
