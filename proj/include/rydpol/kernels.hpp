#ifndef RYDPOL_KERNELS_HPP
#define RYDPOL_KERNELS_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rydpol {

enum class Potential { VanDerWaals, DipoleDipole };
enum class InteractionSign { Attractive, Repulsive };

/// Pairwise interaction kappa_ij = s * |C_p| / r^p.
///
/// In scaled units (distances in R, times in T_R = R^p/|C_p|) the phase
/// accumulated by a pair at separation u after time t is phi = s * t / u^p,
/// and the pair evolves with exp(-i phi). Attractive means s = -1, so the
/// attractive factor is exp(+i t/u^p).
struct InteractionModel {
    Potential potential = Potential::VanDerWaals;
    InteractionSign sign = InteractionSign::Attractive;

    constexpr int exponent() const { return potential == Potential::VanDerWaals ? 6 : 3; }
    constexpr double sign_factor() const { return sign == InteractionSign::Attractive ? -1.0 : 1.0; }

    /// +1 when the pair factor is exp(+i v) with v = t/u^p, -1 otherwise.
    constexpr double oscillation_sign() const { return -sign_factor(); }

    constexpr InteractionModel flipped() const {
        return {potential, sign == InteractionSign::Attractive ? InteractionSign::Repulsive
                                                               : InteractionSign::Attractive};
    }

    friend constexpr bool operator==(const InteractionModel&, const InteractionModel&) = default;
};

inline constexpr InteractionModel kAttractiveVdw{Potential::VanDerWaals, InteractionSign::Attractive};
inline constexpr InteractionModel kRepulsiveVdw{Potential::VanDerWaals, InteractionSign::Repulsive};

/// |phi| = t / u^p without the sign.
inline double phase_magnitude(const InteractionModel& model, double u, double t) {
    const double up = model.exponent() == 6 ? [&] { const double u3 = u * u * u; return u3 * u3; }()
                                            : u * u * u;
    return t / up;
}

/// Signed pair phase phi(u, t) in radians. Throws for coincident atoms.
inline double pair_phase(const InteractionModel& model, double u, double t) {
    if (!(u > 0.0))
        throw std::domain_error("pair_phase: separation must be positive");
    if (!(t >= 0.0))
        throw std::domain_error("pair_phase: time must be non-negative");
    return model.sign_factor() * phase_magnitude(model, u, t);
}

/// exp(-i phi) for a pair at separation u, i.e. exp(i * sigma * t/u^p).
inline std::complex<double> pair_factor(const InteractionModel& model, double u, double t) {
    const double v = phase_magnitude(model, u, t);
    return {std::cos(v), model.oscillation_sign() * std::sin(v)};
}

std::string to_string(Potential p);
std::string to_string(InteractionSign s);
Potential parse_potential(std::string_view text);
InteractionSign parse_sign(std::string_view text);

}  // namespace rydpol

#endif  // RYDPOL_KERNELS_HPP
