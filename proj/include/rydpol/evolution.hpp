#ifndef RYDPOL_EVOLUTION_HPP
#define RYDPOL_EVOLUTION_HPP

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydpol/integrals.hpp"
#include "rydpol/kernels.hpp"
#include "rydpol/monte_carlo.hpp"
#include "rydpol/state.hpp"

namespace rydpol {

enum class UnMethod { AnsatzM2, AnsatzM3, Expansion, MonteCarlo };

std::string to_string(UnMethod m);
UnMethod parse_un_method(const std::string& text);

struct UnPoint {
    double t = 0.0;
    cplx value{1.0, 0.0};
    double stat_error = 0.0;
};

/// U_n(t) = <n| exp(-i H_c T) |n> sampled along a time grid.
struct UnCurve {
    int n = 0;
    UnMethod method = UnMethod::AnsatzM2;
    std::vector<UnPoint> points;
};

class BranchAmbiguityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Scaling exponent n(n-1) / (m(m-1)), i.e. B(n,m) * lambda_nm with
/// lambda_nm = B(n,2) / (B(n,m) B(m,2)).
double ansatz_exponent(int n, int base_m);

/// base^exponent using the branch of arg(base) closest to reference_phase.
/// Without a reference the principal branch is used, which is refused for a
/// non-integer exponent when |base| is too small to fix the phase.
cplx continued_power(cplx base, double exponent, std::optional<double> reference_phase = std::nullopt);

/// U_n from the scaling ansatz given U_m at the same time.
cplx un_ansatz(int n, int base_m, cplx base_value, std::optional<double> reference_phase = std::nullopt);

/// (1 + I2(t))^{n(n-1)/2} with I2 from deterministic quadrature.
cplx un_ansatz_m2(int n, const InteractionModel& model, double t);

/// Ansatz curve on a time grid from base values U_m(t_k). The phase of the
/// base is unwrapped along the grid so the power never jumps branch.
/// `base_errors` (optional, same length) is propagated to first order.
UnCurve ansatz_curve(int n, int base_m, std::span<const double> ts, std::span<const cplx> base_values,
                     std::span<const double> base_errors = {});

/// Ansatz curve from m = 2 using quadrature I2.
UnCurve ansatz_m2_curve(int n, std::span<const double> ts, const InteractionModel& model);

/// Three-body expansion 1 + B(n,2) I2 + 3 B(n,3) J3 + B(n,3) I3. Exact for
/// n <= 3, leading order beyond.
cplx un_expansion(int n, const PairIntegrals& integrals);

/// Monte-Carlo average of exp(-i sum_{i<j} phi_ij) over uniform n-tuples in
/// the unit ball.
McEstimate un_mc_oracle(int n, double t, const InteractionModel& model, const McSettings& mc);

/// Same estimator on a whole time grid, reusing each sampled n-tuple for
/// every time.
std::vector<McEstimate> un_mc_curve(int n, std::span<const double> ts, const InteractionModel& model,
                                    const McSettings& mc);

/// U_n curve by any method. Expansion combines quadrature I2 with Monte-Carlo
/// J3, I3; ansatz-m3 takes U_3 from the Monte-Carlo oracle.
UnCurve un_curve(int n, UnMethod method, std::span<const double> ts, const InteractionModel& model,
                 const McSettings& mc);

struct EvolveOptions {
    UnMethod method = UnMethod::AnsatzM2;
    McSettings mc{};
};

/// U_0 .. U_{n_max} at time t.
std::vector<UnPoint> un_values(int n_max, double t, const InteractionModel& model, const EvolveOptions& options);

/// c_n(t) = c_n(0) U_n(t). Population lost from the symmetric subspace is
/// added to norm_deficit.
PolaritonState evolve_state(const PolaritonState& s, double t, const InteractionModel& model,
                            const EvolveOptions& options = {});

}  // namespace rydpol

#endif  // RYDPOL_EVOLUTION_HPP
