#ifndef RYDPOL_STATE_HPP
#define RYDPOL_STATE_HPP

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace rydpol {

using cplx = std::complex<double>;

/// Amplitudes c_n of the symmetric (phase-matched) Dicke states |n>,
/// n = 0..n_max. Population that left the retained subspace, either through
/// truncation or through collisions into non-symmetric states, is kept in
/// `norm_deficit` so that sum |c_n|^2 + norm_deficit = 1.
struct PolaritonState {
    Eigen::VectorXcd amplitudes;
    cplx alpha{0.0, 0.0};
    double norm_deficit = 0.0;
    bool truncation_warning = false;

    int n_max() const { return static_cast<int>(amplitudes.size()) - 1; }
    double retained_norm() const { return amplitudes.squaredNorm(); }
};

/// Hermitian, positive semidefinite Fock-basis density matrix with trace in
/// (0, 1]. The only way to build one is through a validating factory.
class FockDensityMatrix {
public:
    static constexpr double kHermiticityTolerance = 1e-12;
    static constexpr double kEigenvalueFloor = -1e-10;
    static constexpr double kTraceSlack = 1e-12;

    /// Throws std::domain_error if `rho` violates any invariant.
    static FockDensityMatrix from_matrix(const Eigen::MatrixXcd& rho);
    static FockDensityMatrix pure(const Eigen::VectorXcd& psi);

    const Eigen::MatrixXcd& matrix() const { return rho_; }
    int dimension() const { return static_cast<int>(rho_.rows()); }
    double trace() const { return rho_.trace().real(); }
    double purity() const;

private:
    explicit FockDensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {}
    Eigen::MatrixXcd rho_;
};

enum class ReadoutMode { Renormalized, UnnormalizedWithVacuum };

std::string to_string(ReadoutMode m);
ReadoutMode parse_readout_mode(const std::string& text);

/// Coherent amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!) for n <= n_max.
/// The truncated tail goes to norm_deficit; truncation_warning is set when
/// it exceeds tail_tolerance.
PolaritonState coherent_amplitudes(cplx alpha, int n_max, double tail_tolerance = 1e-10);

/// Collective amplitudes after a resonant pulse of area omega on N
/// non-interacting atoms:
///   C_n = (-i)^n sqrt(B(N, n)) sin^n(omega/2) cos^{N-n}(omega/2).
/// Evaluated in log space. alpha is set to -i sqrt(N) tan(omega/2).
PolaritonState exact_dicke_amplitudes(int atom_count, double omega, int n_max);

/// Photonic density matrix produced by readout.
///  Renormalized:            rho = c c^dagger / sum |c|^2
///  UnnormalizedWithVacuum:  rho = c c^dagger + norm_deficit |0><0|
FockDensityMatrix readout_density_matrix(const PolaritonState& s, ReadoutMode mode = ReadoutMode::Renormalized);

/// log(n!) via lgamma.
double log_factorial(int n);
/// log B(n, k).
double log_binomial(int n, int k);
/// B(n, k) as a double (exact for the small arguments used in expansions).
double binomial(int n, int k);

}  // namespace rydpol

#endif  // RYDPOL_STATE_HPP
