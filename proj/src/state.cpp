#include "rydpol/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rydpol {

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double log_binomial(int n, int k) { return log_factorial(n) - log_factorial(k) - log_factorial(n - k); }

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

std::string to_string(ReadoutMode m) {
    return m == ReadoutMode::Renormalized ? "renormalized" : "unnormalized";
}

ReadoutMode parse_readout_mode(const std::string& text) {
    if (text == "renormalized") return ReadoutMode::Renormalized;
    if (text == "unnormalized" || text == "unnormalized-with-vacuum") return ReadoutMode::UnnormalizedWithVacuum;
    throw std::invalid_argument("unknown readout mode '" + text + "' (expected renormalized|unnormalized)");
}

FockDensityMatrix FockDensityMatrix::from_matrix(const Eigen::MatrixXcd& rho) {
    if (rho.rows() == 0 || rho.rows() != rho.cols())
        throw std::domain_error("density matrix must be square and non-empty");
    if (!rho.allFinite()) throw std::domain_error("density matrix has non-finite entries");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTolerance)
        throw std::domain_error("density matrix is not Hermitian");
    const double tr = rho.trace().real();
    if (!(tr > 0.0) || tr > 1.0 + kTraceSlack)
        throw std::domain_error("density matrix trace must lie in (0, 1]");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < kEigenvalueFloor)
        throw std::domain_error("density matrix is not positive semidefinite");
    // Store the exactly Hermitian part.
    return FockDensityMatrix(0.5 * (rho + rho.adjoint()));
}

FockDensityMatrix FockDensityMatrix::pure(const Eigen::VectorXcd& psi) {
    return from_matrix(psi * psi.adjoint());
}

double FockDensityMatrix::purity() const {
    // Tr rho^2 = sum |rho_nm|^2 for Hermitian rho.
    return rho_.cwiseAbs2().sum();
}

PolaritonState coherent_amplitudes(cplx alpha, int n_max, double tail_tolerance) {
    if (n_max < 0) throw std::domain_error("coherent_amplitudes: n_max must be non-negative");
    PolaritonState s;
    s.alpha = alpha;
    s.amplitudes = Eigen::VectorXcd::Zero(n_max + 1);
    const double r = std::abs(alpha);
    const double phase = std::arg(alpha);
    if (r == 0.0) {
        s.amplitudes(0) = 1.0;
        return s;
    }
    const double log_r = std::log(r);
    for (int n = 0; n <= n_max; ++n) {
        const double log_mag = -0.5 * r * r + n * log_r - 0.5 * log_factorial(n);
        s.amplitudes(n) = std::polar(std::exp(log_mag), n * phase);
    }
    s.norm_deficit = std::max(0.0, 1.0 - s.amplitudes.squaredNorm());
    s.truncation_warning = s.norm_deficit > tail_tolerance;
    return s;
}

PolaritonState exact_dicke_amplitudes(int atom_count, double omega, int n_max) {
    if (atom_count < 1) throw std::domain_error("exact_dicke_amplitudes: N must be at least 1");
    if (n_max < 0 || n_max > atom_count) throw std::domain_error("exact_dicke_amplitudes: need 0 <= n_max <= N");
    if (!(omega >= 0.0) || omega >= std::numbers::pi)
        throw std::domain_error("exact_dicke_amplitudes: pulse area must lie in [0, pi)");

    PolaritonState s;
    s.amplitudes = Eigen::VectorXcd::Zero(n_max + 1);
    s.alpha = {0.0, -std::sqrt(static_cast<double>(atom_count)) * std::tan(omega / 2.0)};
    if (omega == 0.0) {
        s.amplitudes(0) = 1.0;
        return s;
    }
    const double log_sin = std::log(std::sin(omega / 2.0));
    const double log_cos = std::log(std::cos(omega / 2.0));
    // (-i)^n cycles through 1, -i, -1, i.
    static const cplx kPhases[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    for (int n = 0; n <= n_max; ++n) {
        const double log_mag = 0.5 * log_binomial(atom_count, n) + n * log_sin + (atom_count - n) * log_cos;
        s.amplitudes(n) = kPhases[n % 4] * std::exp(log_mag);
    }
    s.norm_deficit = std::max(0.0, 1.0 - s.amplitudes.squaredNorm());
    return s;
}

FockDensityMatrix readout_density_matrix(const PolaritonState& s, ReadoutMode mode) {
    const double norm = s.retained_norm();
    if (s.amplitudes.size() == 0 || !(norm > 0.0))
        throw std::domain_error("readout_density_matrix: state has zero norm");
    Eigen::MatrixXcd rho = s.amplitudes * s.amplitudes.adjoint();
    if (mode == ReadoutMode::Renormalized) {
        rho /= norm;
    } else {
        rho(0, 0) += s.norm_deficit;
    }
    return FockDensityMatrix::from_matrix(rho);
}

}  // namespace rydpol
