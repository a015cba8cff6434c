#ifndef RYDPOL_WIGNER_HPP
#define RYDPOL_WIGNER_HPP

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "rydpol/state.hpp"

namespace rydpol {

/// Uniform axis lo, lo + step, ..., up to hi (inclusive within step/2).
struct GridAxis {
    double lo = -5.0;
    double hi = 5.0;
    double step = 0.05;

    Eigen::VectorXd points() const;
};

/// Wigner function sampled on a (q, p) grid.
///
/// Convention: q = (a + a^dagger)/sqrt 2, p = (a - a^dagger)/(i sqrt 2),
/// [q, p] = i, so the vacuum is W = exp(-q^2 - p^2)/pi and a coherent state
/// |alpha> is centred at (sqrt2 Re alpha, sqrt2 Im alpha).
struct WignerGrid {
    Eigen::VectorXd q_axis;
    Eigen::VectorXd p_axis;
    Eigen::MatrixXd values;  // values(i, j) = W(q_axis[i], p_axis[j])
    std::string convention = "vacuum-variance-1/2";
    double normalization_deficit = 0.0;  // |Tr rho - grid integral|
    bool coverage_warning = false;

    /// Trapezoidal integral of f(W) over the grid.
    template <typename F>
    double integrate(F&& f) const {
        double sum = 0.0;
        const Eigen::Index nq = values.rows(), np = values.cols();
        for (Eigen::Index i = 0; i < nq; ++i) {
            const double wq = (i == 0 || i == nq - 1) ? 0.5 : 1.0;
            for (Eigen::Index j = 0; j < np; ++j) {
                const double wp = (j == 0 || j == np - 1) ? 0.5 : 1.0;
                sum += wq * wp * f(values(i, j));
            }
        }
        return sum * cell_area();
    }
    double cell_area() const;
};

/// W(q, p) for a single phase-space point.
double wigner_at(const FockDensityMatrix& rho, double q, double p);

/// Evaluates W on the grid. Each point uses a normalised Laguerre
/// recurrence so no factorials are formed. Sets coverage_warning when the
/// grid integral misses Tr rho by more than 1e-3.
WignerGrid wigner_of(const FockDensityMatrix& rho, const GridAxis& q, const GridAxis& p);

struct Negativity {
    double min_value = 0.0;
    /// int |W| - int W, i.e. twice the volume below zero; equals int |W| - 1
    /// for unit-trace states.
    double negative_volume = 0.0;
};

Negativity negativity(const WignerGrid& w);

/// Tr rho^2.
double purity(const FockDensityMatrix& rho);
/// 2 pi int W^2 dq dp; equals Tr rho^2 under the grid convention.
double grid_purity(const WignerGrid& w);

/// <psi| rho |psi> with |psi> = (|0> + alpha |1>) / sqrt(1 + |alpha|^2).
double fidelity_to_truncated(const FockDensityMatrix& rho, std::complex<double> alpha);

}  // namespace rydpol

#endif  // RYDPOL_WIGNER_HPP
