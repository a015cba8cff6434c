#include "rydpol/wigner.hpp"

#include <cmath>
#include <numbers>

namespace rydpol {

namespace {

constexpr double kInvPi = std::numbers::inv_pi;

// sum_{m,n} rho_mn <n| D(a) P D(a)^dagger |m> with P the parity operator,
// a = (q + i p)/sqrt 2. For m = n + k:
//   <n|D P D^dagger|n+k> = (-1)^n sqrt(n!/(n+k)!) (2 conj a)^k e^{-x/2} L_n^{(k)}(x),  x = 4|a|^2.
double displaced_parity(const Eigen::MatrixXcd& rho, double q, double p) {
    const int dim = static_cast<int>(rho.rows());
    const double x = 2.0 * (q * q + p * p);
    const double theta = std::atan2(p, q);
    const double log_x = std::log(x);
    double total = 0.0;
    for (int k = 0; k < dim; ++k) {
        // g_n = sqrt(n!/(n+k)!) L_n^{(k)}(x) x^{k/2} e^{-x/2}
        double g_prev = 0.0;
        double g = k == 0 ? std::exp(-0.5 * x)
                          : (x == 0.0 ? 0.0 : std::exp(0.5 * k * log_x - 0.5 * x - 0.5 * std::lgamma(k + 1.0)));
        if (g == 0.0 && k > 0) continue;
        cplx diagonal_sum = 0.0;
        for (int n = 0; n + k < dim; ++n) {
            const double parity = (n % 2 == 0) ? 1.0 : -1.0;
            diagonal_sum += parity * g * rho(n + k, n);
            const double g_next =
                ((2.0 * n + 1.0 + k - x) * g - std::sqrt(static_cast<double>(n) * (n + k)) * g_prev) /
                std::sqrt((n + 1.0) * (n + 1.0 + k));
            g_prev = g;
            g = g_next;
        }
        const cplx phase = std::polar(1.0, -k * theta);
        total += (k == 0 ? 1.0 : 2.0) * (diagonal_sum * phase).real();
    }
    return total;
}

}  // namespace

Eigen::VectorXd GridAxis::points() const {
    if (!(step > 0.0) || !(hi >= lo)) throw std::domain_error("GridAxis: need step > 0 and hi >= lo");
    const auto n = static_cast<Eigen::Index>(std::floor((hi - lo) / step + 0.5)) + 1;
    Eigen::VectorXd pts(n);
    for (Eigen::Index i = 0; i < n; ++i) pts(i) = lo + step * static_cast<double>(i);
    return pts;
}

double WignerGrid::cell_area() const {
    const double dq = q_axis.size() > 1 ? q_axis(1) - q_axis(0) : 1.0;
    const double dp = p_axis.size() > 1 ? p_axis(1) - p_axis(0) : 1.0;
    return dq * dp;
}

double wigner_at(const FockDensityMatrix& rho, double q, double p) {
    return kInvPi * displaced_parity(rho.matrix(), q, p);
}

WignerGrid wigner_of(const FockDensityMatrix& rho, const GridAxis& q, const GridAxis& p) {
    WignerGrid w;
    w.q_axis = q.points();
    w.p_axis = p.points();
    w.values.resize(w.q_axis.size(), w.p_axis.size());
    for (Eigen::Index i = 0; i < w.q_axis.size(); ++i)
        for (Eigen::Index j = 0; j < w.p_axis.size(); ++j)
            w.values(i, j) = wigner_at(rho, w.q_axis(i), w.p_axis(j));
    w.normalization_deficit = std::abs(rho.trace() - w.integrate([](double v) { return v; }));
    w.coverage_warning = w.normalization_deficit > 1e-3;
    return w;
}

Negativity negativity(const WignerGrid& w) {
    Negativity n;
    n.min_value = w.values.minCoeff();
    n.negative_volume = w.integrate([](double v) { return std::abs(v) - v; });
    return n;
}

double purity(const FockDensityMatrix& rho) { return rho.purity(); }

double grid_purity(const WignerGrid& w) {
    return 2.0 * std::numbers::pi * w.integrate([](double v) { return v * v; });
}

double fidelity_to_truncated(const FockDensityMatrix& rho, std::complex<double> alpha) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(std::max(2, rho.dimension()));
    psi(0) = 1.0;
    psi(1) = alpha;
    psi /= std::sqrt(1.0 + std::norm(alpha));
    if (rho.dimension() == 1) return std::norm(psi(0)) * rho.matrix()(0, 0).real();
    return (psi.head(rho.dimension()).adjoint() * rho.matrix() * psi.head(rho.dimension()))(0, 0).real();
}

}  // namespace rydpol
