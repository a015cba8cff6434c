#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "rydpol/state.hpp"
#include "rydpol/wigner.hpp"

using namespace rydpol;

namespace {

constexpr double kInvPi = std::numbers::inv_pi;

Eigen::VectorXcd fock(int n, int dim) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(n) = 1.0;
    return v;
}

// (1/pi) Tr[rho D(b) P D(b)^dagger] with the displacement built by matrix exponential.
double brute_force_wigner(const Eigen::MatrixXcd& rho, double q, double p) {
    const int big = 90;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(big, big);
    for (int n = 1; n < big; ++n) a(n - 1, n) = std::sqrt(double(n));
    const cplx beta(q / std::sqrt(2.0), p / std::sqrt(2.0));
    const Eigen::MatrixXcd gen = beta * a.adjoint() - std::conj(beta) * a;
    const Eigen::MatrixXcd d = gen.exp();
    Eigen::MatrixXcd parity = Eigen::MatrixXcd::Zero(big, big);
    for (int n = 0; n < big; ++n) parity(n, n) = n % 2 ? -1.0 : 1.0;
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(big, big);
    r.topLeftCorner(rho.rows(), rho.cols()) = rho;
    return kInvPi * (r * d * parity * d.adjoint()).trace().real();
}

FockDensityMatrix random_state(int dim, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = cplx(g(gen), g(gen));
    Eigen::MatrixXcd rho = m * m.adjoint();
    rho /= rho.trace().real();
    return FockDensityMatrix::from_matrix(rho);
}

const GridAxis kDefault{};

}  // namespace

TEST_CASE("Fock states at the origin") {
    CHECK(wigner_at(FockDensityMatrix::pure(fock(0, 1)), 0.0, 0.0) == doctest::Approx(kInvPi).epsilon(1e-12));
    CHECK(std::abs(wigner_at(FockDensityMatrix::pure(fock(0, 3)), 0.0, 0.0) - kInvPi) < 1e-9);
    CHECK(std::abs(wigner_at(FockDensityMatrix::pure(fock(1, 3)), 0.0, 0.0) + kInvPi) < 1e-9);
    for (int n = 0; n < 10; ++n)
        CHECK(std::abs(wigner_at(FockDensityMatrix::pure(fock(n, 10)), 0.0, 0.0) - (n % 2 ? -kInvPi : kInvPi)) < 1e-9);
}

TEST_CASE("vacuum is the Gaussian e^{-q^2-p^2}/pi") {
    const auto rho = FockDensityMatrix::pure(fock(0, 4));
    for (double q : {-1.3, 0.2, 2.0})
        for (double p : {-0.7, 0.0, 1.1})
            CHECK(wigner_at(rho, q, p) == doctest::Approx(kInvPi * std::exp(-q * q - p * p)).epsilon(1e-12));
}

TEST_CASE("coherent state centred at (sqrt 2 Re alpha, sqrt 2 Im alpha)") {
    const auto s = coherent_amplitudes(1.0, 40);
    const auto rho = readout_density_matrix(s);
    CHECK(wigner_at(rho, std::sqrt(2.0), 0.0) == doctest::Approx(kInvPi).epsilon(1e-9));
    const double q0 = std::sqrt(2.0);
    for (double dq : {-0.5, 0.3})
        CHECK(wigner_at(rho, q0 + dq, 0.4) == doctest::Approx(kInvPi * std::exp(-dq * dq - 0.16)).epsilon(1e-9));
}

TEST_CASE("Laguerre kernel matches brute-force displaced parity") {
    for (unsigned seed : {1u, 2u, 3u}) {
        const auto rho = random_state(7, seed);
        for (auto [q, p] : {std::pair{0.0, 0.0}, {0.4, -1.2}, {-2.1, 0.9}, {1.5, 1.5}, {3.0, -0.2}}) {
            CAPTURE(seed);
            CAPTURE(q);
            CAPTURE(p);
            CHECK(std::abs(wigner_at(rho, q, p) - brute_force_wigner(rho.matrix(), q, p)) < 1e-10);
        }
    }
}

TEST_CASE("grid invariants") {
    const auto rhos = {FockDensityMatrix::pure(fock(0, 3)), FockDensityMatrix::pure(fock(1, 3)),
                       random_state(6, 9), readout_density_matrix(coherent_amplitudes(cplx(0.5, -0.8), 14))};
    for (const auto& rho : rhos) {
        const auto w = wigner_of(rho, kDefault, kDefault);
        CHECK(w.values.rows() == 201);
        CHECK(w.values.cwiseAbs().maxCoeff() <= kInvPi * (1.0 + 1e-12));
        CHECK(w.values.minCoeff() >= -kInvPi * (1.0 + 1e-6));
        CHECK(w.normalization_deficit < 1e-3);
        CHECK_FALSE(w.coverage_warning);
        CHECK(std::abs(grid_purity(w) - purity(rho)) < 1e-3);
    }
}

TEST_CASE("small grids report their coverage") {
    const auto w = wigner_of(FockDensityMatrix::pure(fock(2, 3)), {-1.0, 1.0, 0.1}, {-1.0, 1.0, 0.1});
    CHECK(w.coverage_warning);
    CHECK(w.normalization_deficit > 1e-3);
}

TEST_CASE("negativity") {
    const auto vac = wigner_of(FockDensityMatrix::pure(fock(0, 2)), kDefault, kDefault);
    CHECK(negativity(vac).min_value >= 0.0);
    CHECK(negativity(vac).negative_volume == 0.0);

    Eigen::VectorXcd psi(2);
    psi << 1.0, 1.0;
    psi /= std::sqrt(2.0);
    const auto cat = wigner_of(FockDensityMatrix::pure(psi), kDefault, kDefault);
    CHECK(negativity(cat).min_value < 0.0);
    CHECK(negativity(cat).negative_volume > 0.0);
}

TEST_CASE("purity and fidelity") {
    Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Zero(2, 2);
    mixed(0, 0) = mixed(1, 1) = 0.5;
    CHECK(purity(FockDensityMatrix::from_matrix(mixed)) == doctest::Approx(0.5));

    const cplx alpha(0.3, -0.9);
    Eigen::VectorXcd psi(3);
    psi << 1.0, alpha, 0.0;
    psi /= psi.norm();
    CHECK(fidelity_to_truncated(FockDensityMatrix::pure(psi), alpha) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity_to_truncated(FockDensityMatrix::pure(fock(0, 3)), 1.0) == doctest::Approx(0.5));
    CHECK(fidelity_to_truncated(FockDensityMatrix::pure(fock(0, 1)), 1.0) == doctest::Approx(0.5));
}

TEST_CASE("phase of alpha rotates the Wigner function") {
    const double theta = 0.7;
    const auto a = readout_density_matrix(coherent_amplitudes(cplx(0.8, 0.3), 16));
    const auto b = readout_density_matrix(coherent_amplitudes(std::polar(1.0, theta) * cplx(0.8, 0.3), 16));
    for (auto [q, p] : {std::pair{0.1, 0.2}, {1.2, -0.4}, {-0.9, 1.7}}) {
        const double qr = std::cos(theta) * q - std::sin(theta) * p;
        const double pr = std::sin(theta) * q + std::cos(theta) * p;
        CHECK(std::abs(wigner_at(b, qr, pr) - wigner_at(a, q, p)) < 1e-12);
    }
}
