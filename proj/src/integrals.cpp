#include "rydpol/integrals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rydpol/special_functions.hpp"

namespace rydpol {

using cplx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
// Number of full periods integrated in the phase variable before the
// asymptotic tail takes over.
constexpr int kPhasePanels = 1024;
constexpr std::uint64_t kTripleStream = 0x3a3b3c;

struct Monomial {
    int power;
    double coefficient;
};
constexpr std::array<Monomial, 3> kPdfTerms{{{2, 3.0}, {3, -9.0 / 4.0}, {5, 3.0 / 16.0}}};

void require_time(double t, const char* who) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::domain_error(std::string(who) + ": scaled time must be finite and non-negative");
}

}  // namespace

std::string to_string(IntegralMethod m) {
    switch (m) {
        case IntegralMethod::Analytic: return "analytic";
        case IntegralMethod::Quadrature: return "quadrature";
        case IntegralMethod::ShortTime: return "short-time";
        case IntegralMethod::MonteCarlo: return "mc";
    }
    return "unknown";
}

IntegralMethod parse_integral_method(const std::string& text) {
    if (text == "analytic") return IntegralMethod::Analytic;
    if (text == "quadrature") return IntegralMethod::Quadrature;
    if (text == "short-time") return IntegralMethod::ShortTime;
    if (text == "mc") return IntegralMethod::MonteCarlo;
    throw std::invalid_argument("unknown integral method '" + text + "'");
}

double pair_distance_pdf(double u) {
    if (u < 0.0 || u > 2.0) return 0.0;
    const double u2 = u * u;
    return u2 * (3.0 - 2.25 * u + 0.1875 * u2 * u);
}

double pair_distance_cdf(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 2.0) return 1.0;
    const double u3 = u * u * u;
    return u3 * (1.0 - 0.5625 * u + 0.03125 * u3);
}

QuadratureResult<cplx> weighted_pair_average(const InteractionModel& model, double t,
                                             const std::function<double(double)>& weight, double tol) {
    require_time(t, "weighted_pair_average");
    QuadratureResult<cplx> out;
    if (t == 0.0) return out;

    const int p = model.exponent();
    const double sigma = model.oscillation_sign();
    const double inv_p = 1.0 / p;
    // Below u_star the phase exceeds pi.
    double u_star = std::pow(t / kPi, inv_p);
    double v_star = kPi;
    if (u_star >= 2.0) {
        u_star = 2.0;
        v_star = phase_magnitude(model, 2.0, t);
    }

    const double share = tol / 4.0;

    if (u_star < 2.0) {
        auto outer = [&](double u) -> cplx {
            const double v = phase_magnitude(model, u, t);
            return pair_distance_pdf(u) * weight(u) * cplx(std::cos(v) - 1.0, sigma * std::sin(v));
        };
        auto r = integrate_adaptive<cplx>(outer, u_star, 2.0, share);
        out.value += r.value;
        out.error += r.error;
        out.evaluations += r.evaluations;
        out.converged = out.converged && r.converged;
    }

    // -int_0^{u_star} p w du: the non-oscillating half of the inner region.
    {
        auto mass = [&](double u) { return pair_distance_pdf(u) * weight(u); };
        auto r = integrate_adaptive<double>(mass, 0.0, u_star, share);
        out.value -= r.value;
        out.error += r.error;
        out.evaluations += r.evaluations;
        out.converged = out.converged && r.converged;
    }

    // int_{v_star}^inf h(v) e^{i sigma v} dv with u = (t/v)^{1/p}, |du/dv| = u/(p v).
    auto amplitude = [&](double v) {
        const double u = std::pow(t / v, inv_p);
        return pair_distance_pdf(u) * weight(u) * u * inv_p / v;
    };
    auto oscillating = [&](double v) -> cplx {
        return amplitude(v) * cplx(std::cos(v), sigma * std::sin(v));
    };
    const double panel_tol = share / kPhasePanels;
    double v0 = v_star;
    for (int k = 0; k < kPhasePanels; ++k) {
        const double v1 = v0 + 2.0 * kPi;
        auto r = integrate_adaptive<cplx>(oscillating, v0, v1, panel_tol, 64);
        out.value += r.value;
        out.error += r.error;
        out.evaluations += r.evaluations;
        out.converged = out.converged && r.converged;
        v0 = v1;
    }

    // Tail: int_V^inf h e^{i sigma v} = e^{i sigma V} [i sigma h(V) - h'(V) - i sigma h''(V) + ...]
    const double big_v = v0;
    const double dv = 1e-3 * big_v;
    const double h = amplitude(big_v);
    const double hm = amplitude(big_v - dv);
    const double hp = amplitude(big_v + dv);
    const double dh = (hp - hm) / (2.0 * dv);
    const double d2h = (hp - 2.0 * h + hm) / (dv * dv);
    out.value += cplx(std::cos(big_v), sigma * std::sin(big_v)) * cplx(-dh, sigma * h);
    out.error += std::abs(d2h) + 1e-6 * std::abs(dh);
    out.evaluations += 3;
    out.converged = out.converged && out.error <= tol;
    return out;
}

PairIntegrals i2_quadrature(const InteractionModel& model, double t, double tol) {
    require_time(t, "i2_quadrature");
    auto r = weighted_pair_average(model, t, [](double) { return 1.0; }, tol);
    if (!r.converged)
        throw QuadratureError<cplx>("i2_quadrature: tolerance not reached at t = " + std::to_string(t), r);
    PairIntegrals out;
    out.t = t;
    out.i2 = r.value;
    out.method = IntegralMethod::Quadrature;
    out.error_estimate = r.error;
    return out;
}

PairIntegrals i2_analytic(const InteractionModel& model, double t) {
    require_time(t, "i2_analytic");
    PairIntegrals out;
    out.t = t;
    out.method = IntegralMethod::Analytic;
    out.out_of_range = t < kAnalyticValidMin || t > kAnalyticValidMax;
    if (t == 0.0) return out;

    // Each monomial c u^k of the pair density contributes
    //   (c/p) t^{(k+1)/p} int_{t/2^p}^inf v^{-(k+1)/p - 1} (e^{i sigma v} - 1) dv.
    const int p = model.exponent();
    const double x = phase_magnitude(model, 2.0, t);
    const double sigma = model.oscillation_sign();
    cplx sum = 0.0;
    for (const auto& term : kPdfTerms) {
        const double s = static_cast<double>(term.power + 1) / p;
        sum += term.coefficient / p * std::pow(t, s) * oscillatory_power_tail(s, x, sigma);
    }
    out.i2 = sum;
    return out;
}

PairIntegrals i2_short_time(const InteractionModel& model, double t) {
    require_time(t, "i2_short_time");
    if (model.potential != Potential::VanDerWaals)
        throw std::domain_error("i2_short_time: only defined for van der Waals interactions");
    PairIntegrals out;
    out.t = t;
    out.method = IntegralMethod::ShortTime;
    out.out_of_range = t > kShortTimeValidMax;
    if (t == 0.0) return out;
    const double sigma = model.oscillation_sign();
    const double lead = std::sqrt(kPi * t / 2.0);
    const double next = 9.0 / 32.0 * std::tgamma(1.0 / 3.0) * std::cbrt(t * t);
    out.i2 = cplx(-lead, sigma * lead) + cplx(next, -sigma * std::sqrt(3.0) * next);
    return out;
}

std::vector<PairIntegrals> triple_integrals_mc_curve(const InteractionModel& model, std::span<const double> ts,
                                                     const McSettings& mc) {
    for (double t : ts) require_time(t, "triple_integrals_mc");
    if (mc.samples < 1000) throw std::domain_error("triple_integrals_mc: at least 1000 samples required");
    const std::size_t nt = ts.size();
    const double sigma = model.oscillation_sign();

    // Per sample only the three inverse powers 1/u^p are needed; each time
    // then costs three sincos evaluations.
    auto draw = [&](Xoshiro256& rng, std::span<cplx> out) {
        Eigen::Vector3d ri, rj, rs;
        double uij, uis, ujs;
        do {
            ri = rng.in_unit_ball();
            rj = rng.in_unit_ball();
            rs = rng.in_unit_ball();
            uij = (ri - rj).norm();
            uis = (ri - rs).norm();
            ujs = (rj - rs).norm();
        } while (uij == 0.0 || uis == 0.0 || ujs == 0.0);
        const double kij = phase_magnitude(model, uij, 1.0);
        const double kis = phase_magnitude(model, uis, 1.0);
        const double kjs = phase_magnitude(model, ujs, 1.0);
        for (std::size_t k = 0; k < nt; ++k) {
            const double t = ts[k];
            const cplx a(std::cos(t * kij) - 1.0, sigma * std::sin(t * kij));
            const cplx b(std::cos(t * kis) - 1.0, sigma * std::sin(t * kis));
            const cplx c(std::cos(t * kjs) - 1.0, sigma * std::sin(t * kjs));
            const cplx ab = a * b;
            out[3 * k] = a;
            out[3 * k + 1] = ab;
            out[3 * k + 2] = ab * c;
        }
    };
    const auto est = run_monte_carlo(mc, kTripleStream, 3 * nt, draw);

    std::vector<PairIntegrals> result(nt);
    for (std::size_t k = 0; k < nt; ++k) {
        auto& r = result[k];
        r.t = ts[k];
        r.method = IntegralMethod::MonteCarlo;
        r.i2 = est[3 * k].mean;
        r.j3 = est[3 * k + 1].mean;
        r.i3 = est[3 * k + 2].mean;
        for (int q = 0; q < 3; ++q) r.component_error[q] = est[3 * k + q].stat_error();
        r.stat_error = *std::max_element(r.component_error.begin(), r.component_error.end());
    }
    return result;
}

PairIntegrals triple_integrals_mc(const InteractionModel& model, double t, const McSettings& mc) {
    const double ts[1] = {t};
    return triple_integrals_mc_curve(model, ts, mc).front();
}

}  // namespace rydpol
