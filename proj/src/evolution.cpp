#include "rydpol/evolution.hpp"

#include <cmath>
#include <numbers>

namespace rydpol {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kUnStreamBase = 0x756e0000;
// Below this modulus the phase of a base value is treated as undetermined.
constexpr double kPhaseFloor = 1e-12;
// Grid used to unwrap U_3 when a single-time ansatz-m3 value is requested.
constexpr int kUnwrapGridPoints = 65;

bool is_integer(double x) { return x == std::floor(x); }

void require_n(int n) {
    if (n < 0) throw std::domain_error("excitation number must be non-negative");
}

}  // namespace

std::string to_string(UnMethod m) {
    switch (m) {
        case UnMethod::AnsatzM2: return "ansatz-m2";
        case UnMethod::AnsatzM3: return "ansatz-m3";
        case UnMethod::Expansion: return "expansion";
        case UnMethod::MonteCarlo: return "mc";
    }
    return "unknown";
}

UnMethod parse_un_method(const std::string& text) {
    if (text == "ansatz-m2") return UnMethod::AnsatzM2;
    if (text == "ansatz-m3") return UnMethod::AnsatzM3;
    if (text == "expansion") return UnMethod::Expansion;
    if (text == "mc") return UnMethod::MonteCarlo;
    throw std::invalid_argument("unknown method '" + text + "' (expected ansatz-m2|ansatz-m3|expansion|mc)");
}

double ansatz_exponent(int n, int base_m) {
    require_n(n);
    if (base_m < 2) throw std::domain_error("ansatz base must be at least 2");
    return static_cast<double>(n) * (n - 1) / (static_cast<double>(base_m) * (base_m - 1));
}

cplx continued_power(cplx base, double exponent, std::optional<double> reference_phase) {
    if (exponent == 0.0) return {1.0, 0.0};
    const double r = std::abs(base);
    if (is_integer(exponent) && exponent > 0.0) {
        // Integer powers are single valued.
        cplx result{1.0, 0.0};
        cplx factor = base;
        for (long k = static_cast<long>(exponent); k > 0; k >>= 1) {
            if (k & 1) result *= factor;
            factor *= factor;
        }
        return result;
    }
    if (r < kPhaseFloor && !reference_phase)
        throw BranchAmbiguityError("continued_power: base too close to zero to fix the branch of a non-integer power");
    double phase = std::arg(base);
    if (reference_phase) phase += kTwoPi * std::round((*reference_phase - phase) / kTwoPi);
    return std::polar(std::pow(r, exponent), exponent * phase);
}

cplx un_ansatz(int n, int base_m, cplx base_value, std::optional<double> reference_phase) {
    require_n(n);
    if (n <= 1) return {1.0, 0.0};
    return continued_power(base_value, ansatz_exponent(n, base_m), reference_phase);
}

cplx un_ansatz_m2(int n, const InteractionModel& model, double t) {
    require_n(n);
    if (n <= 1) return {1.0, 0.0};
    return un_ansatz(n, 2, 1.0 + i2_quadrature(model, t).i2);
}

UnCurve ansatz_curve(int n, int base_m, std::span<const double> ts, std::span<const cplx> base_values,
                     std::span<const double> base_errors) {
    require_n(n);
    if (ts.size() != base_values.size()) throw std::invalid_argument("ansatz_curve: grid/base size mismatch");
    if (!base_errors.empty() && base_errors.size() != ts.size())
        throw std::invalid_argument("ansatz_curve: error/base size mismatch");
    UnCurve curve;
    curve.n = n;
    curve.method = base_m == 2 ? UnMethod::AnsatzM2 : UnMethod::AnsatzM3;
    curve.points.reserve(ts.size());
    const double exponent = ansatz_exponent(n, base_m);
    std::optional<double> unwrapped;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const cplx base = base_values[k];
        double phase = std::arg(base);
        if (unwrapped) phase += kTwoPi * std::round((*unwrapped - phase) / kTwoPi);
        if (std::abs(base) >= kPhaseFloor) unwrapped = phase;
        UnPoint pt;
        pt.t = ts[k];
        pt.value = n <= 1 ? cplx{1.0, 0.0} : continued_power(base, exponent, unwrapped);
        if (!base_errors.empty() && n > 1)
            pt.stat_error = exponent * std::pow(std::abs(base), exponent - 1.0) * base_errors[k];
        curve.points.push_back(pt);
    }
    return curve;
}

UnCurve ansatz_m2_curve(int n, std::span<const double> ts, const InteractionModel& model) {
    std::vector<cplx> base(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) base[k] = 1.0 + i2_quadrature(model, ts[k]).i2;
    return ansatz_curve(n, 2, ts, base);
}

cplx un_expansion(int n, const PairIntegrals& integrals) {
    require_n(n);
    if (n <= 1) return {1.0, 0.0};
    cplx u = 1.0 + binomial(n, 2) * integrals.i2;
    if (n >= 3) {
        if (!integrals.j3 || !integrals.i3)
            throw std::domain_error("un_expansion: J3 and I3 are required for n >= 3");
        const double b3 = binomial(n, 3);
        u += 3.0 * b3 * *integrals.j3 + b3 * *integrals.i3;
    }
    return u;
}

std::vector<McEstimate> un_mc_curve(int n, std::span<const double> ts, const InteractionModel& model,
                                    const McSettings& mc) {
    require_n(n);
    for (double t : ts)
        if (!(t >= 0.0)) throw std::domain_error("un_mc_curve: scaled time must be non-negative");
    if (n <= 1) return std::vector<McEstimate>(ts.size(), McEstimate{{1.0, 0.0}, 0.0, 0.0});
    if (mc.samples < 1000) throw std::domain_error("un_mc_oracle: at least 1000 samples required");

    const double sigma = model.oscillation_sign();
    const std::size_t nt = ts.size();
    auto draw = [&, pts = std::vector<Eigen::Vector3d>(n)](Xoshiro256& rng, std::span<cplx> out) mutable {
        // Sum of 1/u_ij^p over all pairs; the total phase is t times this.
        double rate = 0.0;
        bool coincident;
        do {
            for (auto& r : pts) r = rng.in_unit_ball();
            rate = 0.0;
            coincident = false;
            for (int i = 0; i < n && !coincident; ++i)
                for (int j = i + 1; j < n; ++j) {
                    const double u = (pts[i] - pts[j]).norm();
                    if (u == 0.0) {
                        coincident = true;
                        break;
                    }
                    rate += phase_magnitude(model, u, 1.0);
                }
        } while (coincident);
        for (std::size_t k = 0; k < nt; ++k) {
            const double v = ts[k] * rate;
            out[k] = {std::cos(v), sigma * std::sin(v)};
        }
    };
    return run_monte_carlo(mc, kUnStreamBase + static_cast<std::uint64_t>(n), nt, draw);
}

McEstimate un_mc_oracle(int n, double t, const InteractionModel& model, const McSettings& mc) {
    const double ts[1] = {t};
    return un_mc_curve(n, ts, model, mc).front();
}

UnCurve un_curve(int n, UnMethod method, std::span<const double> ts, const InteractionModel& model,
                 const McSettings& mc) {
    require_n(n);
    switch (method) {
        case UnMethod::AnsatzM2: return ansatz_m2_curve(n, ts, model);
        case UnMethod::AnsatzM3: {
            const auto u3 = un_mc_curve(3, ts, model, mc);
            std::vector<cplx> base(ts.size());
            std::vector<double> err(ts.size());
            for (std::size_t k = 0; k < ts.size(); ++k) {
                base[k] = u3[k].mean;
                err[k] = u3[k].stat_error();
            }
            return ansatz_curve(n, 3, ts, base, err);
        }
        case UnMethod::Expansion: {
            UnCurve curve{n, method, {}};
            std::vector<PairIntegrals> triples;
            if (n >= 3) triples = triple_integrals_mc_curve(model, ts, mc);
            for (std::size_t k = 0; k < ts.size(); ++k) {
                PairIntegrals ints = i2_quadrature(model, ts[k]);
                UnPoint pt{ts[k], {}, 0.0};
                if (n >= 3) {
                    ints.j3 = triples[k].j3;
                    ints.i3 = triples[k].i3;
                    const double b3 = binomial(n, 3);
                    pt.stat_error = std::hypot(3.0 * b3 * triples[k].component_error[1],
                                               b3 * triples[k].component_error[2]);
                }
                pt.value = un_expansion(n, ints);
                curve.points.push_back(pt);
            }
            return curve;
        }
        case UnMethod::MonteCarlo: {
            UnCurve curve{n, method, {}};
            const auto est = un_mc_curve(n, ts, model, mc);
            for (std::size_t k = 0; k < ts.size(); ++k)
                curve.points.push_back({ts[k], est[k].mean, est[k].stat_error()});
            return curve;
        }
    }
    throw std::invalid_argument("un_curve: unknown method");
}

std::vector<UnPoint> un_values(int n_max, double t, const InteractionModel& model, const EvolveOptions& options) {
    if (n_max < 0) throw std::domain_error("un_values: n_max must be non-negative");
    std::vector<UnPoint> out(n_max + 1);
    for (auto& p : out) p.t = t;
    if (n_max < 2 || t == 0.0) return out;

    switch (options.method) {
        case UnMethod::AnsatzM2: {
            const cplx base = 1.0 + i2_quadrature(model, t).i2;
            for (int n = 2; n <= n_max; ++n) out[n].value = un_ansatz(n, 2, base);
            break;
        }
        case UnMethod::AnsatzM3: {
            std::vector<double> grid(kUnwrapGridPoints);
            for (int k = 0; k < kUnwrapGridPoints; ++k) grid[k] = t * k / (kUnwrapGridPoints - 1);
            for (int n = 2; n <= n_max; ++n) {
                const auto curve = un_curve(n, UnMethod::AnsatzM3, grid, model, options.mc);
                out[n] = curve.points.back();
            }
            break;
        }
        case UnMethod::Expansion:
        case UnMethod::MonteCarlo: {
            const double ts[1] = {t};
            for (int n = 2; n <= n_max; ++n) out[n] = un_curve(n, options.method, ts, model, options.mc).points.front();
            break;
        }
    }
    return out;
}

PolaritonState evolve_state(const PolaritonState& s, double t, const InteractionModel& model,
                            const EvolveOptions& options) {
    if (!(t >= 0.0)) throw std::domain_error("evolve_state: scaled time must be non-negative");
    PolaritonState out = s;
    if (t == 0.0 || s.n_max() < 2) return out;
    const auto u = un_values(s.n_max(), t, model, options);
    for (int n = 2; n <= s.n_max(); ++n) out.amplitudes(n) *= u[n].value;
    const double before = s.retained_norm();
    const double after = out.retained_norm();
    if (after > before * (1.0 + 1e-12))
        throw std::domain_error("evolve_state: U_n source increased the norm (outside its validity range)");
    out.norm_deficit = s.norm_deficit + (before - after);
    return out;
}

}  // namespace rydpol
