#ifndef RYDPOL_QUADRATURE_HPP
#define RYDPOL_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace rydpol {

template <typename Value>
struct QuadratureResult {
    Value value{};
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

/// Thrown when a requested tolerance is not reached within the iteration
/// budget. Carries the best available estimate.
template <typename Value>
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadratureResult<Value> best)
        : std::runtime_error(what), best_(best) {}
    const QuadratureResult<Value>& best_estimate() const { return best_; }

private:
    QuadratureResult<Value> best_;
};

namespace detail {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478100, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

}  // namespace detail

/// Single 21-point Gauss-Kronrod panel with the QUADPACK error heuristic
/// dropped in favour of the plain |K21 - G10| difference.
template <typename Value, typename F>
QuadratureResult<Value> gauss_kronrod21(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const Value fc = f(center);
    Value kronrod = fc * detail::kWgk[10];
    Value gauss{};
    for (int j = 0; j < 10; ++j) {
        const double dx = half * detail::kXgk[j];
        const Value f1 = f(center - dx);
        const Value f2 = f(center + dx);
        kronrod += (f1 + f2) * detail::kWgk[j];
        if (j % 2 == 1) gauss += (f1 + f2) * detail::kWg[j / 2];
    }
    QuadratureResult<Value> r;
    r.value = kronrod * half;
    r.error = detail::magnitude((kronrod - gauss) * half);
    r.evaluations = 21;
    return r;
}

/// Globally adaptive Gauss-Kronrod integration of f over [a, b].
///
/// Bisects the panel with the largest error estimate until the summed error
/// is below abs_tol or max_panels is reached. Sets `converged` rather than
/// throwing; callers decide how to report a miss.
template <typename Value, typename F>
QuadratureResult<Value> integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                           std::size_t max_panels = 2000) {
    struct Panel {
        double a, b;
        QuadratureResult<Value> r;
        bool operator<(const Panel& o) const { return r.error < o.r.error; }
    };
    QuadratureResult<Value> total;
    if (a == b) return total;

    std::priority_queue<Panel> queue;
    auto first = gauss_kronrod21<Value>(f, a, b);
    total.evaluations = first.evaluations;
    queue.push({a, b, first});
    double error = first.error;

    while (error > abs_tol && queue.size() < max_panels) {
        Panel worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted
        queue.pop();
        auto left = gauss_kronrod21<Value>(f, worst.a, mid);
        auto right = gauss_kronrod21<Value>(f, mid, worst.b);
        total.evaluations += 42;
        error += left.error + right.error - worst.r.error;
        queue.push({worst.a, mid, left});
        queue.push({mid, worst.b, right});
    }

    // Sum in interval order so the result does not depend on heap layout.
    std::vector<Panel> panels;
    panels.reserve(queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    error = 0.0;
    for (const auto& p : panels) {
        total.value += p.r.value;
        error += p.r.error;
    }
    total.error = error;
    total.converged = error <= abs_tol;
    return total;
}

}  // namespace rydpol

#endif  // RYDPOL_QUADRATURE_HPP
