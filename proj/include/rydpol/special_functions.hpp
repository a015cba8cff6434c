#ifndef RYDPOL_SPECIAL_FUNCTIONS_HPP
#define RYDPOL_SPECIAL_FUNCTIONS_HPP

#include <complex>
#include <stdexcept>

namespace rydpol {

using cplx = std::complex<double>;

class SpecialFunctionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exponential integral E1(z) = int_z^inf e^{-w}/w dw, principal branch
/// (cut along the negative real axis). Power series for |z| <= 4, Lentz
/// continued fraction beyond.
cplx expint_e1(cplx z);

/// Upper incomplete gamma Gamma(b, z) for real b and complex z off the
/// negative real axis. Non-positive integer b is routed through E1.
cplx upper_gamma(double b, cplx z);

/// Oscillatory power tail
///   F(s, x; sigma) = int_x^inf v^{-s-1} (e^{i sigma v} - 1) dv,  s > 0, x > 0,
/// expressed through Gamma(-s, -i sigma x).
cplx oscillatory_power_tail(double s, double x, double sigma);

}  // namespace rydpol

#endif  // RYDPOL_SPECIAL_FUNCTIONS_HPP
