#pragma once
#include <complex>

namespace eitmotion {

using Complex = std::complex<double>;

// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
// Upper half plane is the primary domain; Im(z) < 0 is mapped through
// w(z) = 2 exp(-z^2) - w(-z) and may overflow for deeply negative Im(z).
// Throws std::domain_error on non-finite input.
Complex faddeeva_w(Complex z);

// Modified Bessel I_nu(z), nu in {0, 1}. Ascending series for |z| <= 12,
// two-sided asymptotic expansion beyond. Throws std::overflow_error once
// e^{Re z} is not representable (Re z > 705).
Complex bessel_I(int nu, Complex z);

// Modified Bessel K_nu(z), nu in {0, 1}, Re(z) > 0 (throws std::domain_error
// otherwise). Log-series for |z| <= 2, Gauss-Hermite evaluation of the
// confluent integral representation beyond. Underflows to 0 for Re z >~ 745.
Complex bessel_K(int nu, Complex z);

// I_1(z)/I_0(z) evaluated without forming the (possibly overflowing)
// numerator and denominator. Continued fraction, asymptotic ratio for
// Re z >= 20.
Complex bessel_I_ratio(Complex z);

// K_0(z)/K_1(z), Re(z) > 0, safe against underflow of the factors.
Complex bessel_K_ratio(Complex z);

// H(x) = exp(-x) - 1 + x, series-protected near 0. The interpolation
// function between quadratic (x << 1) and linear (x >> 1) growth.
double brownian_H(double x);
Complex brownian_H(Complex x);

} // namespace eitmotion
