#pragma once
#include <complex>
#include <functional>
#include <vector>

namespace eitmotion {

using Complex = std::complex<double>;

// Nodes/weights for int_{-inf}^{inf} e^{-s^2} f(s) ds ~ sum_i w_i f(x_i).
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Cached, thread-safe. Nodes by Newton iteration on the orthonormal Hermite
// recurrence, weights from the Christoffel function.
const GaussHermiteRule& gauss_hermite(int order);

struct AdaptiveOptions {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    int max_intervals = 20000;
};

// Globally adaptive Gauss-Kronrod (G7/K15) over [a, b]. split_hints inject
// extra initial breakpoints (values outside (a, b) are ignored), used to seed
// refinement at known sharp features. Throws ConvergenceError with the
// achieved residual if the interval budget runs out.
Complex adaptive_gk15(const std::function<Complex(double)>& f, double a, double b,
                      const AdaptiveOptions& opt = {},
                      const std::vector<double>& split_hints = {});

} // namespace eitmotion
