#pragma once

#include <complex>
#include <functional>

namespace affdecomp {

struct ValueWithError {
    double value = 0.0;
    double error = 0.0;
};

struct ComplexWithError {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
};

// Gauss(7)/Kronrod(15) pair on [a,b]; error from the rule difference.
ValueWithError quad_g7k15(const std::function<ValueWithError(double)>& f, double a,
                          double b);

// Adaptive bisection until |error| <= max(abs_tol, rel_tol * |value|).
// The integrand may carry its own error estimate, which is propagated into
// the ledger. Throws on interval budget exhaustion, reporting the partial
// estimate in the message.
ValueWithError integrate_adaptive(const std::function<ValueWithError(double)>& f,
                                  double a, double b, double rel_tol, double abs_tol,
                                  int initial_panels = 1, int max_intervals = 20000);

ValueWithError integrate_adaptive(const std::function<double(double)>& f, double a,
                                  double b, double rel_tol, double abs_tol,
                                  int initial_panels = 1, int max_intervals = 20000);

ComplexWithError integrate_adaptive_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double rel_tol, double abs_tol, int initial_panels = 1, int max_intervals = 40000);

}  // namespace affdecomp
