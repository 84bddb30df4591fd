#pragma once

#include <functional>
#include <limits>
#include <stdexcept>

// Adaptive quadrature and finite differences. The library uses these for
// the few quantities without a closed form; tests use them to arbitrate
// every closed form.

namespace ssdlab::oracle {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int subdivisions = 0;
};

struct QuadratureOptions {
    double tol = 1e-10;          // absolute and relative target
    int max_subdivisions = 10000;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadratureResult partial)
        : std::runtime_error(what), partial_(partial) {}
    const QuadratureResult& partial() const noexcept { return partial_; }

private:
    QuadratureResult partial_;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Globally adaptive 15-point Gauss–Kronrod quadrature of f over [a, b].
/// b may be +infinity, handled by the substitution x = a + t/(1−t).
/// Stops when the summed error estimate is below max(tol, tol·|value|);
/// throws QuadratureError when the subdivision cap is exhausted first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           QuadratureOptions options = {});

inline QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                                  double tol) {
    return integrate(f, a, b, QuadratureOptions{tol, 10000});
}

/// Central difference (f(x+h) − f(x−h)) / 2h.
double finite_diff(const std::function<double(double)>& f, double x, double h);

}  // namespace ssdlab::oracle
