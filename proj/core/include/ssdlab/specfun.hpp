#pragma once

// Gamma-family special functions used by every closed form in the library.
//
// Incomplete gamma functions are evaluated by the power series for
// x < s + 1 and by the Lentz continued fraction for the complement
// otherwise. Regularized and log-regularized forms are provided so that
// callers can stay in log space when Γ(s) or the tail would overflow or
// underflow.

namespace ssdlab::specfun {

/// ln Γ(x) for x > 0.
double log_gamma(double x);

/// Γ(x) for x > 0. Overflows to +inf for x > ~171.6.
double gamma(double x);

/// ψ(x) = d/dx ln Γ(x), x > 0.
double digamma(double x);

/// ψ'(x), x > 0.
double trigamma(double x);

/// γ(s, x) = ∫₀ˣ t^{s−1} e^{−t} dt.
double lower_incomplete_gamma(double s, double x);

/// Γ(s, x) = ∫ₓ^∞ t^{s−1} e^{−t} dt.
double upper_incomplete_gamma(double s, double x);

/// P(s, x) = γ(s, x) / Γ(s).
double regularized_lower_gamma(double s, double x);

/// Q(s, x) = Γ(s, x) / Γ(s), computed directly (no 1 − P cancellation in the tail).
double regularized_upper_gamma(double s, double x);

/// ln P(s, x); −inf at x = 0.
double log_regularized_lower_gamma(double s, double x);

/// ln Q(s, x); finite far into the tail where Q itself underflows.
double log_regularized_upper_gamma(double s, double x);

/// ln(e^a + e^b) without overflow.
double log_add_exp(double a, double b);

}  // namespace ssdlab::specfun
