#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "pla/errors.hpp"

namespace pla {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Gaussian tail probability Q(x) = P(N(0,1) > x).
inline double q_func(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// log Q(x), valid for all x; asymptotic series once erfc would lose accuracy.
inline double log_q(double x) {
    if (x < 30.0) return std::log(0.5 * std::erfc(x / std::sqrt(2.0)));
    double ix2 = 1.0 / (x * x);
    return -0.5 * x * x - std::log(x) - 0.5 * std::log(2.0 * M_PI) +
           std::log1p(ix2 * (-1.0 + ix2 * (3.0 - 15.0 * ix2)));
}

inline double log_sum_exp(const std::vector<double>& v) {
    double m = kNegInf;
    for (double x : v) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

inline double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// log of int_a^b exp(g(x)) dx by composite Simpson with n intervals (n even).
// g may return -inf where the integrand vanishes.
template <class F>
double log_simpson(F&& g, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double m = kNegInf;
    std::vector<double> terms(n + 1);
    for (int i = 0; i <= n; ++i) {
        double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        double x = a + i * h;
        double t = g(x);
        terms[i] = (t == kNegInf) ? kNegInf : t + std::log(w);
        m = std::max(m, terms[i]);
    }
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double t : terms)
        if (t != kNegInf) s += std::exp(t - m);
    return m + std::log(s) + std::log(h / 3.0);
}

// Refine log_simpson by doubling until the log value moves by less than
// tol_log; returns the converged value, the last delta in *last_delta.
template <class F>
double log_simpson_refine(F&& g, double a, double b, int n0, double tol_log,
                          int max_doublings = 14, double* last_delta = nullptr) {
    double prev = log_simpson(g, a, b, n0);
    for (int i = 0; i < max_doublings; ++i) {
        n0 *= 2;
        double cur = log_simpson(g, a, b, n0);
        double delta = std::abs(cur - prev);
        if (last_delta) *last_delta = delta;
        prev = cur;
        if (delta <= tol_log || (cur == kNegInf && delta != delta)) return cur;
    }
    return prev;
}

// Plain composite Simpson, linear domain.
template <class F>
double simpson(F&& g, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = g(a) + g(b);
    for (int i = 1; i < n; ++i) s += g(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

template <class F>
double simpson_refine(F&& g, double a, double b, int n0, double tol,
                      int max_doublings = 14, double* last_delta = nullptr) {
    double prev = simpson(g, a, b, n0);
    for (int i = 0; i < max_doublings; ++i) {
        n0 *= 2;
        double cur = simpson(g, a, b, n0);
        double delta = std::abs(cur - prev);
        if (last_delta) *last_delta = delta;
        prev = cur;
        if (delta <= tol) return cur;
    }
    return prev;
}

// Bisection for the smallest x in [lo, hi] with f(x) <= 0, assuming f is
// monotone decreasing and f(lo) > 0 >= f(hi).
template <class F>
double bisect_threshold(F&& f, double lo, double hi, double x_tol) {
    if (!(f(hi) <= 0.0))
        throw numerical_error("bisect_threshold: upper bracket does not satisfy the target");
    if (f(lo) <= 0.0) return lo;
    while (hi - lo > x_tol) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace pla
