#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pla/errors.hpp"
#include "pla/numeric.hpp"
#include "pla/params.hpp"

namespace pla {

struct QuadratureOptions {
    int min_nodes = 512;     // initial node count, doubled until convergence
    int max_doublings = 12;
    double log_tol = 1e-12;  // convergence tolerance on log-domain integrals
};

struct CapacityResult {
    double c2 = 0.0;  // bits per channel use, in [0, 1]
    double abs_error_est = 0.0;
};

struct SpbResult {
    double p_e_lower = 0.0;
    double theta = 0.0;
    double log_term_q = kNegInf;        // log of the Q(sqrt(2 L gamma)) addend
    double log_term_integral = kNegInf; // log of the solid-angle integral addend
    double abs_error_est = 0.0;
    bool clamped = false;               // assembled value exceeded 1 before clamping
};

// Binary-input AWGN capacity
//   C_2(gamma) = 1 - (1/sqrt(2 pi)) int exp(-(y-b)^2/2) log2(1 + exp(-2 b y)) dy
// with b = sqrt(2 gamma). Truncated at |y - b| <= 10 with the analytic tail
// folded into the error estimate.
inline CapacityResult capacity_biawgn(double gamma_t, const QuadratureOptions& opts = {}) {
    if (gamma_t < 0.0) throw parameter_error("capacity_biawgn: negative SNR");
    if (gamma_t == 0.0) return {0.0, 0.0};
    const double b = std::sqrt(2.0 * gamma_t);
    auto integrand = [b](double y) {
        double t = -2.0 * b * y;
        // log2(1 + e^t), stable in both directions
        double soft = t > 0.0 ? (t + std::log1p(std::exp(-t))) : std::log1p(std::exp(t));
        return std::exp(-0.5 * (y - b) * (y - b)) * soft / std::log(2.0);
    };
    double delta = 0.0;
    double integral = simpson_refine(integrand, b - 10.0, b + 10.0, opts.min_nodes, 1e-12,
                                     opts.max_doublings, &delta);
    // |log2(1+e^{-2by})| <= 1 + 2b|y|/ln2 over the tails; Q(10)-weighted bound.
    double tail = q_func(10.0) * (2.0 + 4.0 * b * (b + 10.0) / std::log(2.0));
    CapacityResult res;
    res.c2 = std::clamp(1.0 - integral / std::sqrt(2.0 * M_PI), 0.0, 1.0);
    res.abs_error_est = std::max(delta / std::sqrt(2.0 * M_PI) + tail, 1e-14);
    return res;
}

namespace detail {

// log of int_a^b sin(phi)^(L-2) dphi, log-domain quadrature.
inline double log_sin_power_integral(int l, double a, double b, const QuadratureOptions& opts) {
    auto g = [l](double phi) {
        double s = std::sin(phi);
        if (s <= 0.0) return l == 2 ? 0.0 : kNegInf;
        return (l - 2) * std::log(s);
    };
    return log_simpson_refine(g, a, b, opts.min_nodes, opts.log_tol, opts.max_doublings);
}

}  // namespace detail

// Solve Omega(theta) / Omega(pi) = 2^(-l_t r_c) for the cone half-angle, i.e.
// take the tightest theta admissible in the solid-angle inequality. Bisection
// on the log-ratio; residual |log-ratio error| <= 1e-10.
inline double solve_theta(int l_t, double r_c, const QuadratureOptions& opts = {}) {
    if (l_t < 2) throw parameter_error("solve_theta: l_t must be >= 2");
    if (!(r_c > 0.0 && r_c <= 1.0)) throw parameter_error("solve_theta: r_c must be in (0, 1]");
    const double target = -l_t * r_c * std::log(2.0);
    const double log_den = detail::log_sin_power_integral(l_t, 0.0, M_PI, opts);
    auto residual = [&](double theta) {
        return detail::log_sin_power_integral(l_t, 0.0, theta, opts) - log_den - target;
    };
    double lo = 1e-8, hi = M_PI - 1e-12;
    if (residual(lo) > 0.0 || residual(hi) < 0.0)
        throw numerical_error("solve_theta: root not bracketed on (0, pi)");
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        double r = residual(mid);
        if (std::abs(r) <= 1e-10) return mid;
        (r < 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-15 * M_PI) return mid;
    }
    throw numerical_error("solve_theta: bisection failed to reach residual tolerance");
}

// log f_L(x), with
//   f_L(x) = (2^((L-1)/2) Gamma((L+1)/2))^-1 int_0^inf z^(L-1) exp(-z^2/2 + z x) dz.
// The integrand peaks at z* = (x + sqrt(x^2 + 4(L-1)))/2; quadrature runs on a
// window of +-14 peak widths around it, entirely in the log domain.
inline double log_f_l(int l, double x, const QuadratureOptions& opts = {}) {
    if (l < 1) throw parameter_error("log_f_l: L must be >= 1");
    const double z_star = l > 1 ? 0.5 * (x + std::sqrt(x * x + 4.0 * (l - 1)))
                                : std::max(x, 0.0);
    const double sig = z_star > 0.0 ? 1.0 / std::sqrt((l - 1) / (z_star * z_star) + 1.0) : 1.0;
    const double a = std::max(0.0, z_star - 14.0 * sig);
    const double b = z_star + 14.0 * sig;
    auto g = [l, x](double z) {
        if (z <= 0.0) return l == 1 ? 0.0 : kNegInf;
        return (l - 1) * std::log(z) - 0.5 * z * z + z * x;
    };
    double log_integral = log_simpson_refine(g, a, b, opts.min_nodes, opts.log_tol,
                                             opts.max_doublings);
    return log_integral - 0.5 * (l - 1) * std::log(2.0) - std::lgamma(0.5 * (l + 1));
}

namespace detail {

// One full assembly of the sphere-packing bound at a fixed resolution.
inline double p_spb_assemble(int l_t, double gamma_t, double theta, double log_q_term,
                             const QuadratureOptions& opts, double* log_int_out) {
    const double amp = std::sqrt(2.0 * l_t * gamma_t);
    auto g = [&](double phi) {
        double s = std::sin(phi);
        if (s <= 0.0) return kNegInf;
        return (l_t - 2) * std::log(s) + log_f_l(l_t, amp * std::cos(phi), opts);
    };
    double log_integral = log_simpson(g, theta, M_PI / 2.0, opts.min_nodes);
    double log_term2 = std::log(l_t - 1.0) - 0.5 * std::log(2.0 * M_PI) -
                       l_t * gamma_t + log_integral;
    if (log_int_out) *log_int_out = log_term2;
    return std::exp(log_add_exp(log_q_term, log_term2));
}

}  // namespace detail

// Shannon 1959 sphere-packing lower bound on the ML decoding error of any
// (l_t, r_c) block code at SNR gamma_t. Assembled in the log domain; the
// error estimate comes from recomputation at doubled quadrature resolution.
inline SpbResult p_spb(int l_t, double r_c, double gamma_t, const QuadratureOptions& opts = {}) {
    if (l_t < 2) throw parameter_error("p_spb: l_t must be >= 2");
    if (!(gamma_t > 0.0)) throw parameter_error("p_spb: gamma_t must be positive");
    SpbResult res;
    res.theta = solve_theta(l_t, r_c, opts);
    const double amp = std::sqrt(2.0 * l_t * gamma_t);
    res.log_term_q = log_q(amp);

    double coarse = detail::p_spb_assemble(l_t, gamma_t, res.theta, res.log_term_q, opts, nullptr);
    QuadratureOptions fine = opts;
    fine.min_nodes *= 2;
    double value = detail::p_spb_assemble(l_t, gamma_t, res.theta, res.log_term_q, fine,
                                          &res.log_term_integral);
    res.abs_error_est = std::max(std::abs(value - coarse), 1e-14);
    res.clamped = value > 1.0;
    res.p_e_lower = std::clamp(value, 0.0, 1.0);
    return res;
}

struct SecurityMargin {
    double rc = 0.0;
    double c2 = 0.0;
    bool info_secure = false;
};

// Information security predicate: R_c above the Bi-AWGN capacity at gamma_t.
inline SecurityMargin security_margin(const SystemParams& params) {
    params.validate();
    double rc = static_cast<double>(params.l_k) / params.l_t;
    double c2 = capacity_biawgn(params.gamma_t).c2;
    return {rc, c2, rc > c2};
}

}  // namespace pla
