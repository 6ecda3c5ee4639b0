#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pla/bits.hpp"
#include "pla/errors.hpp"
#include "pla/numeric.hpp"
#include "pla/params.hpp"
#include "pla/rng.hpp"
#include "pla/tag_codec.hpp"
#include "pla/waveform.hpp"

namespace pla {

// Gaussian moments of the correlation statistic under both hypotheses.
struct HypothesisStats {
    int l_t = 0;
    double gamma_t = 0.0;

    double mean_h0() const { return l_t; }
    double var() const { return l_t / gamma_t; }
    double sigma() const { return std::sqrt(var()); }
    // Conditional mean under the impostor sub-hypothesis at Hamming distance d.
    double mean_h1_given(int d) const { return l_t - 2.0 * d; }
};

enum class Calibration { BinomialExact, MonteCarlo };

struct DetectorConfig {
    double threshold = 0.0;
    double target_pfa = 0.01;
    Calibration calibration = Calibration::BinomialExact;
    int mc_samples = 10000;  // (s, k_E) pairs for MonteCarlo calibration
};

// eta = bpsk(c_b)^T y.
inline double statistic(const ObservedTag& y, const Tag& c_b) {
    if (y.samples.size() != c_b.bits.size())
        throw parameter_error("statistic: length mismatch");
    double eta = 0.0;
    for (std::size_t i = 0; i < c_b.bits.size(); ++i)
        eta += (c_b.bits[i] ? -y.samples[i] : y.samples[i]);
    return eta;
}

// A weighted sub-hypothesis of H1: the statistic is N(mean, sigma^2) with
// probability weight (stored as log weight).
struct SubHypothesis {
    double log_weight = 0.0;
    double mean = 0.0;
};

// Smallest threshold whose expected false-alarm probability
//   F(rho) = sum_i w_i Q((rho - mean_i) / sigma)
// does not exceed beta. F is strictly decreasing in rho, so bisection applies.
inline double calibrate_from_subhypotheses(const std::vector<SubHypothesis>& subs,
                                           double sigma, double beta, double tol) {
    if (subs.empty()) throw parameter_error("calibrate: no sub-hypotheses");
    if (!(beta > 0.0 && beta < 1.0))
        throw parameter_error("calibrate: target_pfa must lie in (0, 1)");
    double mean_lo = subs[0].mean, mean_hi = subs[0].mean;
    for (const auto& s : subs) {
        mean_lo = std::min(mean_lo, s.mean);
        mean_hi = std::max(mean_hi, s.mean);
    }
    auto expected_fa = [&](double rho) {
        std::vector<double> terms;
        terms.reserve(subs.size());
        for (const auto& s : subs)
            terms.push_back(s.log_weight + log_q((rho - s.mean) / sigma));
        return std::exp(log_sum_exp(terms));
    };
    double lo = mean_lo - 12.0 * sigma;
    double hi = mean_hi + 12.0 * sigma;
    if (expected_fa(lo) <= beta) return lo;  // any threshold meets the target
    if (expected_fa(hi) > beta)
        throw calibration_error("calibrate: target false-alarm probability unreachable");
    return bisect_threshold([&](double rho) { return expected_fa(rho) - beta; }, lo, hi, tol);
}

// Threshold calibration for a target false-alarm rate. BinomialExact weights
// the impostor distance d by Binomial(l_t, 1/2) (ideal-codebook model);
// MonteCarlo averages over sampled (s, k_E) pairs drawn against k_b.
inline double calibrate_threshold(const TagFunction& tf, const SystemParams& params,
                                  const DetectorConfig& cfg, const Key& k_b,
                                  const std::vector<Message>& messages, RngStream& rng) {
    params.validate();
    HypothesisStats stats{params.l_t, params.gamma_t};
    const double sigma = stats.sigma();
    std::vector<SubHypothesis> subs;
    if (cfg.calibration == Calibration::BinomialExact) {
        const int n = params.l_t;
        const double log_half = std::log(0.5);
        subs.reserve(n + 1);
        for (int d = 0; d <= n; ++d) {
            double log_binom = std::lgamma(n + 1.0) - std::lgamma(d + 1.0) -
                               std::lgamma(n - d + 1.0) + n * log_half;
            subs.push_back({log_binom, stats.mean_h1_given(d)});
        }
    } else {
        if (cfg.mc_samples < 1) throw parameter_error("calibrate: mc_samples must be >= 1");
        const double log_w = -std::log(static_cast<double>(cfg.mc_samples));
        subs.reserve(cfg.mc_samples);
        for (int i = 0; i < cfg.mc_samples; ++i) {
            Message s = messages.empty()
                            ? Message{rng.bit_vector(params.l_s)}
                            : messages[rng.below(messages.size())];
            Key k_e{rng.bit_vector(params.l_k)};
            int d = hamming_distance(tf.encode(s, k_b), tf.encode(s, k_e));
            subs.push_back({log_w, stats.mean_h1_given(d)});
        }
    }
    return calibrate_from_subhypotheses(subs, sigma, cfg.target_pfa, 1e-9 * sigma);
}

// Expected false-alarm probability of a threshold under the ideal-codebook
// Binomial(l_t, 1/2) impostor model; used for self-consistency checks.
inline double expected_far_binomial(double threshold, const SystemParams& params) {
    HypothesisStats stats{params.l_t, params.gamma_t};
    const double sigma = stats.sigma();
    std::vector<double> terms;
    terms.reserve(params.l_t + 1);
    for (int d = 0; d <= params.l_t; ++d) {
        double log_binom = std::lgamma(params.l_t + 1.0) - std::lgamma(d + 1.0) -
                           std::lgamma(params.l_t - d + 1.0) + params.l_t * std::log(0.5);
        terms.push_back(log_binom + log_q((threshold - stats.mean_h1_given(d)) / sigma));
    }
    return std::exp(log_sum_exp(terms));
}

// P_D = Q((rho - L_t) / sqrt(L_t / gamma_t)).
inline double detection_probability(double threshold, const SystemParams& params) {
    params.validate();
    HypothesisStats stats{params.l_t, params.gamma_t};
    return q_func((threshold - stats.mean_h0()) / stats.sigma());
}

enum class Decision { Accept, Reject };

struct VerifyResult {
    Decision decision = Decision::Reject;
    double eta = 0.0;
};

inline VerifyResult verify(const ObservedTag& y, const Message& s, const Key& k_b,
                           const TagFunction& tf, const DetectorConfig& cfg) {
    double eta = statistic(y, tf.encode(s, k_b));
    return {eta >= cfg.threshold ? Decision::Accept : Decision::Reject, eta};
}

// d(alpha, beta) = alpha log2(alpha/(1-beta)) + (1-alpha) log2((1-alpha)/beta), bits.
inline double d_alpha_beta(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0))
        throw std::domain_error("d_alpha_beta: arguments must lie strictly in (0, 1)");
    return alpha * std::log2(alpha / (1.0 - beta)) +
           (1.0 - alpha) * std::log2((1.0 - alpha) / beta);
}

struct MiEstimate {
    double bits = 0.0;
    double std_err = 0.0;
};

// Monte Carlo estimate of I(Y;K) in bits with the inner sum over all 2^l_k
// keys computed exactly. Per sample: draw k uniform, y = bpsk(tau(s,k)) + w,
// and accumulate log2 of p(y|k) over the uniform key mixture.
inline MiEstimate mutual_information_exact(const TagFunction& tf, const Message& s,
                                           const SystemParams& params, int n_mc,
                                           RngStream& rng) {
    params.validate();
    if (params.l_k > 12)
        throw capability_error("mutual_information_exact: l_k > 12 not enumerable here");
    if (n_mc < 2) throw parameter_error("mutual_information_exact: n_mc must be >= 2");
    const std::uint64_t n_keys = 1ULL << params.l_k;
    std::vector<std::vector<double>> codewords(n_keys);
    for (std::uint64_t i = 0; i < n_keys; ++i)
        codewords[i] = bpsk(tf.encode(s, key_from_index(i, params.l_k)).bits);

    const double sd = 1.0 / std::sqrt(params.gamma_t);
    std::vector<double> y(params.l_t);
    std::vector<double> log_lik(n_keys);
    double sum = 0.0, sum_sq = 0.0;
    for (int trial = 0; trial < n_mc; ++trial) {
        std::uint64_t k = rng.below(n_keys);
        for (int i = 0; i < params.l_t; ++i)
            y[i] = codewords[k][i] + sd * rng.gaussian();
        for (std::uint64_t kk = 0; kk < n_keys; ++kk) {
            double d2 = 0.0;
            for (int i = 0; i < params.l_t; ++i) {
                double diff = y[i] - codewords[kk][i];
                d2 += diff * diff;
            }
            log_lik[kk] = -0.5 * params.gamma_t * d2;
        }
        double log_mix = log_sum_exp(log_lik) - params.l_k * std::log(2.0);
        double sample = (log_lik[k] - log_mix) / std::log(2.0);
        sum += sample;
        sum_sq += sample * sample;
    }
    double mean = sum / n_mc;
    double var = (sum_sq - n_mc * mean * mean) / (n_mc - 1.0);
    return {mean, std::sqrt(std::max(var, 0.0) / n_mc)};
}

}  // namespace pla
