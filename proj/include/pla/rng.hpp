#pragma once

#include <cmath>
#include <cstdint>

#include "pla/bits.hpp"

namespace pla {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer (Steele, Lea, Flood).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Standard-normal quantile. Acklam's rational approximation followed by one
// Halley step against erfc, giving near machine precision on (0, 1).
inline double inv_norm_cdf(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    double x;
    if (p < p_low) {
        double u = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
            ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    } else if (p > 1.0 - p_low) {
        double u = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
            ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    } else {
        double u = p - 0.5, r = u * u;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    // Halley refinement: e = Phi(x) - p.
    double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

// Counter-based deterministic stream. The n-th 64-bit draw is
//   mix64(base + (n + 1) * kGolden),  base = mix64(mix64(master_seed + kGolden) ^ stream_id),
// so draws depend only on (master_seed, stream_id, n); streams with distinct
// ids are independent and a stream replays identically from construction.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : base_(mix64(mix64(master_seed + kGolden) ^ stream_id)) {}

    std::uint64_t next_u64() { return mix64(base_ + (++counter_) * kGolden); }

    // Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    // Standard normal via the inverse CDF (part of the reproducibility
    // contract: one uniform consumed per deviate).
    double gaussian() { return inv_norm_cdf(uniform()); }

    std::uint8_t bit() { return static_cast<std::uint8_t>(next_u64() >> 63); }

    BitVec bit_vector(int n) {
        BitVec v(n);
        for (int i = 0; i < n; ++i) v[i] = bit();
        return v;
    }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

}  // namespace pla
