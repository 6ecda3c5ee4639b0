#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "pla/bits.hpp"
#include "pla/errors.hpp"
#include "pla/params.hpp"
#include "pla/rng.hpp"

namespace pla {

struct TaggedSignal {
    std::vector<double> samples;  // length l_s, unit average power
};

struct ReceivedSignal {
    std::vector<double> samples;  // length l_s
    double noise_var = 0.0;       // per-sample variance of the channel noise
};

struct ObservedTag {
    std::vector<double> samples;  // length l_t, message-free tag observation
    double gamma_t = 0.0;         // linear SNR of the unit-amplitude tag
};

// Bit-to-symbol convention, fixed globally: 0 -> +1, 1 -> -1.
inline std::vector<double> bpsk(const BitVec& bits) {
    std::vector<double> out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ? -1.0 : 1.0;
    return out;
}

// Repetition spreading: each tag symbol repeated q times.
inline std::vector<double> spread(const Tag& t, int q) {
    if (q < 1) throw parameter_error("spread: q must be >= 1");
    auto symbols = bpsk(t.bits);
    std::vector<double> out;
    out.reserve(symbols.size() * q);
    for (double s : symbols)
        for (int j = 0; j < q; ++j) out.push_back(s);
    return out;
}

// u = rho_s * bpsk(s) + rho_t * spread(t, q).
inline TaggedSignal superpose(const Message& s, const Tag& t, const SystemParams& params) {
    params.validate();
    if (static_cast<int>(s.bits.size()) != params.l_s)
        throw parameter_error("superpose: message length mismatch");
    if (static_cast<int>(t.bits.size()) != params.l_t)
        throw parameter_error("superpose: tag length mismatch");
    auto sm = bpsk(s.bits);
    auto tq = spread(t, params.q);
    TaggedSignal u;
    u.samples.resize(params.l_s);
    for (int i = 0; i < params.l_s; ++i)
        u.samples[i] = params.rho_s * sm[i] + params.rho_t * tq[i];
    return u;
}

inline ReceivedSignal awgn(const TaggedSignal& u, double noise_var, RngStream& rng) {
    if (noise_var < 0.0) throw parameter_error("awgn: negative noise variance");
    ReceivedSignal r;
    r.noise_var = noise_var;
    r.samples.resize(u.samples.size());
    const double sd = std::sqrt(noise_var);
    for (std::size_t i = 0; i < u.samples.size(); ++i)
        r.samples[i] = u.samples[i] + (noise_var > 0.0 ? sd * rng.gaussian() : 0.0);
    return r;
}

// Subtract the (perfectly known) message, block-average each q-chip group and
// normalize by rho_t. Matched filter for the repetition pattern: the result is
// bpsk(t) + w with per-component noise variance noise_var / (q * rho_t^2).
inline ObservedTag cancel_and_despread(const ReceivedSignal& r, const Message& s,
                                       const SystemParams& params) {
    params.validate();
    if (static_cast<int>(r.samples.size()) != params.l_s)
        throw parameter_error("cancel_and_despread: received length mismatch");
    if (static_cast<int>(s.bits.size()) != params.l_s)
        throw parameter_error("cancel_and_despread: message length mismatch");
    auto sm = bpsk(s.bits);
    ObservedTag y;
    y.samples.resize(params.l_t);
    for (int i = 0; i < params.l_t; ++i) {
        double acc = 0.0;
        for (int j = 0; j < params.q; ++j) {
            int idx = i * params.q + j;
            acc += r.samples[idx] - params.rho_s * sm[idx];
        }
        y.samples[i] = acc / (params.q * params.rho_t);
    }
    y.gamma_t = r.noise_var > 0.0
                    ? params.q * params.rho_t * params.rho_t / r.noise_var
                    : std::numeric_limits<double>::infinity();
    return y;
}

struct SnrPoint {
    double gamma_t_db = 0.0;
    double eb_n0_db = 0.0;
};

// Eb/N0 = gamma_t / R_c, both reported in dB.
inline SnrPoint snr_conversions(const SystemParams& params) {
    params.validate();
    double rc = static_cast<double>(params.l_k) / params.l_t;
    return {10.0 * std::log10(params.gamma_t), 10.0 * std::log10(params.gamma_t / rc)};
}

// Inverse of the sweep relation: gamma_t for a given Eb/N0 in dB at rate rc.
inline double gamma_from_eb_n0_db(double eb_n0_db, double rc) {
    return rc * std::pow(10.0, eb_n0_db / 10.0);
}

}  // namespace pla
