#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "pla/bits.hpp"
#include "pla/detector.hpp"
#include "pla/errors.hpp"
#include "pla/tag_codec.hpp"
#include "pla/waveform.hpp"

namespace pla {

// Eve's recorded (message, observed tag) history.
struct ObservationLog {
    std::vector<std::pair<Message, ObservedTag>> pairs;
};

struct AttackResult {
    std::optional<Key> guessed_key;
    bool success = false;
    std::uint64_t keys_tested = 0;
    double log_likelihood = 0.0;
};

namespace detail {
inline void require_enumerable(const TagFunction& tf, const char* op) {
    if (!tf.enumerable())
        throw capability_error(std::string(op) + ": key space not enumerable (l_k > 24)");
}
}  // namespace detail

// Noiseless lookup-table attack: exhaustive scan in lexicographic key order
// for a key reproducing the tag exactly.
inline AttackResult recover_key_noiseless(const TagFunction& tf, const Message& s,
                                          const Tag& t) {
    detail::require_enumerable(tf, "recover_key_noiseless");
    const int l_k = tf.params().l_k;
    const std::uint64_t n_keys = 1ULL << l_k;
    AttackResult res;
    for (std::uint64_t i = 0; i < n_keys; ++i) {
        Key k = key_from_index(i, l_k);
        ++res.keys_tested;
        if (tf.encode(s, k) == t) {
            res.guessed_key = k;
            res.success = true;
            res.log_likelihood = 0.0;
            return res;
        }
    }
    res.log_likelihood = kNegInf;  // tag is not a codeword of C(s)
    return res;
}

// ML key recovery from a noisy observation: maximize p(y|k,s), i.e. the
// correlation bpsk(tau(s,k))^T y. Ties go to the lexicographically smaller key.
inline AttackResult ml_decode(const TagFunction& tf, const Message& s, const ObservedTag& y) {
    detail::require_enumerable(tf, "ml_decode");
    const int l_k = tf.params().l_k;
    const std::uint64_t n_keys = 1ULL << l_k;
    AttackResult res;
    double best_corr = kNegInf;
    Tag best_tag;
    for (std::uint64_t i = 0; i < n_keys; ++i) {
        Key k = key_from_index(i, l_k);
        Tag c = tf.encode(s, k);
        ++res.keys_tested;
        double corr = statistic(y, c);
        if (corr > best_corr) {
            best_corr = corr;
            res.guessed_key = k;
            best_tag = c;
        }
    }
    double d2 = 0.0;
    auto x = bpsk(best_tag.bits);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double diff = y.samples[i] - x[i];
        d2 += diff * diff;
    }
    res.log_likelihood = -0.5 * y.gamma_t * d2;
    res.success = true;
    return res;
}

// Joint ML over several observations: maximize sum_i gamma_i * corr(c_k(s_i), y_i).
inline AttackResult ml_decode_joint(const TagFunction& tf, const ObservationLog& log) {
    detail::require_enumerable(tf, "ml_decode_joint");
    if (log.pairs.empty()) throw parameter_error("ml_decode_joint: empty observation log");
    const int l_k = tf.params().l_k;
    const std::uint64_t n_keys = 1ULL << l_k;
    AttackResult res;
    double best_score = kNegInf;
    for (std::uint64_t i = 0; i < n_keys; ++i) {
        Key k = key_from_index(i, l_k);
        ++res.keys_tested;
        double score = 0.0;
        for (const auto& [s, y] : log.pairs)
            score += y.gamma_t * statistic(y, tf.encode(s, k));
        if (score > best_score) {
            best_score = score;
            res.guessed_key = k;
            res.log_likelihood = score;
        }
    }
    res.success = true;
    return res;
}

struct ImpersonationPlan {
    Message message;
    Key key;
    int d_star = 0;
};

// Eve's best sub-hypothesis: the (s, k_E != k_B) pair minimizing the Hamming
// distance to Bob's codeword.
inline ImpersonationPlan impersonation_search(const TagFunction& tf, const Key& k_b,
                                              const std::vector<Message>& messages) {
    detail::require_enumerable(tf, "impersonation_search");
    if (messages.empty())
        throw parameter_error("impersonation_search: at least one message required");
    const int l_k = tf.params().l_k;
    const std::uint64_t n_keys = 1ULL << l_k;
    const std::uint64_t b_idx = index_from_key(k_b);
    ImpersonationPlan best;
    best.d_star = tf.params().l_t + 1;
    for (const auto& s : messages) {
        Tag c_b = tf.encode(s, k_b);
        for (std::uint64_t i = 0; i < n_keys; ++i) {
            if (i == b_idx) continue;
            Key k_e = key_from_index(i, l_k);
            int d = hamming_distance(c_b, tf.encode(s, k_e));
            if (d < best.d_star) {
                best.d_star = d;
                best.message = s;
                best.key = k_e;
                if (d == 0) return best;
            }
        }
    }
    return best;
}

// False acceptance probability of the optimized impersonation:
// Q((rho - (L_t - 2 d*)) / sqrt(L_t / gamma_t)).
inline double impersonation_far(int d_star, double threshold, const SystemParams& params) {
    params.validate();
    if (d_star < 0 || d_star > params.l_t)
        throw parameter_error("impersonation_far: d_star out of range");
    HypothesisStats stats{params.l_t, params.gamma_t};
    return q_func((threshold - stats.mean_h1_given(d_star)) / stats.sigma());
}

}  // namespace pla
