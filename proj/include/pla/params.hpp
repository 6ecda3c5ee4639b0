#pragma once

#include <cmath>
#include <string>

#include "pla/errors.hpp"

namespace pla {

// Scalar parameters of the authentication system: frame geometry, power
// split between message and tag, and the post-despreading tag SNR.
struct SystemParams {
    int l_s = 0;           // message length in bits
    int l_k = 0;           // key length in bits
    int l_t = 0;           // tag length in bits
    int q = 1;             // spreading factor, l_s == q * l_t
    double rho_s = 0.0;    // message amplitude, 0 < rho_s < 1
    double rho_t = 0.0;    // tag amplitude, 0 < rho_t < 1
    double gamma_t = 0.0;  // tag SNR, linear, > 0

    void validate() const {
        if (l_s < 1 || l_k < 1 || l_t < 1)
            throw parameter_error("SystemParams: all lengths must be >= 1");
        if (q < 1 || l_s != q * l_t)
            throw parameter_error("SystemParams: require l_s == q * l_t with q >= 1");
        if (!(rho_s > 0.0 && rho_s < 1.0 && rho_t > 0.0 && rho_t < 1.0))
            throw parameter_error("SystemParams: amplitudes must lie in (0, 1)");
        if (std::abs(rho_s * rho_s + rho_t * rho_t - 1.0) > 1e-12)
            throw parameter_error("SystemParams: rho_s^2 + rho_t^2 must equal 1");
        if (l_k > l_t)
            throw parameter_error("SystemParams: l_k must not exceed l_t (code rate <= 1)");
        if (!(gamma_t > 0.0))
            throw parameter_error("SystemParams: gamma_t must be positive");
    }
};

// Convenience builder with the unit power constraint solved for rho_s.
inline SystemParams make_params(int l_k, int l_t, int q, double rho_t, double gamma_t) {
    SystemParams p;
    p.l_k = l_k;
    p.l_t = l_t;
    p.q = q;
    p.l_s = q * l_t;
    p.rho_t = rho_t;
    p.rho_s = std::sqrt(1.0 - rho_t * rho_t);
    p.gamma_t = gamma_t;
    p.validate();
    return p;
}

}  // namespace pla
