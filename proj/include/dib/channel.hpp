#pragma once

#include <cmath>
#include <stdexcept>

namespace dib {

// Two-relay diamond channel: source with m antennas, relay k with n_k
// antennas, noise variance sigma2 per receive antenna, fronthaul capacities
// c1, c2 in bits per complex channel use.
struct ChannelConfig {
    int m = 3;
    int n1 = 3;
    int n2 = 3;
    double sigma2 = 1e-4;
    double c1 = 40.0;
    double c2 = 40.0;

    void validate() const {
        if (m < 1 || n1 < 1 || n2 < 1) throw std::invalid_argument("ChannelConfig: antenna counts must be >= 1");
        if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw std::invalid_argument("ChannelConfig: sigma2 must be positive");
        if (!(c1 >= 0.0) || !(c2 >= 0.0) || !std::isfinite(c1) || !std::isfinite(c2))
            throw std::invalid_argument("ChannelConfig: capacities must be finite and >= 0");
    }

    int relay_antennas(int k) const { return k == 0 ? n1 : n2; }
    double capacity(int k) const { return k == 0 ? c1 : c2; }
};

/// rho_dB = 10 log10(1 / sigma2).
inline double sigma2_from_snr_db(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

}  // namespace dib
