#pragma once

#include <array>
#include <cstddef>

#include "dib/channel.hpp"
#include "dib/matrix_stat.hpp"

namespace dib {

/// F = (H H^H + sigma2 I)^{-1} H; the relay's estimate of x is F^H y.
ComplexMatrix mmse_filter(const ComplexMatrix& h, double sigma2);

/// Compression noise variance making the Gaussian surrogate rate
/// M log2(1 + (T_k/M) shrink / D) equal to c_k exactly:
///   D = (T_k/M) shrink / (2^{c_k/M} - 1).
/// Throws std::domain_error for c_k <= 0 (infinite noise).
double compression_noise(int t_k, int m, double shrink, double c_k);

/// log2 det(I + E[xbar xbar^H] / D) with E[xbar xbar^H] = (T_k/M) shrink I.
double surrogate_link_rate(int t_k, int m, double shrink, double d);

struct MmseArtifacts {
    std::array<double, 2> d{};       // compression noise per relay (inf when the link is off)
    std::array<double, 2> shrink{};  // E[lambda / (lambda + sigma2)] per relay
    std::array<int, 2> t{};          // min(N_k, M)
    std::array<double, 2> g{};       // diagonal value of G_k
    double rate = 0.0;               // bits per complex channel use
    double mc_std_err = 0.0;         // standard error of the log-det expectation
    std::size_t samples = 0;
    double min_eig_ratio = 0.0;      // min over draws of lambda_min / trace (diagnostics only)
};

struct MmseOptions {
    unsigned threads = 1;
    bool check_psd = false;
    Quadrature quad{};
};

/// Monte Carlo evaluation of
///   R = E[log2 det K(H1, H2)] - sum_k log2 det G_k,
/// with G_k = {(T_k/M) s_k - (T_k/M)^2 s_k^2 + D_k} I. Draws are split into
/// fixed chunks with one RNG substream each, so the result is bit-identical
/// for any thread count. A relay with c_k = 0 is dropped (its terms cancel
/// in the limit D_k -> inf); both links off gives rate 0.
MmseArtifacts mmse_rate(const ChannelConfig& cfg, std::size_t n_samples, const RngStream& rng,
                        const MmseOptions& options = {});

struct Lemma2Report {
    std::array<double, 2> link_rate{};  // surrogate rate at the chosen D_k
    std::array<double, 2> residual{};   // link_rate - C_k
    bool saturated(double tol = 1e-9) const;
};

/// Per-link constraint check with D_k from compression_noise.
Lemma2Report lemma2_check(const ChannelConfig& cfg, const Quadrature& quad = {});

/// Same check for explicitly supplied noise variances.
Lemma2Report lemma2_check(const ChannelConfig& cfg, std::array<double, 2> d, const Quadrature& quad = {});

}  // namespace dib
