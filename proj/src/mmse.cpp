#include "dib/mmse.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "dib/parallel.hpp"

namespace dib {

namespace {

constexpr std::size_t kChunk = 256;
constexpr double kLn2 = 0.69314718055994530942;

double log2_det_hpd(const ComplexMatrix& a) {
    Eigen::LLT<ComplexMatrix> llt(a);
    if (llt.info() != Eigen::Success) throw std::runtime_error("log-det of a matrix that is not positive definite");
    const ComplexMatrix& l = llt.matrixLLT();
    double s = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) s += std::log2(l(i, i).real());
    return 2.0 * s;
}

struct ChunkSums {
    double sum = 0.0;
    double sum_sq = 0.0;
    double min_ratio = std::numeric_limits<double>::infinity();
};

}  // namespace

ComplexMatrix mmse_filter(const ComplexMatrix& h, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("mmse_filter: sigma2 must be positive");
    ComplexMatrix cov = h * h.adjoint();
    cov.diagonal().array() += sigma2;
    return cov.llt().solve(h);
}

double compression_noise(int t_k, int m, double shrink, double c_k) {
    if (!(c_k > 0.0)) throw std::domain_error("compression_noise: zero capacity means infinite compression noise");
    if (!(shrink > 0.0) || !(shrink < 1.0)) throw std::invalid_argument("compression_noise: shrink must lie in (0, 1)");
    return (static_cast<double>(t_k) / m) * shrink / std::expm1(c_k / m * kLn2);
}

double surrogate_link_rate(int t_k, int m, double shrink, double d) {
    if (std::isinf(d)) return 0.0;
    return m * std::log2(1.0 + (static_cast<double>(t_k) / m) * shrink / d);
}

MmseArtifacts mmse_rate(const ChannelConfig& cfg, std::size_t n_samples, const RngStream& rng,
                        const MmseOptions& options) {
    cfg.validate();
    if (n_samples < 1) throw std::invalid_argument("mmse_rate: need at least one sample");
    const int m = cfg.m;
    MmseArtifacts out;
    out.samples = n_samples;
    std::array<bool, 2> on{};
    for (int k = 0; k < 2; ++k) {
        const int n_k = cfg.relay_antennas(k);
        out.t[k] = std::min(n_k, m);
        out.shrink[k] = expected_snr_shrinkage(out.t[k], std::max(n_k, m), cfg.sigma2, options.quad);
        on[k] = cfg.capacity(k) > 0.0;
        const double scale = static_cast<double>(out.t[k]) / m;
        if (on[k]) {
            out.d[k] = compression_noise(out.t[k], m, out.shrink[k], cfg.capacity(k));
            out.g[k] = scale * out.shrink[k] - scale * scale * out.shrink[k] * out.shrink[k] + out.d[k];
        } else {
            out.d[k] = std::numeric_limits<double>::infinity();
            out.g[k] = std::numeric_limits<double>::infinity();
        }
    }
    if (!on[0] && !on[1]) return out;

    const int active = static_cast<int>(on[0]) + static_cast<int>(on[1]);
    const std::size_t chunks = (n_samples + kChunk - 1) / kChunk;
    std::vector<ChunkSums> partial(chunks);
    parallel_for(chunks, options.threads, [&](std::size_t ci) {
        RngStream stream = rng.substream(ci);
        const std::size_t begin = ci * kChunk;
        const std::size_t end = std::min(n_samples, begin + kChunk);
        ChunkSums acc;
        for (std::size_t s = begin; s < end; ++s) {
            std::array<ComplexMatrix, 2> signal;  // F_k^H H_k
            std::array<ComplexMatrix, 2> noise;   // F_k^H F_k
            for (int k = 0; k < 2; ++k) {
                const ComplexMatrix h = sample_complex_gaussian(cfg.relay_antennas(k), m, stream);
                const ComplexMatrix f = mmse_filter(h, cfg.sigma2);
                signal[k] = f.adjoint() * h;
                noise[k] = f.adjoint() * f;
            }
            ComplexMatrix k_mat = ComplexMatrix::Zero(active * m, active * m);
            int row = 0;
            for (int i = 0; i < 2; ++i) {
                if (!on[i]) continue;
                int col = 0;
                for (int j = 0; j < 2; ++j) {
                    if (!on[j]) continue;
                    auto block = k_mat.block(row * m, col * m, m, m);
                    block = signal[i] * signal[j].adjoint();
                    if (i == j) {
                        block += cfg.sigma2 * noise[i];
                        block.diagonal().array() += out.d[i];
                    }
                    ++col;
                }
                ++row;
            }
            k_mat = (0.5 * (k_mat + k_mat.adjoint())).eval();
            const double v = log2_det_hpd(k_mat);
            acc.sum += v;
            acc.sum_sq += v * v;
            if (options.check_psd) {
                const double lo = hermitian_eigenvalues(k_mat).minCoeff();
                acc.min_ratio = std::min(acc.min_ratio, lo / k_mat.trace().real());
            }
        }
        partial[ci] = acc;
    });

    std::vector<double> sums(chunks), squares(chunks);
    out.min_eig_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < chunks; ++i) {
        sums[i] = partial[i].sum;
        squares[i] = partial[i].sum_sq;
        out.min_eig_ratio = std::min(out.min_eig_ratio, partial[i].min_ratio);
    }
    if (!options.check_psd) out.min_eig_ratio = 0.0;
    const double n = static_cast<double>(n_samples);
    const double mean = pairwise_sum(sums) / n;
    const double var = n > 1.0 ? std::max(0.0, (pairwise_sum(squares) - n * mean * mean) / (n - 1.0)) : 0.0;
    out.mc_std_err = std::sqrt(var / n);

    double penalty = 0.0;
    for (int k = 0; k < 2; ++k)
        if (on[k]) penalty += m * std::log2(out.g[k]);
    out.rate = mean - penalty;
    return out;
}

bool Lemma2Report::saturated(double tol) const {
    return std::abs(residual[0]) <= tol && std::abs(residual[1]) <= tol;
}

Lemma2Report lemma2_check(const ChannelConfig& cfg, std::array<double, 2> d, const Quadrature& quad) {
    cfg.validate();
    Lemma2Report report;
    for (int k = 0; k < 2; ++k) {
        const int n_k = cfg.relay_antennas(k);
        const int t_k = std::min(n_k, cfg.m);
        const double shrink = expected_snr_shrinkage(t_k, std::max(n_k, cfg.m), cfg.sigma2, quad);
        report.link_rate[k] = surrogate_link_rate(t_k, cfg.m, shrink, d[k]);
        report.residual[k] = report.link_rate[k] - cfg.capacity(k);
    }
    return report;
}

Lemma2Report lemma2_check(const ChannelConfig& cfg, const Quadrature& quad) {
    cfg.validate();
    std::array<double, 2> d{};
    for (int k = 0; k < 2; ++k) {
        const int n_k = cfg.relay_antennas(k);
        const int t_k = std::min(n_k, cfg.m);
        const double shrink = expected_snr_shrinkage(t_k, std::max(n_k, cfg.m), cfg.sigma2, quad);
        d[k] = cfg.capacity(k) > 0.0 ? compression_noise(t_k, cfg.m, shrink, cfg.capacity(k))
                                     : std::numeric_limits<double>::infinity();
    }
    return lemma2_check(cfg, d, quad);
}

}  // namespace dib
