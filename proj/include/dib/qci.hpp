#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "dib/channel.hpp"
#include "dib/matrix_stat.hpp"

namespace dib {

// Quantization grid for the per-subchannel noise power after zero forcing.
// levels[j] is b_{j+1} in noise-power units; the last level is +inf.
// snr[j] = 1 / b_{j+1}, i.e. 1 / (normalized level * sigma2), and is 0 for
// the terminal level.
struct QuantGrid {
    int bits = 0;
    double sigma2 = 1.0;
    std::vector<double> levels;
    std::vector<double> probs;
    std::vector<double> snr;

    std::size_t size() const { return levels.size(); }

    /// Smallest level >= a.
    double ceil_level(double a) const;
    void validate() const;
};

// Per-relay, per-level capacities and the resulting rate.
struct QciAllocation {
    std::vector<double> c1;             // c_{1,j}, bits per subchannel use
    std::vector<double> c2;             // c_{2,j}
    Eigen::MatrixXd per_pair_rates;     // R_{j1,j2}
    double rate = 0.0;                  // bits per complex channel use
    std::array<double, 2> budget_used{};   // sum_j P_{k,j} c_{k,j}
    std::array<double, 2> budget{};        // (C_k - H_sum^k) / M
    int newton_steps = 0;
};

class InfeasibleBudget : public std::runtime_error {
public:
    InfeasibleBudget(int relay, double minimum_capacity);
    int relay() const { return relay_; }
    /// Capacities strictly above this value admit the grid.
    double minimum_capacity() const { return minimum_capacity_; }

private:
    int relay_;
    double minimum_capacity_;
};

/// Samples of one diagonal entry of sigma2 (H^H H)^{-1}, H of size n_k x m.
std::vector<double> noise_level_samples(int m, int n_k, double sigma2, std::size_t n, RngStream& rng);

/// Uniform-pmf grid: b_j is the empirical (j/J)-quantile (linear
/// interpolation between order statistics) for j < J, J = 2^bits.
QuantGrid build_quantile_grid(std::span<const double> samples, int bits, double sigma2);

/// Bits per channel use spent on the noise levels: -m sum_j P_j log2 P_j.
double entropy_budget(const QuantGrid& grid, int m);

struct QciOptions {
    double tol = 1e-7;         // duality-gap target of the allocation program, bits
    double scalar_tol = 1e-10; // tolerance handed to the per-pair scalar solver
};

/// Optimal level-wise capacity allocation of the quantized-channel-inversion
/// scheme: maximizes sum_{j1,j2} M P_{1,j1} P_{2,j2} R_{j1,j2}(c) subject to
/// sum_j P_{k,j} c_{k,j} <= (C_k - H_sum^k)/M and c >= 0, c_{k,J} = 0.
/// The joint program over (c, r, beta) is solved by a log-barrier Newton
/// method whose per-pair blocks are eliminated through a Schur complement.
QciAllocation qci_rate(const ChannelConfig& cfg, const QuantGrid& grid1, const QuantGrid& grid2,
                       const QciOptions& options = {});

/// Rate of a given allocation (no optimization).
double qci_rate_for(const ChannelConfig& cfg, const QuantGrid& grid1, const QuantGrid& grid2,
                    std::span<const double> c1, std::span<const double> c2, double scalar_tol = 1e-10);

struct AppendixReport {
    int draws = 0;
    // log2 det(surrogate) - log2 det(actual), one entry per draw.
    std::vector<double> joint_margin;       // full Gaussian surrogate covariance of (z1, z2)
    std::vector<double> blockdiag_margin;   // surrogate with the cross blocks dropped
    std::vector<double> conditional_margin; // covariance of z1 given z2
    bool covariances_psd = true;
    int violations = 0;                     // margins below -1e-9

    double min_margin() const;
};

/// Monte Carlo check of the determinant inequalities behind the QCI bound.
/// Per draw, A_k = sigma2 (H_k^H H_k)^{-1}, the diagonal is lifted to the
/// grid (the terminal +inf level keeps the realized value) and compression
/// noise w = (1 + level) / (2^c - 1) with c = (C_k - H_sum^k)/M per
/// subchannel (c = C_k/M when the grid carries no entropy).
AppendixReport appendix_inequality_check(const ChannelConfig& cfg, const QuantGrid& grid, RngStream& rng,
                                         int draws = 1000);

/// Same check for one fixed channel pair.
AppendixReport appendix_inequality_check(const ChannelConfig& cfg, const QuantGrid& grid, const ComplexMatrix& h1,
                                         const ComplexMatrix& h2);

}  // namespace dib
