#include "dib/qci.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dib/scalar_dib.hpp"

namespace dib {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kInf = std::numeric_limits<double>::infinity();

double log2_det_hpd(const ComplexMatrix& a) {
    Eigen::LLT<ComplexMatrix> llt(a);
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::quiet_NaN();
    const ComplexMatrix& l = llt.matrixLLT();
    double s = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) s += std::log2(l(i, i).real());
    return 2.0 * s;
}

}  // namespace

InfeasibleBudget::InfeasibleBudget(int relay, double minimum_capacity)
    : std::runtime_error("QCI grid infeasible for relay " + std::to_string(relay + 1) +
                         ": capacity must exceed " + std::to_string(minimum_capacity) + " bits"),
      relay_(relay),
      minimum_capacity_(minimum_capacity) {}

double QuantGrid::ceil_level(double a) const {
    const auto it = std::lower_bound(levels.begin(), levels.end(), a);
    return it == levels.end() ? kInf : *it;
}

void QuantGrid::validate() const {
    const std::size_t j = levels.size();
    if (j == 0 || probs.size() != j || snr.size() != j) throw std::invalid_argument("QuantGrid: inconsistent sizes");
    if (!std::isinf(levels.back())) throw std::invalid_argument("QuantGrid: terminal level must be +inf");
    for (std::size_t i = 0; i + 1 < j; ++i) {
        if (!(levels[i] > 0.0) || !std::isfinite(levels[i])) throw std::invalid_argument("QuantGrid: levels must be positive");
        if (i > 0 && !(levels[i] > levels[i - 1])) throw std::invalid_argument("QuantGrid: levels must ascend strictly");
    }
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw std::invalid_argument("QuantGrid: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("QuantGrid: probabilities must sum to 1");
}

std::vector<double> noise_level_samples(int m, int n_k, double sigma2, std::size_t n, RngStream& rng) {
    if (m < 1 || n_k < 1) throw std::invalid_argument("noise_level_samples: antenna counts must be >= 1");
    if (m > n_k) throw std::invalid_argument("noise_level_samples: channel inversion needs m <= n_k");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("noise_level_samples: sigma2 must be positive");
    std::vector<double> out;
    out.reserve(n);
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(m);
    e0(0) = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const ComplexMatrix h = sample_complex_gaussian(n_k, m, rng);
        const ComplexMatrix gram = h.adjoint() * h;
        const Eigen::VectorXcd col = gram.llt().solve(e0);
        out.push_back(sigma2 * col(0).real());
    }
    return out;
}

QuantGrid build_quantile_grid(std::span<const double> samples, int bits, double sigma2) {
    if (bits < 0 || bits > 20) throw std::invalid_argument("build_quantile_grid: bits must lie in [0, 20]");
    if (samples.empty()) throw std::invalid_argument("build_quantile_grid: no samples");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("build_quantile_grid: sigma2 must be positive");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    const std::size_t levels = std::size_t{1} << bits;
    QuantGrid grid;
    grid.bits = bits;
    grid.sigma2 = sigma2;
    const double last = static_cast<double>(sorted.size() - 1);
    for (std::size_t j = 1; j < levels; ++j) {
        const double h = last * static_cast<double>(j) / static_cast<double>(levels);
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        grid.levels.push_back(sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]));
    }
    grid.levels.push_back(kInf);
    grid.probs.assign(levels, 1.0 / static_cast<double>(levels));
    for (double b : grid.levels) grid.snr.push_back(std::isinf(b) ? 0.0 : 1.0 / b);
    grid.validate();
    return grid;
}

double entropy_budget(const QuantGrid& grid, int m) {
    double h = 0.0;
    for (double p : grid.probs)
        if (p > 0.0) h -= p * std::log2(p);
    return m * h;
}

namespace {

// Log-barrier interior-point solver for the joint allocation program.
//
// Variables: c (free capacities, one per relay level with nonzero SNR) and,
// for every level pair (j1, j2), a local block y = (r1, r2, beta).
// Constraints per block: g_T(r, c) - beta > 0 for the four subsets T,
// 0 < r_k < c_k for active relays. Per relay: sum_j P c <= budget.
class AllocationProgram {
public:
    AllocationProgram(const QuantGrid& g1, const QuantGrid& g2, int m, std::array<double, 2> budget)
        : grids_{&g1, &g2}, budget_(budget) {
        for (int k = 0; k < 2; ++k) {
            const QuantGrid& g = *grids_[k];
            index_[k].assign(g.size(), -1);
            for (std::size_t j = 0; j < g.size(); ++j)
                if (g.snr[j] > 0.0 && g.probs[j] > 0.0) {
                    index_[k][j] = static_cast<int>(owner_.size());
                    owner_.push_back(k);
                    weight_.push_back(g.probs[j]);
                }
        }
        for (std::size_t j1 = 0; j1 < g1.size(); ++j1)
            for (std::size_t j2 = 0; j2 < g2.size(); ++j2) {
                Block b;
                b.j1 = j1;
                b.j2 = j2;
                b.var = {index_[0][j1], index_[1][j2]};
                b.snr = {g1.snr[j1], g2.snr[j2]};
                b.weight = m * g1.probs[j1] * g2.probs[j2];
                if ((b.var[0] >= 0 || b.var[1] >= 0) && b.weight > 0.0) blocks_.push_back(b);
            }
    }

    std::size_t num_free() const { return owner_.size(); }
    int free_index(int k, std::size_t j) const { return index_[k][j]; }
    bool empty() const { return blocks_.empty() || owner_.empty(); }

    // Returns the optimal free capacities.
    Eigen::VectorXd solve(double gap_tol, int& newton_steps) {
        const auto n = static_cast<Eigen::Index>(num_free());
        Eigen::VectorXd c(n);
        std::array<double, 2> mass{0.0, 0.0};
        for (Eigen::Index i = 0; i < n; ++i) mass[owner_[i]] += weight_[i];
        for (Eigen::Index i = 0; i < n; ++i) c(i) = 0.5 * budget_[owner_[i]] / mass[owner_[i]];

        std::vector<Eigen::Vector3d> y(blocks_.size());
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            const auto cc = local_c(blocks_[b], c);
            Eigen::Vector3d yb(0.5 * cc[0], 0.5 * cc[1], 0.0);
            const auto h = constraint_values(blocks_[b], yb, cc);
            yb(2) = *std::min_element(h.begin(), h.end()) - 1.0;
            y[b] = yb;
        }

        const double barrier_terms = static_cast<double>(count_barrier_terms());
        double t = 1.0;
        while (true) {
            centering(t, c, y, newton_steps);
            if (barrier_terms / t < gap_tol) break;
            t *= 20.0;
        }
        return c;
    }

private:
    struct Block {
        std::size_t j1 = 0, j2 = 0;
        std::array<int, 2> var{-1, -1};
        std::array<double, 2> snr{0.0, 0.0};
        double weight = 0.0;
        bool active(int k) const { return var[k] >= 0; }
    };

    using Vec5 = Eigen::Matrix<double, 5, 1>;
    using Mat5 = Eigen::Matrix<double, 5, 5>;

    std::array<double, 2> local_c(const Block& b, const Eigen::VectorXd& c) const {
        return {b.active(0) ? c(b.var[0]) : 0.0, b.active(1) ? c(b.var[1]) : 0.0};
    }

    std::size_t count_barrier_terms() const {
        std::size_t m = 0;
        for (const Block& b : blocks_) m += 4 + 2 * (static_cast<std::size_t>(b.active(0)) + b.active(1));
        for (int k = 0; k < 2; ++k)
            if (std::count(owner_.begin(), owner_.end(), k) > 0) ++m;
        return m;
    }

    std::array<double, 4> constraint_values(const Block& b, const Eigen::Vector3d& y, std::array<double, 2> c) const {
        std::array<double, 4> h{};
        for (unsigned mask = 0; mask < 4; ++mask) {
            double snr = 1.0;
            double slack = 0.0;
            for (int k = 0; k < 2; ++k) {
                if (!b.active(k)) continue;
                if (mask & (1u << k))
                    slack += c[k] - y(k);
                else
                    snr += b.snr[k] * -std::expm1(-y(k) * kLn2);
            }
            h[mask] = std::log2(snr) + slack - y(2);
        }
        return h;
    }

    // Barrier value of one block at local point z = (r1, r2, beta, c1, c2);
    // +inf outside the domain.
    double block_value(const Block& b, const Eigen::Vector3d& y, std::array<double, 2> c, double t) const {
        double v = -t * b.weight * y(2);
        for (double h : constraint_values(b, y, c)) {
            if (!(h > 0.0)) return kInf;
            v -= std::log(h);
        }
        for (int k = 0; k < 2; ++k) {
            if (!b.active(k)) continue;
            const double lo = y(k);
            const double hi = c[k] - y(k);
            if (!(lo > 0.0) || !(hi > 0.0)) return kInf;
            v -= std::log(lo) + std::log(hi);
        }
        return v;
    }

    void block_derivatives(const Block& b, const Eigen::Vector3d& y, std::array<double, 2> c, double t, Vec5& grad,
                           Mat5& hess) const {
        grad.setZero();
        hess.setZero();
        grad(2) = -t * b.weight;
        std::array<double, 2> u{}, du{}, d2u{};
        for (int k = 0; k < 2; ++k) {
            if (!b.active(k)) continue;
            const double decay = std::exp2(-y(k));
            u[k] = b.snr[k] * -std::expm1(-y(k) * kLn2);
            du[k] = b.snr[k] * kLn2 * decay;
            d2u[k] = -b.snr[k] * kLn2 * kLn2 * decay;
        }
        for (unsigned mask = 0; mask < 4; ++mask) {
            double s = 1.0;
            double slack = 0.0;
            Vec5 dh = Vec5::Zero();
            Mat5 d2h = Mat5::Zero();
            for (int k = 0; k < 2; ++k) {
                if (!b.active(k)) continue;
                if (mask & (1u << k)) {
                    slack += c[k] - y(k);
                    dh(k) = -1.0;
                    dh(3 + k) = 1.0;
                } else {
                    s += u[k];
                }
            }
            for (int k = 0; k < 2; ++k) {
                if (!b.active(k) || (mask & (1u << k))) continue;
                dh(k) = du[k] / (s * kLn2);
                d2h(k, k) += d2u[k] / (s * kLn2);
            }
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    if (!b.active(k) || !b.active(l) || (mask & (1u << k)) || (mask & (1u << l))) continue;
                    d2h(k, l) -= du[k] * du[l] / (s * s * kLn2);
                }
            dh(2) = -1.0;
            const double h = std::log2(s) + slack - y(2);
            grad -= dh / h;
            hess += dh * dh.transpose() / (h * h) - d2h / h;
        }
        for (int k = 0; k < 2; ++k) {
            if (!b.active(k)) {
                hess(k, k) = 1.0;
                continue;
            }
            const double lo = y(k);
            const double hi = c[k] - y(k);
            grad(k) += -1.0 / lo + 1.0 / hi;
            grad(3 + k) += -1.0 / hi;
            hess(k, k) += 1.0 / (lo * lo) + 1.0 / (hi * hi);
            hess(k, 3 + k) -= 1.0 / (hi * hi);
            hess(3 + k, k) -= 1.0 / (hi * hi);
            hess(3 + k, 3 + k) += 1.0 / (hi * hi);
        }
    }

    std::array<double, 2> budget_slack(const Eigen::VectorXd& c) const {
        std::array<double, 2> s = budget_;
        for (Eigen::Index i = 0; i < c.size(); ++i) s[owner_[i]] -= weight_[i] * c(i);
        return s;
    }

    double objective(const Eigen::VectorXd& c, const std::vector<Eigen::Vector3d>& y, double t) const {
        double v = 0.0;
        const auto slack = budget_slack(c);
        for (int k = 0; k < 2; ++k) {
            if (std::count(owner_.begin(), owner_.end(), k) == 0) continue;
            if (!(slack[k] > 0.0)) return kInf;
            v -= std::log(slack[k]);
        }
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            const double bv = block_value(blocks_[b], y[b], local_c(blocks_[b], c), t);
            if (!std::isfinite(bv)) return kInf;
            v += bv;
        }
        return v;
    }

    void centering(double t, Eigen::VectorXd& c, std::vector<Eigen::Vector3d>& y, int& newton_steps) const {
        const Eigen::Index n = c.size();
        const std::size_t nb = blocks_.size();
        std::vector<Eigen::Matrix3d> a_inv(nb);
        std::vector<Eigen::Matrix<double, 3, 2>> coupling(nb);
        std::vector<Eigen::Vector3d> grad_y(nb);
        std::vector<Eigen::Vector3d> step_y(nb);

        for (int iter = 0; iter < 200; ++iter) {
            Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(n, n);
            Eigen::VectorXd grad_c = Eigen::VectorXd::Zero(n);
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

            const auto slack = budget_slack(c);
            for (Eigen::Index i = 0; i < n; ++i) grad_c(i) += weight_[i] / slack[owner_[i]];
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    if (owner_[i] == owner_[j])
                        schur(i, j) += weight_[i] * weight_[j] / (slack[owner_[i]] * slack[owner_[i]]);

            for (std::size_t bi = 0; bi < nb; ++bi) {
                const Block& b = blocks_[bi];
                Vec5 g;
                Mat5 h;
                block_derivatives(b, y[bi], local_c(b, c), t, g, h);
                const Eigen::Matrix3d a = h.topLeftCorner<3, 3>();
                a_inv[bi] = a.inverse();
                coupling[bi] = h.topRightCorner<3, 2>();
                grad_y[bi] = g.head<3>();
                const Eigen::Matrix<double, 2, 3> bt_ainv = coupling[bi].transpose() * a_inv[bi];
                const Eigen::Matrix2d reduced = h.bottomRightCorner<2, 2>() - bt_ainv * coupling[bi];
                const Eigen::Vector2d reduced_rhs = bt_ainv * grad_y[bi];
                for (int k = 0; k < 2; ++k) {
                    if (!b.active(k)) continue;
                    grad_c(b.var[k]) += g(3 + k);
                    rhs(b.var[k]) += reduced_rhs(k);
                    for (int l = 0; l < 2; ++l)
                        if (b.active(l)) schur(b.var[k], b.var[l]) += reduced(k, l);
                }
            }
            rhs -= grad_c;
            const Eigen::VectorXd step_c = schur.ldlt().solve(rhs);

            double decrement = -grad_c.dot(step_c);
            for (std::size_t bi = 0; bi < nb; ++bi) {
                const Block& b = blocks_[bi];
                Eigen::Vector2d dc(b.active(0) ? step_c(b.var[0]) : 0.0, b.active(1) ? step_c(b.var[1]) : 0.0);
                step_y[bi] = -a_inv[bi] * (grad_y[bi] + coupling[bi] * dc);
                for (int k = 0; k < 2; ++k)
                    if (!b.active(k)) step_y[bi](k) = 0.0;
                decrement -= grad_y[bi].dot(step_y[bi]);
            }
            ++newton_steps;
            if (!(decrement > 2e-10)) return;

            const double f0 = objective(c, y, t);
            double s = 1.0;
            Eigen::VectorXd c_new;
            std::vector<Eigen::Vector3d> y_new(nb);
            for (int ls = 0; ls < 80; ++ls, s *= 0.5) {
                c_new = c + s * step_c;
                for (std::size_t bi = 0; bi < nb; ++bi) y_new[bi] = y[bi] + s * step_y[bi];
                const double f1 = objective(c_new, y_new, t);
                if (std::isfinite(f1) && f1 <= f0 - 0.25 * s * decrement) break;
                if (ls == 79) return;  // no progress at machine precision
            }
            c = c_new;
            y = y_new;
        }
    }

    std::array<const QuantGrid*, 2> grids_;
    std::array<double, 2> budget_;
    std::array<std::vector<int>, 2> index_;
    std::vector<int> owner_;
    std::vector<double> weight_;
    std::vector<Block> blocks_;
};

void check_qci_inputs(const ChannelConfig& cfg, const QuantGrid& g1, const QuantGrid& g2) {
    cfg.validate();
    g1.validate();
    g2.validate();
    if (cfg.m > std::min(cfg.n1, cfg.n2)) throw std::invalid_argument("qci: channel inversion needs M <= min(N1, N2)");
}

}  // namespace

double qci_rate_for(const ChannelConfig& cfg, const QuantGrid& grid1, const QuantGrid& grid2,
                    std::span<const double> c1, std::span<const double> c2, double scalar_tol) {
    check_qci_inputs(cfg, grid1, grid2);
    if (c1.size() != grid1.size() || c2.size() != grid2.size()) throw std::invalid_argument("qci_rate_for: size mismatch");
    double rate = 0.0;
    for (std::size_t j1 = 0; j1 < grid1.size(); ++j1)
        for (std::size_t j2 = 0; j2 < grid2.size(); ++j2) {
            const double w = cfg.m * grid1.probs[j1] * grid2.probs[j2];
            if (w == 0.0) continue;
            const ScalarDibInstance inst{grid1.snr[j1], grid2.snr[j2], grid1.snr[j1] > 0.0 ? c1[j1] : 0.0,
                                         grid2.snr[j2] > 0.0 ? c2[j2] : 0.0};
            rate += w * solve_scalar_rate(inst, scalar_tol).rate;
        }
    return rate;
}

QciAllocation qci_rate(const ChannelConfig& cfg, const QuantGrid& grid1, const QuantGrid& grid2,
                       const QciOptions& options) {
    check_qci_inputs(cfg, grid1, grid2);
    if (!(options.tol > 0.0)) throw std::invalid_argument("qci_rate: tol must be positive");
    const std::array<const QuantGrid*, 2> grids{&grid1, &grid2};

    QciAllocation out;
    for (int k = 0; k < 2; ++k) {
        const QuantGrid& g = *grids[k];
        const double entropy = entropy_budget(g, cfg.m);
        const double capacity = cfg.capacity(k);
        const bool has_signal = std::any_of(g.snr.begin(), g.snr.end(), [](double s) { return s > 0.0; });
        if (has_signal && !(capacity > entropy)) throw InfeasibleBudget(k, entropy);
        out.budget[k] = std::max(0.0, (capacity - entropy) / cfg.m);
    }
    out.c1.assign(grid1.size(), 0.0);
    out.c2.assign(grid2.size(), 0.0);

    AllocationProgram program(grid1, grid2, cfg.m, out.budget);
    if (!program.empty()) {
        const Eigen::VectorXd c = program.solve(options.tol, out.newton_steps);
        for (int k = 0; k < 2; ++k) {
            auto& dst = k == 0 ? out.c1 : out.c2;
            for (std::size_t j = 0; j < dst.size(); ++j)
                if (program.free_index(k, j) >= 0) dst[j] = c(program.free_index(k, j));
        }
    }

    out.per_pair_rates = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(grid1.size()),
                                               static_cast<Eigen::Index>(grid2.size()));
    for (std::size_t j1 = 0; j1 < grid1.size(); ++j1)
        for (std::size_t j2 = 0; j2 < grid2.size(); ++j2) {
            const ScalarDibInstance inst{grid1.snr[j1], grid2.snr[j2], out.c1[j1], out.c2[j2]};
            const double r = solve_scalar_rate(inst, options.scalar_tol).rate;
            out.per_pair_rates(static_cast<Eigen::Index>(j1), static_cast<Eigen::Index>(j2)) = r;
            out.rate += cfg.m * grid1.probs[j1] * grid2.probs[j2] * r;
        }
    for (std::size_t j = 0; j < grid1.size(); ++j) out.budget_used[0] += grid1.probs[j] * out.c1[j];
    for (std::size_t j = 0; j < grid2.size(); ++j) out.budget_used[1] += grid2.probs[j] * out.c2[j];
    return out;
}

double AppendixReport::min_margin() const {
    double m = kInf;
    for (const auto* v : {&joint_margin, &blockdiag_margin, &conditional_margin})
        for (double x : *v) m = std::min(m, x);
    return m;
}

AppendixReport appendix_inequality_check(const ChannelConfig& cfg, const QuantGrid& grid, const ComplexMatrix& h1,
                                         const ComplexMatrix& h2) {
    cfg.validate();
    grid.validate();
    const int m = cfg.m;
    if (m > std::min(cfg.n1, cfg.n2)) throw std::invalid_argument("appendix check: needs M <= min(N1, N2)");
    if (h1.rows() != cfg.n1 || h2.rows() != cfg.n2 || h1.cols() != m || h2.cols() != m)
        throw std::invalid_argument("appendix check: channel shapes do not match the configuration");

    const double entropy = entropy_budget(grid, m);
    const std::array<const ComplexMatrix*, 2> channels{&h1, &h2};
    std::array<ComplexMatrix, 2> actual;
    std::array<ComplexMatrix, 2> surrogate;
    for (int k = 0; k < 2; ++k) {
        const double per_subchannel = (cfg.capacity(k) - entropy) / m;
        if (!(per_subchannel > 0.0)) throw InfeasibleBudget(k, entropy);
        const ComplexMatrix gram = channels[k]->adjoint() * *channels[k];
        const ComplexMatrix noise = cfg.sigma2 * gram.llt().solve(ComplexMatrix::Identity(m, m));
        actual[k] = ComplexMatrix::Identity(m, m) + noise;
        surrogate[k] = ComplexMatrix::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            const double a = noise(i, i).real();
            double level = grid.ceil_level(a);
            if (std::isinf(level)) level = a;
            const double w = (1.0 + level) / std::expm1(per_subchannel * kLn2);
            actual[k](i, i) += (level - a) + w;
            surrogate[k](i, i) = 1.0 + level + w;
        }
        actual[k] = 0.5 * (actual[k] + actual[k].adjoint()).eval();
    }

    const auto joint = [m](const ComplexMatrix& p, const ComplexMatrix& q) {
        ComplexMatrix s(2 * m, 2 * m);
        s << p, ComplexMatrix::Identity(m, m), ComplexMatrix::Identity(m, m), q;
        return s;
    };
    const auto conditional = [m](const ComplexMatrix& p, const ComplexMatrix& q) {
        return ComplexMatrix(p - q.llt().solve(ComplexMatrix::Identity(m, m)));
    };

    const ComplexMatrix sigma = joint(actual[0], actual[1]);
    const ComplexMatrix sigma_g = joint(surrogate[0], surrogate[1]);

    AppendixReport report;
    report.draws = 1;
    for (const ComplexMatrix* s : {&sigma, &sigma_g}) {
        const double lo = hermitian_eigenvalues(*s).minCoeff();
        if (lo < -1e-9 * s->trace().real()) report.covariances_psd = false;
    }
    const double ld_sigma = log2_det_hpd(sigma);
    report.joint_margin.push_back(log2_det_hpd(sigma_g) - ld_sigma);
    report.blockdiag_margin.push_back(log2_det_hpd(surrogate[0]) + log2_det_hpd(surrogate[1]) - ld_sigma);
    report.conditional_margin.push_back(log2_det_hpd(conditional(surrogate[0], surrogate[1])) -
                                        log2_det_hpd(conditional(actual[0], actual[1])));
    for (const auto* v : {&report.joint_margin, &report.blockdiag_margin, &report.conditional_margin})
        if (!(v->back() >= -1e-9)) ++report.violations;
    return report;
}

AppendixReport appendix_inequality_check(const ChannelConfig& cfg, const QuantGrid& grid, RngStream& rng, int draws) {
    AppendixReport total;
    for (int d = 0; d < draws; ++d) {
        const ComplexMatrix h1 = sample_complex_gaussian(cfg.n1, cfg.m, rng);
        const ComplexMatrix h2 = sample_complex_gaussian(cfg.n2, cfg.m, rng);
        const AppendixReport one = appendix_inequality_check(cfg, grid, h1, h2);
        total.draws += 1;
        total.joint_margin.push_back(one.joint_margin.front());
        total.blockdiag_margin.push_back(one.blockdiag_margin.front());
        total.conditional_margin.push_back(one.conditional_margin.front());
        total.covariances_psd = total.covariances_psd && one.covariances_psd;
        total.violations += one.violations;
    }
    return total;
}

}  // namespace dib
