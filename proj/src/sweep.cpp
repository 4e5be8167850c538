#include "dib/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "dib/mmse.hpp"
#include "dib/parallel.hpp"
#include "dib/qci.hpp"
#include "dib/upper_bound.hpp"

namespace dib {

namespace {

// Substream ids of the root seed.
constexpr std::uint64_t kQciRelayStream = 100;  // + relay index
constexpr std::uint64_t kMmseStream = 200;

}  // namespace

void SweepSpec::validate() const {
    if (grid.empty()) throw ConfigError("grid: must not be empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) throw ConfigError("grid: values must be finite");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw ConfigError("grid: values must be strictly increasing");
    }
    if (mode == SweepMode::capacity_sweep)
        for (double c : grid)
            if (c < 0.0) throw ConfigError("grid: capacities must be >= 0");
    if (mode == SweepMode::single_point && grid.size() != 1) throw ConfigError("grid: single_point takes exactly one SNR");
    for (int b : qci_bits)
        if (b < 0 || b > 12) throw ConfigError("qci_bits: each value must lie in [0, 12]");
    if (mc.samples < 1) throw ConfigError("mc.samples: must be >= 1");
    if (!qci_bits.empty() && mc.grid_samples < 2) throw ConfigError("mc.grid_samples: must be >= 2");
    if (threads < 1) throw ConfigError("threads: must be >= 1");
    try {
        ChannelConfig probe = base;
        probe.sigma2 = 1.0;
        probe.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("base: ") + e.what());
    }
}

bool SweepResult::any_failure() const {
    return std::any_of(points.begin(), points.end(), [](const RatePoint& p) { return p.failed(); });
}

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    const RngStream root(spec.mc.seed);
    const ChannelConfig& base = spec.base;
    const bool qci_applicable = base.m <= std::min(base.n1, base.n2);

    // Noise levels scale linearly with sigma2, so one normalized sample set
    // per relay serves every grid point.
    std::array<std::vector<double>, 2> unit_noise;
    if (!spec.qci_bits.empty() && qci_applicable) {
        for (int k = 0; k < 2; ++k) {
            RngStream stream = root.substream(kQciRelayStream + static_cast<std::uint64_t>(k));
            unit_noise[k] = noise_level_samples(base.m, base.relay_antennas(k), 1.0, spec.mc.grid_samples, stream);
            std::sort(unit_noise[k].begin(), unit_noise[k].end());
        }
    }
    const RngStream mmse_stream = root.substream(kMmseStream);

    SweepResult result{spec, std::vector<RatePoint>(spec.grid.size())};
    parallel_for(spec.grid.size(), spec.threads, [&](std::size_t i) {
        RatePoint& point = result.points[i];
        ChannelConfig cfg = base;
        if (spec.mode == SweepMode::capacity_sweep) {
            point.snr_db = spec.snr_db;
            point.c_bits = spec.grid[i];
            cfg.c1 = cfg.c2 = spec.grid[i];
        } else {
            point.snr_db = spec.grid[i];
            point.c_bits = base.c1;
        }
        cfg.sigma2 = sigma2_from_snr_db(point.snr_db);

        try {
            point.r_ub = upper_bound_rate(cfg).rate;
        } catch (const std::exception& e) {
            point.errors.push_back(std::string("r_ub: ") + e.what());
        }

        for (int bits : spec.qci_bits) {
            if (!qci_applicable) {
                point.r_lb1[bits] = QciCell::failed();
                point.errors.push_back("r_lb1_B" + std::to_string(bits) + ": channel inversion needs M <= min(N1, N2)");
                continue;
            }
            try {
                std::array<QuantGrid, 2> grids;
                for (int k = 0; k < 2; ++k) {
                    std::vector<double> scaled(unit_noise[k]);
                    for (double& a : scaled) a *= cfg.sigma2;
                    grids[k] = build_quantile_grid(scaled, bits, cfg.sigma2);
                }
                point.r_lb1[bits] = QciCell::ok(qci_rate(cfg, grids[0], grids[1]).rate);
            } catch (const InfeasibleBudget&) {
                point.r_lb1[bits] = QciCell::infeasible();
            } catch (const std::exception& e) {
                point.r_lb1[bits] = QciCell::failed();
                point.errors.push_back("r_lb1_B" + std::to_string(bits) + ": " + e.what());
            }
        }

        try {
            const MmseArtifacts mmse = mmse_rate(cfg, spec.mc.samples, mmse_stream);
            point.r_lb2 = mmse.rate;
            point.r_lb2_stderr = mmse.mc_std_err;
        } catch (const std::exception& e) {
            point.errors.push_back(std::string("r_lb2: ") + e.what());
        }
    });
    return result;
}

SweepSpec preset(const std::string& name) {
    SweepSpec spec;
    spec.base = ChannelConfig{3, 3, 3, 1.0, 40.0, 40.0};
    spec.qci_bits = {1, 2, 3, 4};
    if (name == "fig2") {
        spec.mode = SweepMode::snr_sweep;
        for (int db = 0; db <= 50; db += 10) spec.grid.push_back(db);
    } else if (name == "fig3") {
        spec.mode = SweepMode::capacity_sweep;
        spec.snr_db = 40.0;
        for (int c = 5; c <= 60; c += 5) spec.grid.push_back(c);
    } else {
        throw ConfigError("unknown preset '" + name + "' (expected fig2 or fig3)");
    }
    return spec;
}

}  // namespace dib
