#pragma once

#include <array>

namespace dib {

// Two single-antenna relays with fixed SNRs and link capacities (bits).
struct ScalarDibInstance {
    double rho1 = 0.0;
    double rho2 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
};

// Subsets T of the relay set {1, 2}, encoded as bitmasks.
enum class RelaySubset : unsigned { none = 0, first = 1, second = 2, both = 3 };

inline constexpr std::array<RelaySubset, 4> kAllSubsets = {RelaySubset::none, RelaySubset::first,
                                                           RelaySubset::second, RelaySubset::both};

struct ScalarDibSolution {
    double rate = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double beta = 0.0;
    std::array<double, 4> subset_values{};  // indexed by RelaySubset
};

/// log2[1 + sum_{k not in T} rho_k (1 - 2^{-r_k})] + sum_{k in T} (c_k - r_k)
double subset_objective(const ScalarDibInstance& inst, double r1, double r2, RelaySubset subset);

/// Minimum of subset_objective over all four subsets.
double min_subset_objective(const ScalarDibInstance& inst, double r1, double r2);

/// Maximizes the min-subset objective over [0, c1] x [0, c2] by nested
/// golden-section search. The objective is a minimum of concave functions,
/// so the nested 1-D searches reach the global optimum. A relay with zero
/// SNR is pinned to r_k = 0.
ScalarDibSolution solve_scalar_rate(const ScalarDibInstance& inst, double tol = 1e-9);

}  // namespace dib
