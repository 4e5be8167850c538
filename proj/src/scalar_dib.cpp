#include "dib/scalar_dib.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dib {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;

// Golden-section maximization of a concave function on [lo, hi].
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double width_tol) {
    if (hi <= lo) return {lo, f(lo)};
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 200 && hi - lo > width_tol; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = f(x1);
        }
    }
    // Endpoints are candidates too: the optimum of a concave function on a box
    // often sits on the boundary.
    double best_x = f1 >= f2 ? x1 : x2;
    double best_f = std::max(f1, f2);
    for (double x : {lo, hi}) {
        const double v = f(x);
        if (v > best_f) {
            best_f = v;
            best_x = x;
        }
    }
    return {best_x, best_f};
}

void check_instance(const ScalarDibInstance& inst) {
    for (double v : {inst.rho1, inst.rho2, inst.c1, inst.c2})
        if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("ScalarDibInstance: fields must be finite and >= 0");
}

}  // namespace

double subset_objective(const ScalarDibInstance& inst, double r1, double r2, RelaySubset subset) {
    const auto mask = static_cast<unsigned>(subset);
    double snr = 1.0;
    double slack = 0.0;
    if (mask & 1u)
        slack += inst.c1 - r1;
    else if (inst.rho1 > 0.0)
        snr += inst.rho1 * -std::expm1(-r1 * std::log(2.0));
    if (mask & 2u)
        slack += inst.c2 - r2;
    else if (inst.rho2 > 0.0)
        snr += inst.rho2 * -std::expm1(-r2 * std::log(2.0));
    return std::log2(snr) + slack;
}

double min_subset_objective(const ScalarDibInstance& inst, double r1, double r2) {
    double m = subset_objective(inst, r1, r2, RelaySubset::none);
    for (RelaySubset s : {RelaySubset::first, RelaySubset::second, RelaySubset::both})
        m = std::min(m, subset_objective(inst, r1, r2, s));
    return m;
}

ScalarDibSolution solve_scalar_rate(const ScalarDibInstance& inst, double tol) {
    check_instance(inst);
    if (!(tol > 0.0)) throw std::invalid_argument("solve_scalar_rate: tol must be positive");

    const double hi1 = inst.rho1 > 0.0 ? inst.c1 : 0.0;
    const double hi2 = inst.rho2 > 0.0 ? inst.c2 : 0.0;
    const double slope = 1.0 + std::max(inst.rho1, inst.rho2);
    const double w1 = std::max(tol / slope, 1e-15 * (1.0 + hi1));
    const double w2 = std::max(tol / slope, 1e-15 * (1.0 + hi2));

    const auto inner = [&](double r1) {
        return golden_max([&](double r2) { return min_subset_objective(inst, r1, r2); }, 0.0, hi2, w2);
    };
    const double r1 = golden_max([&](double x) { return inner(x).second; }, 0.0, hi1, w1).first;
    const double r2 = inner(r1).first;

    ScalarDibSolution sol;
    sol.r1 = r1;
    sol.r2 = r2;
    for (RelaySubset s : kAllSubsets) sol.subset_values[static_cast<unsigned>(s)] = subset_objective(inst, r1, r2, s);
    sol.beta = *std::min_element(sol.subset_values.begin(), sol.subset_values.end());
    sol.rate = sol.beta;
    return sol;
}

}  // namespace dib
