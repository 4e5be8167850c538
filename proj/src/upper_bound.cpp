#include "dib/upper_bound.hpp"

#include <cmath>

namespace dib {

double bottleneck_residual(const EigSpec& spec, double sigma2, double c_sum, double nu, const Quadrature& quad) {
    if (!(nu > 0.0)) throw std::invalid_argument("bottleneck_residual: nu must be positive");
    const double floor = nu * sigma2;
    const auto integrand = [&](double lambda) { return std::log2(lambda / floor) * spec.pdf(lambda); };
    return integrate_semi_infinite(integrand, floor, quad) - c_sum / spec.t();
}

double solve_nu(const EigSpec& spec, double sigma2, double c_sum, double tol, const Quadrature& quad) {
    if (!(c_sum > 0.0)) throw BracketError("solve_nu: capacity sum must be positive");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("solve_nu: sigma2 must be positive");
    const auto residual = [&](double nu) { return bottleneck_residual(spec, sigma2, c_sum, nu, quad); };

    constexpr double kStep = 1e6;
    constexpr double kLimit = 1e300;
    double lo = 1e-12;
    double hi = 1e12;
    while (residual(lo) <= 0.0) {
        lo /= kStep;
        if (lo < 1.0 / kLimit) throw BracketError("solve_nu: no sign change below nu = 1e-300");
    }
    while (residual(hi) >= 0.0) {
        hi *= kStep;
        if (hi > kLimit) throw BracketError("solve_nu: no sign change above nu = 1e300");
    }
    double log_lo = std::log(lo);
    double log_hi = std::log(hi);
    while (log_hi - log_lo > tol) {
        const double mid = 0.5 * (log_lo + log_hi);
        if (mid <= log_lo || mid >= log_hi) break;
        if (residual(std::exp(mid)) > 0.0)
            log_lo = mid;
        else
            log_hi = mid;
    }
    return std::exp(0.5 * (log_lo + log_hi));
}

UpperBoundResult upper_bound_rate(const ChannelConfig& cfg, const Quadrature& quad) {
    cfg.validate();
    UpperBoundResult result;
    result.spec = EigSpec::for_channel(cfg.n1 + cfg.n2, cfg.m);
    const double c_sum = cfg.c1 + cfg.c2;
    if (c_sum == 0.0) return result;

    const EigSpec& spec = result.spec;
    const double sigma2 = cfg.sigma2;
    result.nu = solve_nu(spec, sigma2, c_sum, 1e-13, quad);
    const double floor = result.nu * sigma2;
    const double offset = std::log2(1.0 + result.nu);
    const auto integrand = [&](double lambda) {
        return (std::log2(1.0 + lambda / sigma2) - offset) * spec.pdf(lambda);
    };
    result.rate = spec.t() * integrate_semi_infinite(integrand, floor, quad);
    return result;
}

double unconstrained_capacity(const EigSpec& spec, double sigma2, const Quadrature& quad) {
    const auto integrand = [&](double lambda) { return std::log2(1.0 + lambda / sigma2) * spec.pdf(lambda); };
    return spec.t() * integrate_semi_infinite(integrand, 0.0, quad);
}

}  // namespace dib
