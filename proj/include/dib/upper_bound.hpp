#pragma once

#include "dib/channel.hpp"
#include "dib/matrix_stat.hpp"

namespace dib {

struct UpperBoundResult {
    double rate = 0.0;  // bits per complex channel use
    double nu = 0.0;    // water level; 0 when no fronthaul is available
    EigSpec spec{1, 1};
};

class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// int_{nu sigma2}^inf log2(lambda / (nu sigma2)) f(lambda) dlambda - c_sum / T.
/// Strictly decreasing in nu.
double bottleneck_residual(const EigSpec& spec, double sigma2, double c_sum, double nu, const Quadrature& quad = {});

/// Water level meeting the cooperative bottleneck constraint. Bisection in
/// log(nu) on a bracket grown geometrically from [1e-12, 1e12]; `tol` bounds
/// the relative width of the final bracket.
double solve_nu(const EigSpec& spec, double sigma2, double c_sum, double tol = 1e-13, const Quadrature& quad = {});

/// Informed-receiver, cooperating-relay bound
///   R = T int_{nu sigma2}^inf [log2(1 + lambda/sigma2) - log2(1 + nu)] f(lambda) dlambda.
/// A zero capacity sum gives rate 0.
UpperBoundResult upper_bound_rate(const ChannelConfig& cfg, const Quadrature& quad = {});

/// T E[log2(1 + lambda / sigma2)]: the limit of the bound as capacities grow.
double unconstrained_capacity(const EigSpec& spec, double sigma2, const Quadrature& quad = {});

}  // namespace dib
