#include "dib/matrix_stat.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace dib {

HermitianEigen hermitian_eigen(const ComplexMatrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw std::invalid_argument("hermitian_eigen: matrix must be square and nonempty");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
    if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigen: eigensolver failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

EigSpec::EigSpec(int s, int t) : s_(s), t_(t) {
    if (t < 1 || s < t) throw std::invalid_argument("EigSpec: need s >= t >= 1");
    log_weight_.reserve(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i)
        log_weight_.push_back(std::lgamma(i + 1.0) - std::lgamma(i + s - t + 1.0));
}

double EigSpec::pdf(double lambda) const {
    if (lambda < 0.0) return 0.0;
    const int alpha = s_ - t_;
    if (alpha > 0 && lambda == 0.0) return 0.0;
    const double log_envelope = (alpha > 0 ? alpha * std::log(lambda) : 0.0) - lambda;
    double sum = 0.0;
    for (int i = 0; i < t_; ++i) {
        const double l = laguerre(i, alpha, lambda);
        if (l == 0.0) continue;
        sum += std::exp(log_weight_[static_cast<std::size_t>(i)] + log_envelope + 2.0 * std::log(std::abs(l)));
    }
    return sum / t_;
}

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
};

Panel gauss_kronrod(const RealFunction& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[static_cast<std::size_t>(i)];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += pair * kKronrodWeights[static_cast<std::size_t>(i)];
        if (i % 2 == 1) gauss += pair * kGaussWeights[static_cast<std::size_t>(i / 2)];
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

// Adaptive bisection on the panel with the largest error estimate.
double adaptive(const RealFunction& f, double a, double b, const Quadrature& quad, int& budget) {
    std::vector<Panel> panels{gauss_kronrod(f, a, b)};
    double value = panels.front().value;
    double error = panels.front().error;
    while (error > std::max(quad.abs_tol, quad.rel_tol * std::abs(value))) {
        if (--budget < 0)
            throw QuadratureError("quadrature did not converge within " +
                                  std::to_string(quad.max_subdivisions) + " subdivisions");
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].error > panels[worst].error) worst = i;
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) break;  // interval exhausted at machine precision
        const Panel left = gauss_kronrod(f, p.a, mid);
        const Panel right = gauss_kronrod(f, mid, p.b);
        panels[worst] = left;
        panels.push_back(right);
        value = 0.0;
        error = 0.0;
        for (const auto& q : panels) {
            value += q.value;
            error += q.error;
        }
    }
    return value;
}

}  // namespace

double integrate_interval(const RealFunction& f, double a, double b, const Quadrature& quad) {
    if (quad.abs_tol <= 0.0 || quad.rel_tol <= 0.0) throw std::invalid_argument("Quadrature: tolerances must be positive");
    if (a == b) return 0.0;
    if (b < a) return -integrate_interval(f, b, a, quad);
    int budget = quad.max_subdivisions;
    return adaptive(f, a, b, quad, budget);
}

double integrate_semi_infinite(const RealFunction& f, double lower, const Quadrature& quad) {
    if (quad.abs_tol <= 0.0 || quad.rel_tol <= 0.0) throw std::invalid_argument("Quadrature: tolerances must be positive");
    if (!(lower >= 0.0) || !std::isfinite(lower)) throw std::invalid_argument("integrate_semi_infinite: lower must be finite and >= 0");
    constexpr double kMinPanel = 0.125;
    constexpr double kHorizon = 1e7;
    int budget = quad.max_subdivisions;
    double total = 0.0;
    int quiet = 0;
    double a = lower;
    // Panel widths double from min(lower, kMinPanel), so integrands that vary
    // on the scale of a tiny `lower` are resolved before the panels widen, and
    // a large `lower` does not produce a first panel of comparable width.
    double width = lower > 0.0 ? std::min(lower, kMinPanel) : kMinPanel;
    double b = a + width;
    while (true) {
        const double piece = adaptive(f, a, b, quad, budget);
        total += piece;
        if (std::abs(piece) <= std::max(quad.abs_tol, 1e-16 * std::abs(total)) && b > lower + 1.0) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
            if (b - lower > kHorizon) throw QuadratureError("integrate_semi_infinite: integrand does not decay");
        }
        a = b;
        width *= 2.0;
        b = a + width;
    }
    return total;
}

double expected_snr_shrinkage(int t_k, int s_k, double sigma2, const Quadrature& quad) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("expected_snr_shrinkage: sigma2 must be positive");
    const EigSpec spec(s_k, t_k);
    const auto integrand = [&](double lambda) { return lambda / (lambda + sigma2) * spec.pdf(lambda); };
    return integrate_semi_infinite(integrand, 0.0, quad);
}

}  // namespace dib
