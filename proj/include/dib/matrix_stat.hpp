#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace dib {

using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Seeded random stream. Child streams are derived from the base seed and a
// stream id only (never from the parent's consumed state), so a task tree
// yields the same numbers whatever order or thread the tasks run on.
//
// Splitting rule: child_seed = splitmix64(base_seed ^ splitmix64(id + 1)).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    std::uint64_t seed() const { return seed_; }

    RngStream substream(std::uint64_t id) const { return RngStream(mix(seed_ ^ mix(id + 1))); }

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }

    std::mt19937_64& engine() { return engine_; }

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// i.i.d. CN(0,1) entries: real and imaginary parts each N(0, 1/2).
template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>
sample_complex_gaussian(Eigen::Index rows, Eigen::Index cols, RngStream& rng) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("sample_complex_gaussian: empty shape");
    const Scalar scale = Scalar(std::sqrt(0.5));
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> h(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            const Scalar re = Scalar(rng.normal()) * scale;
            const Scalar im = Scalar(rng.normal()) * scale;
            h(i, j) = {re, im};
        }
    return h;
}

struct HermitianEigen {
    RealVector values;     // ascending
    ComplexMatrix vectors; // column i pairs with values(i)
};

/// Eigendecomposition of a Hermitian matrix. Throws std::invalid_argument if
/// the input is not square or deviates from Hermitian by more than 1e-10
/// (scaled by max(1, max|a_ij|)).
HermitianEigen hermitian_eigen(const ComplexMatrix& a);

inline RealVector hermitian_eigenvalues(const ComplexMatrix& a) { return hermitian_eigen(a).values; }

/// Generalized Laguerre polynomial L_i^alpha(x) by the three-term recurrence
///   (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}.
template <typename Scalar>
Scalar laguerre(int degree, int alpha, Scalar x) {
    if (degree < 0 || alpha < 0) throw std::invalid_argument("laguerre: negative degree or order");
    Scalar prev(1);
    if (degree == 0) return prev;
    Scalar cur = Scalar(alpha + 1) - x;
    for (int k = 1; k < degree; ++k) {
        Scalar next = ((Scalar(2 * k + 1 + alpha) - x) * cur - Scalar(k + alpha) * prev) / Scalar(k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

// Shape of the complex Wishart matrix H H^H for H of size n x m:
// s = max(n, m), t = min(n, m).
class EigSpec {
public:
    EigSpec(int s, int t);

    static EigSpec for_channel(int rows, int cols) {
        return EigSpec(std::max(rows, cols), std::min(rows, cols));
    }

    int s() const { return s_; }
    int t() const { return t_; }

    /// Density of one unordered nonzero eigenvalue of H H^H.
    double pdf(double lambda) const;

    friend bool operator==(const EigSpec&, const EigSpec&) = default;

private:
    int s_;
    int t_;
    std::vector<double> log_weight_; // log(i! / (i+s-t)!)
};

inline double wishart_eig_pdf(const EigSpec& spec, double lambda) { return spec.pdf(lambda); }

struct Quadrature {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_subdivisions = 20000;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using RealFunction = std::function<double(double)>;

/// Adaptive 7/15-point Gauss-Kronrod on [a, b].
double integrate_interval(const RealFunction& f, double a, double b, const Quadrature& quad = {});

/// Integral over [lower, inf) for integrands with exponential decay. The
/// range is cut into geometrically growing panels; integration stops once two
/// consecutive panels fall below tolerance relative to the running total.
double integrate_semi_infinite(const RealFunction& f, double lower, const Quadrature& quad = {});

/// E[lambda / (lambda + sigma2)] for the unordered eigenvalue of H_k H_k^H,
/// H_k of size n_k x m.
double expected_snr_shrinkage(int t_k, int s_k, double sigma2, const Quadrature& quad = {});

}  // namespace dib
