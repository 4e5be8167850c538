#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/laguerre.hpp>

#include "dib/matrix_stat.hpp"

using namespace dib;

namespace {

// Explicit sum L_n^a(x) = sum_k (-1)^k C(n+a, n-k) x^k / k!.
double laguerre_expansion(int n, int a, double x) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k)
        s += (k % 2 ? -1.0 : 1.0) * boost::math::binomial_coefficient<double>(n + a, n - k) * std::pow(x, k) /
             boost::math::factorial<double>(k);
    return s;
}

// Unordered-eigenvalue density written out with boost's Laguerre polynomials
// and plain factorials.
double pdf_oracle(int s, int t, double x) {
    double sum = 0.0;
    for (int i = 0; i < t; ++i) {
        const double l = boost::math::laguerre(i, s - t, x);
        sum += boost::math::factorial<double>(i) / boost::math::factorial<double>(i + s - t) * l * l;
    }
    return sum * std::pow(x, s - t) * std::exp(-x) / t;
}

std::vector<double> sampled_eigenvalues(int s, int t, int draws, RngStream& rng) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(draws * t));
    for (int d = 0; d < draws; ++d) {
        const ComplexMatrix h = sample_complex_gaussian(s, t, rng);
        const RealVector ev = hermitian_eigenvalues(h.adjoint() * h);
        for (double v : ev) out.push_back(v);
    }
    return out;
}

// KS distance between the sample and the CDF of spec, the CDF accumulated
// by boost Gauss-Kronrod between consecutive order statistics.
double ks_distance(std::vector<double> x, const EigSpec& spec) {
    std::sort(x.begin(), x.end());
    const auto f = [&](double l) { return pdf_oracle(spec.s(), spec.t(), l); };
    double cdf = 0.0, prev = 0.0, d = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > prev) cdf += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, prev, x[i], 0, 1e-12);
        prev = x[i];
        d = std::max({d, std::abs(cdf - i / n), std::abs(cdf - (i + 1) / n)});
    }
    return d;
}

}  // namespace

TEST_CASE("sample_complex_gaussian - shape, moments and determinism") {
    RngStream rng(1);
    double acc = 0.0;
    const int draws = 100000 / 9 + 1;
    for (int d = 0; d < draws; ++d) acc += sample_complex_gaussian(3, 3, rng).cwiseAbs2().sum();
    const double mean = acc / (9.0 * draws);
    CHECK(mean >= 0.99);
    CHECK(mean <= 1.01);

    RngStream single(5);
    const ComplexMatrix one = sample_complex_gaussian(1, 1, single);
    CHECK(one.size() == 1);
    CHECK(std::isfinite(std::abs(one(0, 0))));

    const RngStream root(42);
    RngStream a = root.substream(0), b = root.substream(0), c = root.substream(1);
    const ComplexMatrix ha = sample_complex_gaussian(3, 3, a);
    CHECK(ha == sample_complex_gaussian(3, 3, b));
    CHECK(ha != sample_complex_gaussian(3, 3, c));

    CHECK_THROWS_AS(sample_complex_gaussian(0, 3, rng), std::invalid_argument);
}

TEST_CASE("hermitian_eigen - fixed cases and residuals") {
    const RealVector id = hermitian_eigenvalues(ComplexMatrix::Identity(3, 3));
    CHECK(id.isApprox(RealVector::Ones(3)));

    ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
    diag.diagonal() << 5.0, 2.0, 9.0;
    const RealVector dv = hermitian_eigenvalues(diag);
    CHECK(dv(0) == doctest::Approx(2.0));
    CHECK(dv(1) == doctest::Approx(5.0));
    CHECK(dv(2) == doctest::Approx(9.0));

    RngStream rng(3);
    const ComplexMatrix h = sample_complex_gaussian(3, 3, rng);
    const ComplexMatrix g = h * h.adjoint();
    CHECK(std::abs(hermitian_eigenvalues(g).sum() - g.trace().real()) <= 1e-9);

    for (int trial = 0; trial < 1000; ++trial) {
        const ComplexMatrix x = sample_complex_gaussian(6, 6, rng);
        const ComplexMatrix a = x + x.adjoint();
        const HermitianEigen e = hermitian_eigen(a);
        const double norm = a.operatorNorm();
        for (Eigen::Index i = 0; i < 6; ++i)
            REQUIRE((a * e.vectors.col(i) - e.values(i) * e.vectors.col(i)).norm() <= 1e-8 * norm);
    }

    ComplexMatrix skew = ComplexMatrix::Zero(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eigen(skew), std::invalid_argument);
    CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("laguerre - low degrees and expansion") {
    for (int a = 0; a <= 4; ++a)
        for (double x : {0.0, 0.7, 3.0}) {
            CHECK(laguerre(0, a, x) == 1.0);
            CHECK(laguerre(1, a, x) == doctest::Approx(a + 1 - x));
        }
    CHECK(laguerre(2, 0, 1.0) == doctest::Approx(-0.5));

    for (int n = 0; n <= 6; ++n)
        for (int a = 0; a <= 6; ++a)
            for (double x = 0.0; x <= 50.0; x += 0.5) {
                const double want = laguerre_expansion(n, a, x);
                const double scale = std::max(1.0, std::abs(want));
                REQUIRE(std::abs(laguerre(n, a, x) - want) <= 1e-10 * scale);
            }
    CHECK_THROWS_AS(laguerre(-1, 0, 1.0), std::invalid_argument);
}

TEST_CASE("wishart_eig_pdf - closed forms and oracle") {
    const EigSpec one(1, 1);
    for (double x : {0.0, 0.3, 2.0, 10.0}) CHECK(wishart_eig_pdf(one, x) == doctest::Approx(std::exp(-x)));
    CHECK(wishart_eig_pdf(one, -1.0) == 0.0);

    for (int s = 1; s <= 8; ++s)
        for (int t = 1; t <= s; ++t) {
            const EigSpec spec(s, t);
            for (double x : {0.01, 0.5, 2.0, 7.5, 20.0})
                REQUIRE(spec.pdf(x) == doctest::Approx(pdf_oracle(s, t, x)).epsilon(1e-11));
        }
    CHECK(EigSpec::for_channel(3, 6) == EigSpec(6, 3));
    CHECK_THROWS_AS(EigSpec(2, 3), std::invalid_argument);
}

TEST_CASE("wishart_eig_pdf - normalization and mean for all shapes up to 8") {
    for (int s = 1; s <= 8; ++s)
        for (int t = 1; t <= s; ++t) {
            const EigSpec spec(s, t);
            const double mass = integrate_semi_infinite([&](double x) { return spec.pdf(x); }, 0.0);
            const double mean = integrate_semi_infinite([&](double x) { return x * spec.pdf(x); }, 0.0);
            INFO("S=" << s << " T=" << t);
            CHECK(std::abs(mass - 1.0) <= 1e-8);
            CHECK(std::abs(mean - s) <= 1e-6);
        }
}

TEST_CASE("wishart_eig_pdf - KS distance to sampled eigenvalues") {
    RngStream rng(11);
    const EigSpec spec(6, 3);
    const auto x = sampled_eigenvalues(6, 3, 100000 / 3 + 1, rng);
    CHECK(ks_distance(x, spec) <= 0.01);
}

TEST_CASE("integrate_semi_infinite - analytic and two-rule oracles") {
    CHECK(std::abs(integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0) - 1.0) <= 1e-10);

    const auto f = [](double x) { return x * x * std::exp(-x); };
    boost::math::quadrature::exp_sinh<double> es;
    const double ref = es.integrate([&](double u) { return f(1.0 + u); }, 1e-14);
    CHECK(std::abs(integrate_semi_infinite(f, 1.0) - ref) <= 1e-11);
    CHECK(ref == doctest::Approx(5.0 / std::exp(1.0)).epsilon(1e-13));

    // Tiny and large lower limits (both occur in the water-level search).
    const EigSpec spec(6, 3);
    const auto g = [&](double x) { return spec.pdf(x); };
    boost::math::quadrature::tanh_sinh<double> ts;
    const double head = ts.integrate(g, 0.0, 1e-3, 1e-14);
    CHECK(std::abs(integrate_semi_infinite(g, 1e-3) - (1.0 - head)) <= 1e-11);
    CHECK(integrate_semi_infinite(g, 1e8) == 0.0);

    CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 1.0; }, 0.0), QuadratureError);
    CHECK_THROWS_AS(integrate_semi_infinite(g, -1.0), std::invalid_argument);
    CHECK(integrate_interval([](double x) { return std::sin(x); }, 0.0, M_PI) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("expected_snr_shrinkage - limits and Monte Carlo") {
    CHECK(expected_snr_shrinkage(3, 3, 1e-12) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(expected_snr_shrinkage(3, 3, 1e12) <= 1e-11);

    RngStream rng(17);
    const double sigma2 = 0.01;
    const auto x = sampled_eigenvalues(3, 3, 100000 / 3 + 1, rng);
    double sum = 0.0, sum_sq = 0.0;
    for (double l : x) {
        const double v = l / (l + sigma2);
        sum += v;
        sum_sq += v * v;
    }
    const double n = static_cast<double>(x.size());
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    CHECK(std::abs(expected_snr_shrinkage(3, 3, sigma2) - mean) <= 3.0 * se);
    CHECK_THROWS_AS(expected_snr_shrinkage(3, 3, 0.0), std::invalid_argument);
}
