#include <doctest.h>

#include <cmath>
#include <complex>

#include "nilorbit/catalog.hpp"
#include "nilorbit/harmonic.hpp"
#include "nilorbit/prng.hpp"
#include "nilorbit/stratification.hpp"

using namespace nilorbit;

namespace {

Rational exact_from_double(double v) { return Rational(mpq_class(v)); }

Covector lambda_z3(const AlgebraPtr &h3, double lambda) {
    return Covector(h3, {Rational(0), Rational(0), exact_from_double(lambda)});
}

} // namespace

TEST_CASE("pfaffian worked examples") {
    auto h3 = catalog_algebra("h3");
    Rational lam(7, 3);
    Covector l(h3, {Rational(0), Rational(0), lam});
    CHECK(pfaffian(l, {1, 2}) == lam);

    CHECK(pfaffian(l, {}) == Rational(1)); // empty convention

    RatMatrix blocks(4, 4);
    Rational a(3), b(-5, 2);
    blocks.at(0, 1) = a;
    blocks.at(1, 0) = -a;
    blocks.at(2, 3) = b;
    blocks.at(3, 2) = -b;
    CHECK(pfaffian(blocks) == a * b);
    CHECK(blocks.determinant() == (a * b) * (a * b));

    RatMatrix odd(3, 3);
    CHECK_THROWS_AS(pfaffian(odd), Error);

    // full 4x4 skew formula a12 a34 - a13 a24 + a14 a23
    RatMatrix m(4, 4);
    auto set = [&](std::size_t i, std::size_t j, long v) {
        m.at(i, j) = Rational(v);
        m.at(j, i) = Rational(-v);
    };
    set(0, 1, 2);
    set(0, 2, 3);
    set(0, 3, 5);
    set(1, 2, 7);
    set(1, 3, 11);
    set(2, 3, 13);
    CHECK(pfaffian(m) == Rational(2 * 13 - 3 * 11 + 5 * 7));
    CHECK(pfaffian(m) * pfaffian(m) == m.determinant());
}

TEST_CASE("pfaffian squared equals determinant at maximal layers") {
    SplitMix64 rng(41);
    for (const auto &e : catalog_entries()) {
        if (e.params != 0) continue;
        auto alg = catalog_algebra(e.name);
        auto layers = enumerate_layers(alg, 20, 6);
        auto labels = layers.front().index_set.sorted_labels();
        for (int trial = 0; trial < 12; ++trial) {
            Covector l(alg, rng.nonzero_coords(alg->dim()));
            auto form = skew_form(l, labels);
            CHECK(pfaffian(form.matrix) * pfaffian(form.matrix) ==
                  form.matrix.determinant());
        }
    }
}

TEST_CASE("pfaffian absolute value is a coadjoint invariant on h3") {
    auto h3 = catalog_algebra("h3");
    SplitMix64 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        Covector l(h3, rng.nonzero_coords(3));
        Vector x(h3, rng.nonzero_coords(3));
        CHECK(pfaffian(l, {1, 2}).abs() == pfaffian(coadjoint(x, l), {1, 2}).abs());
    }
}

TEST_CASE("character") {
    auto h3 = catalog_algebra("h3");
    Covector l(h3, {Rational(1), Rational(2), Rational(3)});
    CHECK(character(l, Vector::zero(h3)) == std::complex<double>(1.0, 0.0));
    SplitMix64 rng(43);
    for (int t = 0; t < 10; ++t) {
        Vector x(h3, rng.nonzero_coords(3));
        CHECK(std::abs(std::abs(character(l, x)) - 1.0) < 1e-14);
    }
    // <l,x> = pi gives -1
    Covector lp(h3, {exact_from_double(M_PI), Rational(0), Rational(0)});
    auto v = character(lp, Vector::basis(h3, 1));
    CHECK(std::abs(v - std::complex<double>(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("h3 double group law matches the exact bch") {
    auto h3 = catalog_algebra("h3");
    SplitMix64 rng(44);
    for (int t = 0; t < 10; ++t) {
        Vector x(h3, rng.nonzero_coords(3)), y(h3, rng.nonzero_coords(3));
        auto exact = bch(x, y);
        auto approx = h3_multiply(*h3, {x.coords()[0].to_double(), x.coords()[1].to_double(),
                                        x.coords()[2].to_double()},
                                  {y.coords()[0].to_double(), y.coords()[1].to_double(),
                                   y.coords()[2].to_double()});
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(approx[i] - exact.coords()[i].to_double()) < 1e-12);
    }
}

TEST_CASE("kernel guards") {
    auto h3 = catalog_algebra("h3");
    auto f = TestFunction::parse("gaussian:0,0,0:1:0,0,0,1");
    Covector flat(h3, {Rational(1), Rational(0), Rational(0)});
    CHECK_THROWS_AS(kernel_of(f, flat, KernelGrid{}), Error); // NotGenericLayer

    auto f4 = catalog_algebra("f4");
    Covector lf(f4, {Rational(0), Rational(0), Rational(0), Rational(1)});
    CHECK_THROWS_AS(kernel_of(f, lf, KernelGrid{}), Error); // NotHeisenberg
}

TEST_CASE("kernel matrix of an even real gaussian is self-adjoint") {
    auto h3 = catalog_algebra("h3");
    auto f = TestFunction::parse("gaussian:0,0,0:1:0,0,0,1");
    auto sample = kernel_of(f, lambda_z3(h3, 1.0), KernelGrid{-2.0, 2.0, 5}, {5, 12}, {5, 12});
    double tol = std::max(1e-10, 10.0 * sample.quad_error);
    for (std::size_t i = 0; i < sample.values.size(); ++i)
        for (std::size_t j = 0; j < sample.values.size(); ++j)
            CHECK(std::abs(sample.values[i][j] - std::conj(sample.values[j][i])) < tol);
}

TEST_CASE("kernel linearity and zero function") {
    auto h3 = catalog_algebra("h3");
    auto f = TestFunction::parse("gaussian:0.1,0,-0.2:0.9:0,0,0,1;1,0,0,0.5");
    KernelGrid grid{-1.5, 1.5, 4};
    auto base = kernel_of(f, lambda_z3(h3, 1.0), grid, {4, 10}, {4, 10});
    auto twice = kernel_of(f.scaled(2.0), lambda_z3(h3, 1.0), grid, {4, 10}, {4, 10});
    for (std::size_t i = 0; i < base.values.size(); ++i)
        for (std::size_t j = 0; j < base.values.size(); ++j)
            CHECK(std::abs(twice.values[i][j] - 2.0 * base.values[i][j]) <
                  1e-12 * (1.0 + std::abs(base.values[i][j])));

    auto zero = kernel_of(f.scaled(0.0), lambda_z3(h3, 1.0), grid, {4, 10}, {4, 10});
    for (const auto &row : zero.values)
        for (const auto &v : row) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("kernel covariance under right P(l) translation") {
    auto h3 = catalog_algebra("h3");
    auto f = TestFunction::parse("gaussian:0,0.1,0:1:0,0,0,1");
    Covector l(h3, {Rational(0), Rational(1, 2), exact_from_double(1.25)});
    std::array<double, 3> g{0.3, 0.0, 0.0}, u{-0.2, 0.0, 0.0}, h{0.0, 0.4, 0.7};
    QuadratureSpec spec{6, 14};
    auto gh = h3_multiply(*h3, g, h);
    auto lhs = kernel_value(f, l, gh, u, spec, spec);
    auto base = kernel_value(f, l, g, u, spec, spec);
    // chi_l(h) = e^{-i(l2 h2 + l3 h3)}
    double phase = -(0.5 * 0.4 + 1.25 * 0.7);
    auto chi = std::complex<double>(std::cos(phase), std::sin(phase));
    CHECK(std::abs(lhs - std::conj(chi) * base) < 1e-9 * (1.0 + std::abs(base)));
}

// Independent brute-force oracle for the inversion normalization: computes
// R(F)(e) with kappa = 1 for the standard Gaussian through the generic
// kernel evaluator and a direct two-level quadrature of the trace and the
// lambda integral. Freezes kappa = (2 pi)^-2.
TEST_CASE("kappa calibration oracle on the standard gaussian") {
    auto h3 = catalog_algebra("h3");
    auto f = TestFunction::parse("gaussian:0,0,0:1:0,0,0,1");

    const double lambda_min = 1e-7, lambda_max = 7.0, U = 7.0;
    QuadratureSpec lam_spec{6, 14}, u_spec{6, 14}, ker_spec{6, 14};

    auto trace_at = [&](double lambda) {
        // T(lambda) = (1/|lambda|) int_{-U}^{U} F(l; x_a, x_a) du, a = u/lambda
        auto l = lambda_z3(h3, lambda);
        std::vector<double> un, uw;
        composite_nodes(u_spec, -U, U, un, uw);
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < un.size(); ++i) {
            double a = un[i] / lambda;
            acc += uw[i] * kernel_value(f, l, {a, 0.0, 0.0}, {a, 0.0, 0.0}, ker_spec, ker_spec);
        }
        return acc / std::abs(lambda);
    };

    std::vector<double> ln, lw;
    composite_nodes(lam_spec, lambda_min, lambda_max, ln, lw);
    std::complex<double> rhat = 0.0;
    for (std::size_t i = 0; i < ln.size(); ++i) {
        rhat += lw[i] * ln[i] * trace_at(ln[i]);
        rhat += lw[i] * ln[i] * trace_at(-ln[i]);
    }

    const double f_at_e = f(0.0, 0.0, 0.0);
    const double kappa_hat = f_at_e / rhat.real();
    CHECK(std::abs(rhat.imag()) < 1e-8 * std::abs(rhat.real()));
    CHECK(kappa_hat == doctest::Approx(1.0 / (4.0 * M_PI * M_PI)).epsilon(1e-6));
    CHECK(kKappaH3 == 1.0 / (4.0 * M_PI * M_PI));
}

TEST_CASE("inversion reproduces the test function") {
    auto h3 = catalog_algebra("h3");
    auto f = TestFunction::parse("gaussian:0.2,-0.1,0.1:1:0,0,0,1");
    InversionConfig cfg;
    cfg.lambda_quad = cfg.u_quad = cfg.p2_quad = cfg.q_quad = QuadratureSpec{6, 16};
    std::vector<std::array<double, 3>> pts{{0, 0, 0}, {0.3, -0.2, 0.4}};
    auto res = invert_h3(f, h3, pts, cfg);
    CHECK(res.kappa == kKappaH3);
    for (const auto &s : res.samples) {
        CHECK(std::abs(s.rf.imag()) < 1e-8);
        CHECK(s.abs_error < 1e-6 * (1.0 + std::abs(s.f_value)));
    }
    CHECK(res.quad_error_estimate < 1e-6);
    CHECK(res.truncation_bound < 1e-7);
}

TEST_CASE("inversion of the zero function is identically zero") {
    auto h3 = catalog_algebra("h3");
    auto f = TestFunction::parse("gaussian:0,0,0:1:0,0,0,1").scaled(0.0);
    InversionConfig cfg;
    cfg.lambda_quad = cfg.u_quad = cfg.p2_quad = cfg.q_quad = QuadratureSpec{2, 8};
    auto res = invert_h3(f, h3, {{0, 0, 0}, {0.3, 0.1, -0.2}}, cfg);
    for (const auto &s : res.samples) {
        CHECK(s.rf == std::complex<double>(0.0, 0.0));
        CHECK(s.f_value == 0.0);
    }
}

TEST_CASE("translation consistency of the inversion") {
    auto h3 = catalog_algebra("h3");
    auto f = TestFunction::parse("gaussian:0,0,0:1:0,0,0,1;0,1,0,0.4");
    std::array<double, 3> delta{0.15, -0.2, 0.1};
    auto fs = f.shifted(delta);
    InversionConfig cfg;
    cfg.lambda_quad = cfg.u_quad = cfg.p2_quad = cfg.q_quad = QuadratureSpec{6, 16};
    std::vector<std::array<double, 3>> pts{{0.1, 0.2, -0.1}, {-0.2, 0.0, 0.3}};
    std::vector<std::array<double, 3>> pts_shifted;
    for (const auto &p : pts)
        pts_shifted.push_back({p[0] + delta[0], p[1] + delta[1], p[2] + delta[2]});
    auto base = invert_h3(f, h3, pts, cfg);
    auto shifted = invert_h3(fs, h3, pts_shifted, cfg);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(std::abs(base.samples[i].rf - shifted.samples[i].rf) < 1e-6);
}

TEST_CASE("quadrature budget errors are reported, not silently loosened") {
    auto h3 = catalog_algebra("h3");
    auto f = TestFunction::parse("gaussian:0.3,0.2,-0.1:0.8:2,0,0,1;0,0,0,0.5");
    InversionConfig cfg;
    cfg.lambda_quad = cfg.u_quad = cfg.p2_quad = cfg.q_quad = QuadratureSpec{1, 4};
    cfg.tolerance = 1e-12;
    std::vector<std::array<double, 3>> pts{{0.2, 0.0, 0.0}};
    CHECK_THROWS_WITH_AS(invert_h3(f, h3, pts, cfg),
                         doctest::Contains("unreachable"), Error);
}

TEST_CASE("inversion is thread-count invariant bit for bit") {
    auto h3 = catalog_algebra("h3");
    auto f = TestFunction::parse("gaussian:0.1,0,0:1:0,0,0,1");
    InversionConfig cfg1, cfg4;
    cfg1.lambda_quad = cfg1.u_quad = cfg1.p2_quad = cfg1.q_quad = QuadratureSpec{3, 10};
    cfg4 = cfg1;
    cfg1.threads = 1;
    cfg4.threads = 4;
    std::vector<std::array<double, 3>> pts{{0, 0, 0}, {0.2, 0.1, -0.3}, {0.4, 0, 0.2}};
    auto a = invert_h3(f, h3, pts, cfg1);
    auto b = invert_h3(f, h3, pts, cfg4);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(a.samples[i].rf.real() == b.samples[i].rf.real());
        CHECK(a.samples[i].rf.imag() == b.samples[i].rf.imag());
    }
}
