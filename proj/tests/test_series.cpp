#include "dtoda/series.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <thread>

using namespace dtoda;
using dtoda::testing::random_series;

namespace
{

LaurentSeries poly(int lo, std::vector<cplx> c, Flavor f = Flavor::TwoSided)
{
    return LaurentSeries::polynomial(lo, std::move(c), f);
}

} // namespace

TEST_CASE("mul: exact polynomial identity")
{
    const auto a = poly(-1, {1.0, 0.0, 1.0});
    const auto b = poly(-1, {-1.0, 0.0, 1.0});
    const auto p = mul(a, b);
    CHECK(p.coeff(2) == cplx{1.0});
    CHECK(p.coeff(-2) == cplx{-1.0});
    CHECK(p.coeff(0) == cplx{0.0});
    CHECK(p.exact_below());
    CHECK(p.exact_above());
}

TEST_CASE("mul: identity element")
{
    const auto a = random_series(3, 1, 20, 0.3, Flavor::AtInfinity);
    const auto p = mul(a, LaurentSeries::constant(1.0));
    CHECK(max_abs_diff(a, p) == 0.0);
    CHECK(p.reliable().lo == a.reliable().lo);
    CHECK(p.flavor() == Flavor::AtInfinity);
}

TEST_CASE("mul: matches brute-force convolution")
{
    const auto a = random_series(7, 1, 16, 0.3, Flavor::AtInfinity);
    const auto b = random_series(8, 1, 16, 0.3, Flavor::AtZero);
    const auto p = mul(a, b);
    double err = 0.0;
    for (int k = p.lo(); k <= p.hi(); ++k) {
        cplx s{};
        for (int i = a.lo(); i <= a.hi(); ++i) {
            for (int j = b.lo(); j <= b.hi(); ++j) {
                if (i + j == k) {
                    s += a.coeff(i) * b.coeff(j);
                }
            }
        }
        err = std::max(err, std::abs(s - p.coeff(k)));
    }
    CHECK(err < 1e-15);
}

TEST_CASE("mul: empty window underflows")
{
    const auto a = poly(0, {1.0, 1.0});
    CHECK_THROWS_WITH_AS((void)mul(a, a, {10, 12}), "window underflow", series_error);
}

TEST_CASE("mul: trust of same-direction truncated products")
{
    // AtZero truncated at w^16 times an exact AtZero partner starting at w^1.
    const auto a = random_series(1, 0, 16, 0.3, Flavor::AtZero);
    const auto b = poly(1, {1.0, 0.5}, Flavor::AtZero);
    const auto p = mul(a, b);
    CHECK(p.exact_below());
    CHECK(p.trusted().hi == 17);
}

TEST_CASE("mul: trust of mixed-direction truncated products")
{
    const auto g = random_series(11, 1, 24, 0.3, Flavor::AtInfinity);
    const auto f = random_series(12, 1, 24, 0.3, Flavor::AtZero);
    const auto p = mul(g, f);
    const Window r = p.reliable();
    CHECK(r.lo == -23 + 1);
    CHECK(r.hi == 25 + 1);
    CHECK(!r.empty());
}

TEST_CASE("ring axioms on reliable windows")
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto a = random_series(seed, 1, 20, 0.3, Flavor::AtInfinity);
        const auto b = random_series(seed + 100, 0, 20, 0.3, Flavor::AtZero);
        const auto c = random_series(seed + 200, 2, 20, 0.3, Flavor::AtInfinity);
        const auto l = mul(mul(a, b), c);
        const auto r = mul(a, mul(b, c));
        CHECK(max_abs_diff(l, r) < 1e-13);
        const auto d1 = mul(a, b + c);
        const auto d2 = mul(a, b) + mul(a, c);
        CHECK(max_abs_diff(d1, d2) < 1e-13);
    }
}

TEST_CASE("int_pow: binomial")
{
    const auto a = poly(-1, {0.1, 0.0, 1.0}, Flavor::AtInfinity);
    const auto p = int_pow(a, 2, {-10, 10});
    CHECK(std::abs(p.coeff(2) - 1.0) < 1e-15);
    CHECK(std::abs(p.coeff(0) - 0.2) < 1e-15);
    CHECK(std::abs(p.coeff(-2) - 0.01) < 1e-15);
    CHECK(p.exact_below());
}

TEST_CASE("int_pow: monomial")
{
    const auto p = int_pow(LaurentSeries::monomial(1.0, 1), -3);
    CHECK(p.coeff(-3) == cplx{1.0});
    CHECK(p.lo() == -3);
    CHECK(p.hi() == -3);
    CHECK(p.exact_below());
    CHECK(p.exact_above());
}

TEST_CASE("int_pow: geometric series")
{
    const auto a = poly(1, {1.0, 0.0, -0.1}, Flavor::AtZero);
    const auto p = int_pow(a, -1, {-1, 20});
    for (int k = 0; k <= 10; ++k) {
        CHECK(std::abs(p.coeff(-1 + 2 * k) - std::pow(0.1, k)) < 1e-15);
        CHECK(std::abs(p.coeff(2 * k)) == 0.0);
    }
    CHECK(p.reliable().hi == 20);
}

TEST_CASE("int_pow: zero leading coefficient")
{
    const auto a = LaurentSeries(0, {cplx{0.0}, cplx{1e-310}}, Flavor::AtZero, true, false);
    CHECK_THROWS_WITH_AS((void)int_pow(a, -1, {-5, 5}), "non-invertible leading term", series_error);
}

TEST_CASE("int_pow: negative powers agree with repeated reciprocals")
{
    const auto g = random_series(5, 1, 30, 0.3, Flavor::AtInfinity);
    const Window w{-30, 5};
    const auto inv = int_pow(g, -1, w);
    const auto p3 = int_pow(g, -3, w);
    const auto q3 = mul(mul(inv, inv, w), inv, w);
    CHECK(max_abs_diff(p3, q3) < 1e-13);
    const auto one = mul(g, inv, w);
    CHECK(std::abs(one.coeff(0) - 1.0) < 1e-14);
    CHECK(max_abs_on(one - LaurentSeries::constant(1.0), one.reliable()) < 1e-14);
}

TEST_CASE("split_normalize examples")
{
    {
        const auto s = split_normalize(poly(-1, {0.1, 0.0, 1.0}), Flavor::AtInfinity);
        CHECK(s.c == cplx{1.0});
        CHECK(s.j == 1);
        CHECK(std::abs(s.u.coeff(-2) - 0.1) < 1e-16);
        CHECK(s.u.coeff(0) == cplx{0.0});
    }
    {
        const auto s = split_normalize(LaurentSeries::monomial(2.0, 3, Flavor::AtZero));
        CHECK(s.c == cplx{2.0});
        CHECK(s.j == 3);
        CHECK(max_abs_on(s.u, unbounded_window) == 0.0);
    }
    {
        const auto s = split_normalize(poly(1, {0.5, 0.2}), Flavor::AtZero);
        CHECK(s.c == cplx{0.5});
        CHECK(s.j == 1);
        CHECK(std::abs(s.u.coeff(1) - 0.4) < 1e-16);
    }
    CHECK_THROWS_AS((void)split_normalize(poly(0, {0.0}), Flavor::AtZero), series_error);
}

TEST_CASE("log1p examples")
{
    const auto z = log1p(LaurentSeries::monomial(0.0, -1, Flavor::AtInfinity), {-10, 0});
    CHECK(max_abs_on(z, unbounded_window) == 0.0);

    const auto l = log1p(LaurentSeries::monomial(0.1, -2, Flavor::AtInfinity), {-20, 0});
    CHECK(std::abs(l.coeff(-2) - 0.1) < 1e-16);
    CHECK(std::abs(l.coeff(-4) + 0.005) < 1e-16);
    CHECK(std::abs(l.coeff(-6) - 0.001 / 3.0) < 1e-16);
    CHECK(l.reliable().lo == -20);

    CHECK_THROWS_WITH_AS((void)log1p(poly(0, {0.1, 0.2}, Flavor::AtZero), {0, 10}), "nonzero constant term in u",
                         series_error);
}

TEST_CASE("log1p inverts the series exponential")
{
    // e^u - 1 by Taylor sum, then log1p should return u.
    const auto u = random_series(9, 0, 30, 0.3, Flavor::AtZero) - LaurentSeries::constant(1.0);
    const Window w{0, 30};
    LaurentSeries term = LaurentSeries::constant(1.0).with_flavor(Flavor::AtZero);
    LaurentSeries e = LaurentSeries::constant(0.0).with_flavor(Flavor::AtZero);
    for (int k = 1; k <= 40; ++k) {
        term = mul(term, u, w) * cplx{1.0 / k};
        e += term;
    }
    const auto back = log1p(e.clip({1, 30}), w);
    CHECK(max_abs_diff(back, u, {1, 30}) < 1e-12);
}

TEST_CASE("residue and derivative")
{
    CHECK(residue(LaurentSeries::monomial(1.0, -1)) == cplx{1.0});
    CHECK(residue(poly(-2, {3.0, 0.0, 0.0, 0.0, 1.0})) == cplx{0.0});
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto a = random_series(seed, 3, 12, 0.5, Flavor::AtInfinity);
        CHECK(residue(derivative(a)) == cplx{0.0});
    }
    const auto a = random_series(2, 1, 10, 0.3, Flavor::AtInfinity);
    const auto b = random_series(3, 1, 10, 0.3, Flavor::AtZero);
    CHECK(std::abs(residue_of_product(a, b) - residue(mul(a, b))) < 1e-16);
}

TEST_CASE("residue_of_product rejects untrusted residues")
{
    const auto a = random_series(2, 1, 4, 0.3, Flavor::AtInfinity);
    const auto b = LaurentSeries::monomial(1.0, 10);
    CHECK_THROWS_AS((void)residue_of_product(a, b), series_error);
}

TEST_CASE("invert_function examples")
{
    {
        const auto g = invert_function(LaurentSeries::monomial(1.0, 1, Flavor::AtInfinity), 16);
        CHECK(g.coeff(1) == cplx{1.0});
        CHECK(max_abs_on(g - LaurentSeries::monomial(1.0, 1), unbounded_window) == 0.0);
    }
    {
        // w/(1-w) = w + w^2 + ...; inverse z/(1+z) = z - z^2 + z^3 - ...
        std::vector<cplx> c(24, 1.0);
        const auto a = LaurentSeries::polynomial(1, c, Flavor::AtZero);
        const auto f = invert_function(a, 20);
        for (int k = 1; k <= 20; ++k) {
            CHECK(std::abs(f.coeff(k) - ((k % 2) ? 1.0 : -1.0)) < 1e-12);
        }
    }
    {
        const auto a = poly(-1, {0.1, 0.0, 1.0}, Flavor::AtInfinity);
        const auto g = invert_function(a, 40);
        const auto back = compose(a, g, {-40, 1});
        const auto dev = back - LaurentSeries::monomial(1.0, 1);
        CHECK(max_abs_on(dev, back.reliable()) < 1e-12);
        CHECK(back.reliable().lo == -40);
    }
}

TEST_CASE("invert_function round trip on perturbative inputs")
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto g = random_series(seed, 1, 32, 0.3, Flavor::AtInfinity);
        const auto G = invert_function(g, 32);
        const auto back = compose(g, G, {-32, 1});
        CHECK(max_abs_on(back - LaurentSeries::monomial(1.0, 1), back.reliable()) < 1e-12);
        CHECK(back.reliable().lo <= -30);

        const auto f = random_series(seed + 50, 1, 32, 0.3, Flavor::AtZero);
        const auto F = invert_function(f, 32);
        const auto fb = compose(f, F, {1, 32});
        CHECK(max_abs_on(fb - LaurentSeries::monomial(1.0, 1), fb.reliable()) < 1e-12);
        CHECK(fb.reliable().hi >= 30);
    }
}

TEST_CASE("divide_on_circle examples")
{
    {
        const auto q = divide_on_circle(LaurentSeries::constant(1.0), LaurentSeries::monomial(1.0, 1), {-8, 8});
        CHECK(std::abs(q.coeff(-1) - 1.0) < 1e-14);
        CHECK(max_abs_on(q - LaurentSeries::monomial(1.0, -1), unbounded_window) < 1e-14);
    }
    {
        const auto num = LaurentSeries::monomial(1.0, 2);
        const auto den = poly(-1, {0.2, 1.0});
        const auto q = divide_on_circle(num, den, {-20, 2});
        CHECK(std::abs(q.coeff(2) - 1.0) < 1e-14);
        CHECK(std::abs(q.coeff(1) + 0.2) < 1e-14);
        CHECK(std::abs(q.coeff(0) - 0.04) < 1e-14);
        CHECK(std::abs(q.coeff(-1) + 0.008) < 1e-14);
    }
    CHECK_THROWS_WITH_AS((void)divide_on_circle(LaurentSeries::constant(1.0), poly(0, {1.0, -1.0}), {-4, 4}),
                         "denominator vanishes on circle", series_error);
}

TEST_CASE("divide_on_circle agrees with the series reciprocal")
{
    const auto num = random_series(21, 1, 24, 0.3, Flavor::AtZero);
    const auto den = random_series(22, 1, 24, 0.3, Flavor::AtInfinity);
    const Window w{-24, 24};
    const auto q1 = divide_on_circle(num, den, w);
    const auto q2 = mul(num, int_pow(den, -1, {-60, 0}), w);
    CHECK(max_abs_diff(q1, q2, {-20, 20}) < 1e-12);
}

TEST_CASE("mul_on_circle agrees with convolution")
{
    const auto a = random_series(31, 1, 20, 0.3, Flavor::AtInfinity);
    const auto b = random_series(32, 1, 20, 0.3, Flavor::AtZero);
    const auto p = mul(a, b);
    const auto q = mul_on_circle(a, b, p.stored());
    CHECK(max_abs_diff(p, q) < 1e-12);
}

TEST_CASE("circle sample count")
{
    CHECK(circle_samples_for({-10, 10}) == 1024);
    CHECK(circle_samples_for({-200, 200}, 1024) == 2048);
    CHECK_THROWS_AS((void)circle_samples_for({0, 1}, 1000), std::invalid_argument);
}

TEST_CASE("operations are deterministic across threads")
{
    const auto a = random_series(41, 1, 24, 0.3, Flavor::AtInfinity);
    const auto b = random_series(42, 1, 24, 0.3, Flavor::AtZero);
    const auto ref = divide_on_circle(a, b, {-24, 24});
    std::vector<LaurentSeries> out(8);
    std::vector<std::thread> ts;
    for (std::size_t i = 0; i < out.size(); ++i) {
        ts.emplace_back([&, i] { out[i] = divide_on_circle(a, b, {-24, 24}); });
    }
    for (auto &t : ts) {
        t.join();
    }
    for (const auto &o : out) {
        for (int k = -24; k <= 24; ++k) {
            CHECK(o.coeff(k) == ref.coeff(k));
        }
    }
}

TEST_CASE("queries outside storage return zero")
{
    const auto a = poly(0, {1.0, 2.0});
    CHECK(a.coeff(-5) == cplx{0.0});
    CHECK(a.coeff(100) == cplx{0.0});
    CHECK(coeff(a, 1) == cplx{2.0});
}

TEST_CASE("stored exact zeros do not narrow the product trust")
{
    // Exact w^-1 padded with zeros up to w^40, times a series truncated below -20.
    std::vector<cplx> padded(42);
    padded[0] = 1.0;
    const auto a = LaurentSeries::polynomial(-1, padded);
    const auto b = LaurentSeries::from_parts(-20, std::vector<cplx>(21, 1.0), Flavor::TwoSided, -20,
                                             LaurentSeries::open_hi);
    const Window t = product_trust(a, b);
    CHECK(t.lo == -21);
    CHECK(t.contains(-1));
}
