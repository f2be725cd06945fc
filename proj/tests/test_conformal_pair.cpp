#include "dtoda/conformal_pair.hpp"

#include <doctest.h>

#include <cmath>

using namespace dtoda;

TEST_CASE("from_coefficients examples")
{
    const auto id = from_coefficients({{1, 1.0}}, {{1, 1.0}}, 8);
    CHECK(id.b() == cplx{1.0});
    CHECK(id.a1() == cplx{1.0});

    const auto p = from_coefficients({{1, 2.0}}, {{1, 0.5}}, 8);
    CHECK(p.normalization_defect() == 0.0);

    CHECK_THROWS_WITH_AS((void)from_coefficients({{1, 2.0}}, {{1, 1.0}}, 8), "a1·b ≠ 1", pair_error);
    CHECK_THROWS_WITH_AS((void)from_coefficients({{1, 1.0}}, {{0, 0.3}, {1, 1.0}}, 8), "f(0) ≠ 0", pair_error);
    CHECK_THROWS_AS((void)from_coefficients({{2, 1.0}, {1, 1.0}}, {{1, 1.0}}, 8), pair_error);
}

TEST_CASE("sigma_conjugate of the identity is the identity")
{
    const auto p = sigma_conjugate(LaurentSeries::monomial(1.0, 1, Flavor::AtInfinity), 8);
    CHECK(p.f().coeff(1) == cplx{1.0});
    for (int k = 2; k <= p.depth() + 1; ++k) {
        CHECK(p.f().coeff(k) == cplx{0.0});
    }
}

TEST_CASE("sigma_conjugate geometric series")
{
    const auto p = sigma_fixture(16);
    const auto &f = p.f();
    for (int k = 0; k <= 20; ++k) {
        CHECK(std::abs(f.coeff(1 + 2 * k) - std::pow(-0.1, k)) < 1e-15);
        CHECK(f.coeff(2 + 2 * k) == cplx{0.0});
    }
    CHECK(f.reliable().hi == p.depth() + 1);
    CHECK(p.normalization_defect() < 1e-15);
}

TEST_CASE("sigma_conjugate is an involution")
{
    const auto g = LaurentSeries::polynomial(-1, {cplx{0.0, 0.1}, 0.0, 1.0}, Flavor::AtInfinity);
    const auto p = sigma_conjugate(g, 16);
    CHECK(std::abs(p.f().coeff(3) - cplx{0.0, 0.1}) < 1e-15);
    const auto back = sigma_implied_g(p.f(), p.depth());
    CHECK(max_abs_diff(back, g, back.reliable()) < 1e-12);
    CHECK(back.reliable().lo <= -40);

    const auto r = random_pair(3, 0.3, 12, true);
    const auto q = sigma_conjugate(r.g(), 12);
    const auto rb = sigma_implied_g(q.f(), q.depth());
    CHECK(max_abs_diff(rb, r.g(), rb.reliable()) < 1e-12);
}

TEST_CASE("sigma_conjugate rejects complex b")
{
    const auto g = LaurentSeries::monomial(cplx{1.0, 0.2}, 1, Flavor::AtInfinity);
    CHECK_THROWS_AS((void)sigma_conjugate(g, 4), pair_error);
}

TEST_CASE("random_pair determinism and bounds")
{
    const auto a = random_pair(7, 0.3, 16);
    const auto b = random_pair(7, 0.3, 16);
    for (int k = -16; k <= 1; ++k) {
        CHECK(a.g().coeff(k) == b.g().coeff(k));
    }
    for (int k = 1; k <= 17; ++k) {
        CHECK(a.f().coeff(k) == b.f().coeff(k));
    }
    for (int k = 1; k <= 16; ++k) {
        CHECK(std::abs(a.g().coeff(1 - k)) <= std::pow(0.3, k));
        CHECK(std::abs(a.f().coeff(1 + k)) <= std::pow(0.3, k));
    }
    CHECK(a.normalization_defect() <= 1e-15);
    CHECK(std::abs(a.b() - 1.0) < 0.1);

    const auto c = random_pair(8, 0.3, 16);
    bool differs = false;
    for (int k = -16; k <= 1; ++k) {
        differs = differs || c.g().coeff(k) != a.g().coeff(k);
    }
    CHECK(differs);
}

TEST_CASE("random_pair with zero decay")
{
    const auto p = random_pair(5, 0.0, 8);
    for (int k = -8; k <= 0; ++k) {
        CHECK(p.g().coeff(k) == cplx{0.0});
    }
    for (int k = 2; k <= 9; ++k) {
        CHECK(p.f().coeff(k) == cplx{0.0});
    }
    CHECK(p.f().coeff(1) == 1.0 / p.b());
}

TEST_CASE("random_pair real mode")
{
    const auto p = random_pair(11, 0.3, 16, true);
    for (int k = -16; k <= 1; ++k) {
        CHECK(p.g().coeff(k).imag() == 0.0);
    }
    for (int k = 1; k <= 17; ++k) {
        CHECK(p.f().coeff(k).imag() == 0.0);
    }
}
