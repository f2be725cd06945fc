#include "dtoda/hamiltonian.hpp"

#include <doctest.h>

#include <cmath>

using namespace dtoda;

namespace
{

MonomialSum sum_of(std::initializer_list<std::tuple<int, int, cplx>> ts)
{
    MonomialSum s;
    for (const auto &[a, b, c] : ts) {
        s.add(a, b, c);
    }
    return s;
}

} // namespace

TEST_CASE("partials examples")
{
    {
        const auto p = partials(Hamiltonian({{1, 1, 1.0}}));
        CHECK(MonomialSum::max_difference(p.d1, sum_of({{0, -1, 1.0}})) == 0.0);
        CHECK(MonomialSum::max_difference(p.d2, sum_of({{1, -2, -1.0}})) == 0.0);
        CHECK(MonomialSum::max_difference(p.d12, sum_of({{0, -2, -1.0}})) == 0.0);
    }
    {
        const auto p = partials(Hamiltonian({{2, 1, 1.0}}));
        CHECK(MonomialSum::max_difference(p.d12, sum_of({{1, -2, -2.0}})) == 0.0);
    }
    {
        const auto p = partials(Hamiltonian({{1, 1, 1.0}, {2, 2, 0.5}}));
        CHECK(MonomialSum::max_difference(p.d12, sum_of({{0, -2, -1.0}, {1, -3, -2.0}})) == 0.0);
    }
    {
        // d12 term for (mu, nu, c) is -c mu nu z1^(mu-1) z2^(-nu-1).
        const auto p = partials(Hamiltonian({{3, 2, cplx{0.5, 0.25}}}));
        CHECK(MonomialSum::max_difference(p.d12, sum_of({{2, -3, cplx{0.5, 0.25} * -6.0}})) == 0.0);
        CHECK(MonomialSum::max_difference(p.d11, sum_of({{1, -2, cplx{0.5, 0.25} * 6.0}})) == 0.0);
        CHECK(MonomialSum::max_difference(p.d22, sum_of({{3, -4, cplx{0.5, 0.25} * 6.0}})) == 0.0);
    }
}

TEST_CASE("Hamiltonian validation")
{
    CHECK_THROWS_AS(Hamiltonian({{0, 1, 1.0}}), hamiltonian_error);
    CHECK_THROWS_WITH_AS(Hamiltonian({{1, 1, 1.0}, {-1, 1, 1.0}}), "log obstruction in J construction",
                         hamiltonian_error);
    CHECK_THROWS_AS(Hamiltonian({{1, 1, 1.0}, {1, 1, -1.0}}), hamiltonian_error);
}

TEST_CASE("eval_along examples")
{
    const auto id = identity_pair(8);
    const Window w{-40, 40};
    const auto p = partials(Hamiltonian({{1, 1, 1.0}}));
    const auto d1 = eval_along(p.d1, id, w);
    CHECK(max_abs_on(d1 - LaurentSeries::monomial(1.0, -1), d1.reliable()) == 0.0);
    const auto h = eval_along(p.h, id, w);
    CHECK(max_abs_on(h - LaurentSeries::constant(1.0), h.reliable()) == 0.0);

    const auto pair = ConformalPair::from_series(LaurentSeries::polynomial(-1, {0.1, 0.0, 1.0}, Flavor::AtInfinity),
                                                 LaurentSeries::monomial(1.0, 1, Flavor::AtZero), 8);
    const auto d12 = eval_along(p.d12, pair, w);
    CHECK(max_abs_on(d12 - LaurentSeries::monomial(-1.0, -2), d12.reliable()) == 0.0);
}

TEST_CASE("j_pair examples")
{
    for (int mu = 1; mu <= 3; ++mu) {
        for (int nu = 1; nu <= 3; ++nu) {
            const auto j = j_pair(Hamiltonian({{mu, nu, 1.0}}));
            CHECK(MonomialSum::max_difference(j.j1, sum_of({{2 * mu - 1, -2 * nu, -0.5 * mu}})) < 1e-15);
            CHECK(MonomialSum::max_difference(j.j2, sum_of({{2 * mu, -2 * nu - 1, -0.5 * nu}})) < 1e-15);
        }
    }
    const auto j = j_pair(Hamiltonian({{1, 1, 1.0}}));
    CHECK(MonomialSum::max_difference(j.j1, sum_of({{1, -2, -0.5}})) == 0.0);
    CHECK(MonomialSum::max_difference(j.j2, sum_of({{2, -3, -0.5}})) == 0.0);
}

TEST_CASE("j_pair consistency")
{
    const Hamiltonian hs[] = {
        Hamiltonian({{1, 1, 1.0}, {2, 1, cplx{0.3, -0.1}}, {1, 3, 0.2}}),
        Hamiltonian({{-2, 1, 0.5}, {3, 2, cplx{0.0, 1.0}}}),
        Hamiltonian({{1, 1, 1.0}}, {{GaugeVariable::z1, 2, 0.4}, {GaugeVariable::z2, -1, 0.7}}),
    };
    for (const auto &h : hs) {
        const auto p = partials(h);
        const auto j = j_pair(h);
        MonomialSum target;
        for (const auto &[ka, ca] : p.h.terms()) {
            for (const auto &[kb, cb] : p.d12.terms()) {
                target.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
            }
        }
        CHECK(MonomialSum::max_difference(j.j1.d_z2() * cplx{-1.0}, target) < 1e-14);
        CHECK(MonomialSum::max_difference(j.j2.d_z1(), target) < 1e-14);
    }
}

TEST_CASE("gauge_shift_constants examples")
{
    {
        const auto s = gauge_shift_constants({{GaugeVariable::z1, 1, 1.0}}, 4);
        CHECK(s.c.at(1) == cplx{1.0});
        for (const auto &[n, c] : s.c) {
            if (n != 1) {
                CHECK(c == cplx{0.0});
            }
        }
        for (const auto &[n, d] : s.d) {
            CHECK(d == cplx{0.0});
        }
    }
    {
        const auto s = gauge_shift_constants({{GaugeVariable::z2, 1, 1.0}}, 4);
        for (const auto &[n, c] : s.c) {
            CHECK(c == cplx{0.0});
        }
        CHECK(s.d.at(-1) == cplx{1.0});
        for (const auto &[n, d] : s.d) {
            if (n >= 0) {
                CHECK(d == cplx{0.0});
            }
        }
    }
    {
        const auto s = gauge_shift_constants({{GaugeVariable::z1, 2, 1.0}}, 4);
        CHECK(s.c.at(2) == cplx{1.0});
        CHECK(s.c.at(1) == cplx{0.0});
    }
    {
        const auto s = gauge_shift_constants({{GaugeVariable::z2, -2, 0.5}}, 4);
        CHECK(s.c.at(-2) == cplx{-0.5});
        CHECK(s.v0_shift == cplx{0.0});
    }
}
