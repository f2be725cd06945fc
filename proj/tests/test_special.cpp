#include "dtoda/special.hpp"

#include <doctest.h>

#include <cmath>

using namespace dtoda;

namespace
{

ConformalPair fix_rand()
{
    return random_pair(7, 0.3, 16);
}

double coords_difference(const TodaCoordinates &a, const TodaCoordinates &b)
{
    double d = std::max(std::abs(a.t0_alt - b.t0_alt), std::abs(a.v0 - b.v0));
    for (const auto &[n, t] : a.t) {
        d = std::max(d, std::abs(t - b.t.at(n)));
    }
    for (const auto &[n, v] : a.v) {
        d = std::max(d, std::abs(v - b.v.at(n)));
    }
    return d;
}

} // namespace

TEST_CASE("special_coords")
{
    const auto id = special_coords(identity_pair(8), {1, 1}, 8);
    CHECK(std::abs(id.t.at(0) - 1.0) < 1e-15);
    CHECK(std::abs(id.v0 + 1.0) < 1e-15);
    for (int n = 1; n <= 8; ++n) {
        CHECK(std::abs(id.t.at(n)) < 1e-15);
        CHECK(std::abs(id.t.at(-n)) < 1e-15);
    }
    CHECK(std::abs(special_coords(sigma_fixture(16), {1, 1}, 16).t.at(2) - 0.05) < 1e-14);

    const auto p = fix_rand();
    for (const MonomialCase mc : {MonomialCase{2, 1}, MonomialCase{1, 3}, MonomialCase{-1, 2}}) {
        const auto s = special_coords(p, mc, 16);
        const auto g = coordinates(p, mc.hamiltonian(), 16);
        CHECK(coords_difference(s, g) <= 1e-12);
    }
}

TEST_CASE("nontrivial_identity")
{
    const auto id = coordinates(identity_pair(8), Hamiltonian({{1, 1, 1.0}}), 8);
    CHECK(nontrivial_identity(id, {1, 1}) == 0.0);
    const auto p = fix_rand();
    const int order = summation_order(p);
    for (int mu = 1; mu <= 3; ++mu) {
        for (int nu = 1; nu <= 3; ++nu) {
            const MonomialCase mc{mu, nu};
            CHECK(nontrivial_identity(coordinates(p, mc.hamiltonian(), order), mc) <= 1e-9);
        }
    }
}

TEST_CASE("special_logtau")
{
    const auto id = coordinates(identity_pair(8), Hamiltonian({{1, 1, 1.0}}), 8);
    CHECK(std::abs(special_logtau(id, {1, 1}) + 0.75) < 1e-15);
    CHECK(std::abs(id.log_t + 0.75) < 1e-15);

    const auto p = fix_rand();
    const int order = summation_order(p);
    for (int mu = 1; mu <= 3; ++mu) {
        for (int nu = 1; nu <= 3; ++nu) {
            const MonomialCase mc{mu, nu};
            const auto c = coordinates(p, mc.hamiltonian(), order);
            CHECK(std::abs(special_logtau(c, mc) - c.log_t) <= 1e-9);
        }
    }
}

TEST_CASE("special_logtau on the sigma fixture")
{
    const auto p = sigma_fixture(16);
    const auto c = coordinates(p, Hamiltonian({{1, 1, 1.0}}), summation_order(p));
    // -t0^2/4 + t0 v0/2 + sum (1/2 - n/4) (t_n v_n + conj(t_n v_n)).
    const cplx t0 = c.t.at(0);
    cplx sigma_form = -t0 * t0 / 4.0 + t0 * c.v0 / 2.0;
    for (int n = 1; n <= c.order; ++n) {
        const cplx tv = c.t.at(n) * c.v.at(n);
        sigma_form += (0.5 - 0.25 * n) * (tv + std::conj(tv));
    }
    CHECK(std::abs(sigma_form - c.log_t) <= 1e-9);
    CHECK(std::abs(special_logtau(c, {1, 1}) - c.log_t) <= 1e-9);
    for (int n = 1; n <= 16; ++n) {
        CHECK(std::abs(c.t.at(-n) + std::conj(c.t.at(n))) <= 1e-10);
        CHECK(std::abs(c.v.at(-n) + std::conj(c.v.at(n))) <= 1e-10);
    }
}

TEST_CASE("generating_identity_check")
{
    {
        const auto p = identity_pair(8);
        const auto c = coordinates(p, Hamiltonian({{1, 1, 1.0}}), 8);
        const auto r = generating_identity_check(p, c, {1, 1});
        CHECK(r.max() < 1e-15);
        CHECK(std::abs(r.offset - 1.0) < 1e-15);
    }
    const auto p = fix_rand();
    const int order = summation_order(p);
    for (const MonomialCase mc : {MonomialCase{1, 1}, MonomialCase{2, 2}, MonomialCase{2, 3}}) {
        const auto c = coordinates(p, mc.hamiltonian(), order);
        const auto r = generating_identity_check(p, c, mc);
        MESSAGE("mu " << mc.mu << " nu " << mc.nu << " derivative " << r.derivative << " plemelj " << r.plemelj);
        CHECK(r.derivative <= 1e-9);
        CHECK(r.plemelj <= 1e-9);
    }
}
