#include "dtoda/flows.hpp"

#include <doctest.h>

#include <cmath>

using namespace dtoda;

namespace
{

const Hamiltonian h11({{1, 1, 1.0}});

ConformalPair fix_rand()
{
    return random_pair(7, 0.3, 16);
}

// Largest |s_k - expected_k| over [lo, hi].
double deviation(const LaurentSeries &s, const std::map<int, cplx> &expected, int lo, int hi)
{
    double d = 0.0;
    for (int k = lo; k <= hi; ++k) {
        const auto it = expected.find(k);
        d = std::max(d, std::abs(s.coeff(k) - (it == expected.end() ? cplx{} : it->second)));
    }
    return d;
}

} // namespace

TEST_CASE("u_field on the identity pair")
{
    const auto id = identity_pair(8);
    CHECK(deviation(u_field(id, h11, 0), {{1, 1.0}}, -20, 20) < 1e-15);
    CHECK(deviation(u_field(id, h11, 1), {{2, 1.0}}, -20, 20) < 1e-15);
    CHECK(deviation(u_field(id, h11, -1), {{0, -1.0}}, -20, 20) < 1e-15);
}

TEST_CASE("u_field rejects a non-perturbative pair")
{
    const auto p = from_coefficients({{1, 1.0}, {-1, 1.0}}, {{1, 1.0}}, 4);
    CHECK_THROWS_WITH((void)u_field(p, h11, 1), "denominator vanishes on circle");
}

TEST_CASE("flow_field on the identity pair")
{
    const auto id = identity_pair(8);
    const auto f1 = flow_field(id, h11, 1);
    CHECK(deviation(f1.dg, {}, -20, 1) < 1e-15);
    CHECK(deviation(f1.df, {{2, -1.0}}, 1, 20) < 1e-15);
    const auto f0 = flow_field(id, h11, 0);
    CHECK(deviation(f0.dg, {{1, 0.5}}, -20, 1) < 1e-15);
    CHECK(deviation(f0.df, {{1, -0.5}}, 1, 20) < 1e-15);
    const auto fm = flow_field(id, h11, -1);
    CHECK(deviation(fm.dg, {{0, -1.0}}, -20, 1) < 1e-15);
    CHECK(deviation(fm.df, {}, 1, 20) < 1e-15);
}

TEST_CASE("flow_field split consistency and normalization")
{
    const auto p = fix_rand();
    for (int n : {-3, -1, 0, 1, 4}) {
        const auto f = flow_field(p, h11, n);
        CHECK(f.split_defect(p) <= 1e-10);
        // d log a1 = -d log b to first order.
        const cplx dlb = f.dg.coeff(1) / p.b();
        const cplx dla = f.df.coeff(1) / p.a1();
        CHECK(std::abs(dlb + dla) <= 1e-12);
    }
}

TEST_CASE("flow fields ignore gauge terms")
{
    const auto p = fix_rand();
    const auto gauged = h11.with_gauge({{GaugeVariable::z1, 2, 0.3}, {GaugeVariable::z2, -1, 0.4}});
    for (int n : {-2, 0, 2}) {
        const auto a = flow_field(p, h11, n);
        const auto b = flow_field(p, gauged, n);
        CHECK(max_abs_diff(a.dg, b.dg) == 0.0);
        CHECK(max_abs_diff(a.df, b.df) == 0.0);
    }
}

TEST_CASE("step")
{
    const auto id = identity_pair(8);
    const double eps = 1e-5;
    const auto s = step(id, h11, 1, eps);
    CHECK(std::abs(s.f().coeff(2) + eps) < 1e-15);
    CHECK(std::abs(s.f().coeff(1) - 1.0) < 1e-15);
    CHECK(std::abs(s.g().coeff(1) - 1.0) < 1e-15);

    const auto same = step(id, h11, 1, 0.0);
    CHECK(max_abs_diff(same.g(), id.g()) == 0.0);
    CHECK(max_abs_diff(same.f(), id.f()) == 0.0);

    const auto p = fix_rand();
    const auto back = step(step(p, h11, 2, eps), h11, 2, -eps);
    const double d = std::max(max_abs_diff(back.g(), p.g()), max_abs_diff(back.f(), p.f()));
    CHECK(d <= 10 * eps * eps);
    CHECK(d > 0.0);

    const auto r = step(p, h11, 1, 1e-2, StepMethod::rk4);
    CHECK(r.normalization_defect() <= 1e-12);
    CHECK_THROWS_WITH((void)step(p, h11, 0, 0.1), "flow left chart");
}

TEST_CASE("rk4 converges at fourth order")
{
    const auto p = fix_rand();
    const double t = 0.05;
    auto run = [&](StepMethod m, int steps) {
        ConformalPair q = p;
        for (int i = 0; i < steps; ++i) {
            q = step(q, h11, 1, t / steps, m);
        }
        return q;
    };
    const auto ref = run(StepMethod::rk4, 32);
    const double e4 = max_abs_diff(run(StepMethod::rk4, 4).f(), ref.f(), {1, 16});
    const double e8 = max_abs_diff(run(StepMethod::rk4, 8).f(), ref.f(), {1, 16});
    MESSAGE("rk4 errors " << e4 << " " << e8);
    CHECK(e4 > 8.0 * e8);
}

TEST_CASE("jacobian_check")
{
    CHECK(jacobian_check(identity_pair(8), h11, 4) <= 1e-6);
    const double d = jacobian_check(fix_rand(), h11, 8);
    MESSAGE("random pair jacobian defect " << d);
    CHECK(d <= 1e-6);

    const auto id = identity_pair(8);
    const auto f = flow_field(id, h11, 1);
    const auto plus = time_variables(advance(id, f.dg, f.df, 1e-5), h11, 4);
    const auto minus = time_variables(advance(id, f.dg, f.df, -1e-5), h11, 4);
    CHECK(std::abs((plus.t.at(1) - minus.t.at(1)) / 2e-5 - 1.0) <= 1e-7);
}

TEST_CASE("string_check")
{
    const auto id = identity_pair(8);
    const auto br = bracket(id.g(), flow_field(id, h11, 0).dg, id.f(), flow_field(id, h11, 0).df);
    CHECK(deviation(br, {{2, -1.0}}, -10, 10) < 1e-15);
    CHECK(string_check(id, h11) < 1e-15);
    CHECK(string_check(fix_rand(), h11) <= 1e-9);
    CHECK(string_check(fix_rand(), Hamiltonian({{2, 1, 1.0}})) <= 1e-9);
}

TEST_CASE("lax_check")
{
    const auto id = identity_pair(8);
    const auto r = lax_check(id, h11, grunsky_table(id, 4), 1);
    CHECK(r.max() < 1e-15);
    const auto p = fix_rand();
    const auto table = grunsky_table(p, 4);
    for (int n : {-4, -2, -1, 1, 2, 4}) {
        CHECK(lax_check(p, h11, table, n).max() <= 1e-8);
    }
    CHECK(lax_check(p, Hamiltonian({{2, 1, 1.0}, {1, 2, 0.2}}), table, 2).max() <= 1e-8);
    CHECK_THROWS_AS((void)lax_check(p, h11, table, 0), std::invalid_argument);
}

TEST_CASE("tau_gradient_check")
{
    const auto id = identity_pair(8);
    const auto t = tau_gradient_check(id, h11, 2);
    CHECK(t.max() <= 1e-6);
    CHECK(hessian_entry(grunsky_table(id, 2), 0, 0) == cplx{0.0});

    const auto r = tau_gradient_check(fix_rand(), h11, 6);
    MESSAGE("random pair tau defects " << r.gradient << " " << r.hessian << " " << r.symmetry);
    CHECK(r.max() <= 1e-6);

    const auto g = tau_gradient_check(random_pair(3, 0.3, 12), Hamiltonian({{2, 2, 1.0}}), 3);
    CHECK(g.max() <= 1e-6);
}

TEST_CASE("exact pairs stay exact under the flow")
{
    const auto id = identity_pair(8);
    CHECK(string_check(id, h11) == 0.0);
    for (const int n : {-3, -1, 0, 2}) {
        const FlowField f = flow_field(id, h11, n);
        CHECK(f.dg.exact_below());
        CHECK(f.dg.exact_above());
        CHECK(f.df.exact_below());
        CHECK(f.df.exact_above());
        const auto moved = advance(id, f.dg, f.df, 1e-5);
        CHECK_NOTHROW((void)time_variables(moved, h11, 8));
    }
    CHECK(jacobian_check(id, h11, 8) <= 1e-6);
}
