#include "dtoda/flows.hpp"

#include <cmath>
#include <optional>

namespace dtoda
{

namespace
{

// Coefficients of u on [lo, hi]; the cut sides are exact by construction.
LaurentSeries part(const LaurentSeries &u, int lo, int hi)
{
    const int a = std::max(lo, u.lo());
    const int b = std::min(hi, u.hi());
    if (a > b) {
        return LaurentSeries::constant(0.0);
    }
    std::vector<cplx> v(static_cast<std::size_t>(b - a + 1));
    for (int k = a; k <= b; ++k) {
        v[static_cast<std::size_t>(k - a)] = u.coeff(k);
    }
    const Window t = u.trusted();
    const int rlo = a > u.lo() ? LaurentSeries::open_lo : t.lo;
    const int rhi = b < u.hi() ? LaurentSeries::open_hi : t.hi;
    return LaurentSeries::from_parts(a, std::move(v), Flavor::TwoSided, rlo, rhi);
}

// (c, k) when s is exactly c w^k.
std::optional<std::pair<cplx, int>> exact_monomial(const LaurentSeries &s)
{
    if (!s.exact_below() || !s.exact_above()) {
        return std::nullopt;
    }
    std::optional<std::pair<cplx, int>> out;
    for (int k = s.lo(); k <= s.hi(); ++k) {
        if (s.coeff(k) != cplx{}) {
            if (out) {
                return std::nullopt;
            }
            out.emplace(s.coeff(k), k);
        }
    }
    return out;
}

Window u_window(const ConformalPair &pair, int n)
{
    const int d = std::max(pair.depth(), pair.order() + std::abs(n));
    return {-d - std::abs(n), d + std::abs(n)};
}

// B_n and d0 B_n from the n = 0 flow field.
struct LaxOperator {
    LaurentSeries b;
    LaurentSeries d0b;
};

LaxOperator lax_operator(const ConformalPair &pair, const GrunskyTable &table, const FlowField &f0, int n, int window)
{
    const Window clip{-window, window};
    const LaurentSeries base = n > 0 ? pair.g() : pair.f();
    const Flavor dir = n > 0 ? Flavor::AtInfinity : Flavor::AtZero;
    const LaurentSeries d0 = n > 0 ? f0.dg : f0.df;
    const LaurentSeries pw = int_pow(base, n - 1, clip, dir);
    const LaurentSeries s = mul(pw, d0, clip) * static_cast<double>(n);
    LaurentSeries d0b = n > 0 ? part(s, 1, window) : part(s, -window, -1);
    d0b += LaurentSeries::constant(0.5 * s.coeff(0));
    return {b_polynomial(pair, table, n), d0b};
}

} // namespace

double FlowField::split_defect(const ConformalPair &pair) const
{
    const int order = pair.order();
    const Window cmp{-order, order};
    const int m = circle_samples_for(u_window(pair, n));
    const Window w{-m / 4, m / 4};
    const LaurentSeries lhs = divide_on_circle(dg, derivative(pair.g()), w, m) -
                              divide_on_circle(df, derivative(pair.f()), w, m);
    double d = 0.0;
    for (int k = cmp.lo; k <= cmp.hi; ++k) {
        d = std::max(d, std::abs(lhs.coeff(k) - u.coeff(k)));
    }
    return d;
}

LaurentSeries flow_denominator(const ConformalPair &pair, const Hamiltonian &h)
{
    const MonomialSum d12 = partials(h).d12;
    const int window = power_window(pair, d12.max_abs_exponent());
    const PairPowers pw(pair, d12.max_abs_exponent(), window);
    const Window clip = Window::symmetric(window);
    return mul(mul(eval_along(d12, pw, clip), pw.dg(), clip), pw.df(), clip);
}

LaurentSeries u_field(const ConformalPair &pair, const Hamiltonian &h, int n)
{
    const LaurentSeries num =
        n == 0 ? LaurentSeries::monomial(1.0, -1) : derivative(faber(pair, n).poly).with_flavor(Flavor::TwoSided);
    const Window w = u_window(pair, n);
    const LaurentSeries den = flow_denominator(pair, h);
    if (const auto mono = exact_monomial(den)) {
        return mul(num, LaurentSeries::monomial(-1.0 / mono->first, -mono->second), w).with_flavor(Flavor::TwoSided);
    }
    return -divide_on_circle(num, den, w, circle_samples_for(w));
}

FlowField flow_field(const ConformalPair &pair, const Hamiltonian &h, int n)
{
    FlowField f;
    f.n = n;
    f.u = u_field(pair, h, n);
    const cplx half = 0.5 * f.u.coeff(1);
    const LaurentSeries sg = part(f.u, f.u.lo(), 0) + LaurentSeries::monomial(half, 1);
    const LaurentSeries sf = -(part(f.u, 2, f.u.hi()) + LaurentSeries::monomial(half, 1));
    const int d = pair.depth();
    // The projections onto exponents <= 1 and >= 1 are exact by the split.
    f.dg = part(mul(derivative(pair.g()), sg, {-d, 2}), -d, 1);
    f.df = part(mul(derivative(pair.f()), sf, {0, d + 1}), 1, d + 1);
    return f;
}

ConformalPair advance(const ConformalPair &pair, const LaurentSeries &dg, const LaurentSeries &df, cplx eps)
{
    const LaurentSeries g = (pair.g() + dg * eps).with_flavor(Flavor::AtInfinity);
    LaurentSeries f = (pair.f() + df * eps).with_flavor(Flavor::AtZero);
    const cplx ab = g.coeff(1) * f.coeff(1);
    if (!(std::abs(ab - 1.0) <= 1e-9)) {
        throw std::runtime_error("flow left chart");
    }
    f *= 1.0 / ab;
    return ConformalPair::from_series(g, f, pair.order(), pair.depth());
}

ConformalPair step(const ConformalPair &pair, const Hamiltonian &h, int n, double eps, StepMethod method)
{
    if (eps == 0.0) {
        return pair;
    }
    const FlowField k1 = flow_field(pair, h, n);
    if (method == StepMethod::euler) {
        return advance(pair, k1.dg, k1.df, eps);
    }
    const FlowField k2 = flow_field(advance(pair, k1.dg, k1.df, eps / 2), h, n);
    const FlowField k3 = flow_field(advance(pair, k2.dg, k2.df, eps / 2), h, n);
    const FlowField k4 = flow_field(advance(pair, k3.dg, k3.df, eps), h, n);
    const LaurentSeries dg = (k1.dg + k2.dg * 2.0 + k3.dg * 2.0 + k4.dg) * (1.0 / 6.0);
    const LaurentSeries df = (k1.df + k2.df * 2.0 + k3.df * 2.0 + k4.df) * (1.0 / 6.0);
    return advance(pair, dg, df, eps);
}

double jacobian_check(const ConformalPair &pair, const Hamiltonian &h, int order, double eps)
{
    double d = 0.0;
    for (int n = -order; n <= order; ++n) {
        const FlowField fld = flow_field(pair, h, n);
        const auto plus = time_variables(advance(pair, fld.dg, fld.df, eps), h, order);
        const auto minus = time_variables(advance(pair, fld.dg, fld.df, -eps), h, order);
        for (int m = -order; m <= order; ++m) {
            const cplx q = (plus.t.at(m) - minus.t.at(m)) / (2.0 * eps);
            d = std::max(d, std::abs(q - (m == n ? 1.0 : 0.0)));
        }
    }
    return d;
}

LaurentSeries bracket(const LaurentSeries &a, const LaurentSeries &d0a, const LaurentSeries &b,
                      const LaurentSeries &d0b)
{
    const LaurentSeries w = LaurentSeries::monomial(1.0, 1);
    return mul(w, mul(derivative(a), d0b) - mul(d0a, derivative(b)));
}

LaurentSeries string_residual(const ConformalPair &pair, const Hamiltonian &h)
{
    const FlowField f0 = flow_field(pair, h, 0);
    const MonomialSum d12 = partials(h).d12;
    const int window = power_window(pair, d12.max_abs_exponent());
    const PairPowers pw(pair, d12.max_abs_exponent(), window);
    const Window clip = Window::symmetric(window);
    const LaurentSeries br = bracket(pair.g(), f0.dg, pair.f(), f0.df);
    return mul(br, eval_along(d12, pw, clip), clip) - LaurentSeries::constant(1.0);
}

double string_check(const ConformalPair &pair, const Hamiltonian &h)
{
    const int order = pair.order();
    return max_abs_on(string_residual(pair, h), {-order, order});
}

LaxResult lax_check(const ConformalPair &pair, const Hamiltonian &h, const GrunskyTable &table, int n)
{
    if (n == 0 || std::abs(n) > table.order()) {
        throw std::invalid_argument("lax_check: need 0 < |n| <= table order");
    }
    const int order = pair.order();
    const Window cmp{-order, order};
    const Partials p = partials(h);
    const int window = power_window(pair, std::max(p.d1.max_abs_exponent(), p.d12.max_abs_exponent()) + 1);
    const Window clip = Window::symmetric(window);
    const FlowField f0 = flow_field(pair, h, 0);
    const FlowField fn = flow_field(pair, h, n);
    const LaxOperator op = lax_operator(pair, table, f0, n, window);

    LaxResult r;
    r.g_side = max_abs_diff(fn.dg, bracket(op.b, op.d0b, pair.g(), f0.dg), cmp);
    r.f_side = max_abs_diff(fn.df, bracket(op.b, op.d0b, pair.f(), f0.df), cmp);

    // M = g d1 H(g, f); d0 M = d0g d1 + g (d11 d0g + d12 d0f).
    const PairPowers pw(pair, std::max({p.d1.max_abs_exponent(), p.d11.max_abs_exponent(),
                                        p.d12.max_abs_exponent()}),
                        window);
    const LaurentSeries d1 = eval_along(p.d1, pw, clip);
    const LaurentSeries d11 = eval_along(p.d11, pw, clip);
    const LaurentSeries d12 = eval_along(p.d12, pw, clip);
    const LaurentSeries m = mul(pair.g(), d1, clip);
    const LaurentSeries d0m =
        mul(f0.dg, d1, clip) + mul(pair.g(), mul(d11, f0.dg, clip) + mul(d12, f0.df, clip), clip);
    r.canonical = max_abs_diff(bracket(pair.g(), f0.dg, m, d0m), pair.g(), cmp);
    return r;
}

cplx hessian_entry(const GrunskyTable &table, int m, int n)
{
    if (m == 0 && n == 0) {
        return -2.0 * table.b00();
    }
    if (n == 0) {
        return static_cast<double>(std::abs(m)) * table(m, 0);
    }
    if (m == 0) {
        return static_cast<double>(std::abs(n)) * table(0, n);
    }
    return -static_cast<double>(std::abs(m * n)) * table(m, n);
}

TauCheckResult tau_gradient_check(const ConformalPair &pair, const Hamiltonian &h, int order, double eps)
{
    const int full = pair.order();
    const TodaCoordinates base = coordinates(pair, h, full);
    const GrunskyTable table = grunsky_table(pair, order);
    const int size = 2 * order + 1;
    std::vector<cplx> q(static_cast<std::size_t>(size * size));
    auto at = [&](int m, int n) -> cplx & { return q[static_cast<std::size_t>((m + order) * size + n + order)]; };

    TauCheckResult r;
    for (int n = -order; n <= order; ++n) {
        const FlowField fld = flow_field(pair, h, n);
        const auto plus = coordinates(advance(pair, fld.dg, fld.df, eps), h, full);
        const auto minus = coordinates(advance(pair, fld.dg, fld.df, -eps), h, full);
        const cplx grad = (plus.log_t - minus.log_t) / (2.0 * eps);
        r.gradient = std::max(r.gradient, std::abs(grad - base.v_at(n)));
        for (int m = -order; m <= order; ++m) {
            at(m, n) = (plus.v_at(m) - minus.v_at(m)) / (2.0 * eps);
            r.hessian = std::max(r.hessian, std::abs(at(m, n) - hessian_entry(table, m, n)));
        }
    }
    for (int m = -order; m <= order; ++m) {
        for (int n = -order; n <= order; ++n) {
            r.symmetry = std::max(r.symmetry, std::abs(at(m, n) - at(n, m)));
        }
    }
    return r;
}

} // namespace dtoda
