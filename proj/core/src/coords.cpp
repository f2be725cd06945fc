#include "dtoda/coords.hpp"

#include <cmath>
#include <numbers>

namespace dtoda
{

namespace
{

int powers_needed(const Hamiltonian &h, const Partials &p, int order)
{
    const JPair j = j_pair(h);
    return std::max({order + 1, p.h.max_abs_exponent(), p.d1.max_abs_exponent(), p.d2.max_abs_exponent(),
                     p.d12.max_abs_exponent(), p.d11.max_abs_exponent(), p.d22.max_abs_exponent(),
                     j.j1.max_abs_exponent(), j.j2.max_abs_exponent()});
}

LaurentSeries log_over_w(const LaurentSeries &s, Flavor direction, cplx log_lead, int window)
{
    const SplitForm sp = split_normalize(s, direction);
    const Window clip = direction == Flavor::AtInfinity ? Window{-window, 0} : Window{0, window};
    return log1p(sp.u, clip, direction) + LaurentSeries::constant(log_lead);
}

} // namespace

CoordinateContext::CoordinateContext(const ConformalPair &pair, const Hamiltonian &h, int order)
    : pair_(&pair), partials_(dtoda::partials(h)), order_(order),
      window_(Window::symmetric(power_window(pair, powers_needed(h, partials_, order)))),
      powers_(pair, powers_needed(h, partials_, order), window_.hi)
{
    if (order < 0) {
        throw std::invalid_argument("coordinate order must be non-negative");
    }
    a_ = mul(eval(partials_.d1), powers_.dg(), window_);
    b_ = mul(eval(partials_.d2), powers_.df(), window_);
}

TodaCoordinates time_variables(const CoordinateContext &ctx, int order)
{
    TodaCoordinates c;
    c.order = order;
    const auto &pw = ctx.powers();
    c.t[0] = residue(ctx.a());
    c.t0_alt = -residue(ctx.b());
    for (int n = 1; n <= order; ++n) {
        const double dn = n;
        c.t[n] = residue_of_product(ctx.a(), pw.g_pow(-n)) / dn;
        c.v[n] = residue_of_product(ctx.a(), pw.g_pow(n));
        c.t[-n] = residue_of_product(ctx.b(), pw.f_pow(n)) / dn;
        c.v[-n] = residue_of_product(ctx.b(), pw.f_pow(-n));
    }
    return c;
}

TodaCoordinates time_variables(const ConformalPair &pair, const Hamiltonian &h, int order)
{
    return time_variables(CoordinateContext(pair, h, order), order);
}

cplx v_zero(const CoordinateContext &ctx)
{
    const auto &pair = ctx.pair();
    const int w = ctx.window().hi;
    const cplx log_b = std::log(pair.b());
    const LaurentSeries lg = log_over_w(pair.g(), Flavor::AtInfinity, log_b, w);
    const LaurentSeries lf = log_over_w(pair.f(), Flavor::AtZero, -log_b, w);
    const LaurentSeries hs = ctx.eval(ctx.partials().h);
    if (!hs.trusted().contains(0)) {
        throw series_error("H(g, f) constant term outside trusted window");
    }
    return residue_of_product(ctx.a(), lg) + residue_of_product(ctx.b(), lf) - hs.coeff(0);
}

cplx v_zero(const ConformalPair &pair, const Hamiltonian &h)
{
    return v_zero(CoordinateContext(pair, h, 0));
}

PhiPsi phi_psi(const TodaCoordinates &c, int order)
{
    PhiPsi r;
    r.phi.assign(static_cast<std::size_t>(order + 1), cplx{});
    r.psi.assign(static_cast<std::size_t>(order + 1), cplx{});
    for (int n = 1; n <= order; ++n) {
        r.phi[static_cast<std::size_t>(n)] = c.v.at(n) / static_cast<double>(n);
        r.psi[static_cast<std::size_t>(n)] = c.v.at(-n) / static_cast<double>(n);
    }
    return r;
}

TauParts log_tau(const CoordinateContext &ctx, const Hamiltonian &h, const TodaCoordinates &c)
{
    const auto &pw = ctx.powers();
    const int order = c.order;
    const PhiPsi pp = phi_psi(c, order);

    // Phi(g) and Psi(f) as truncated series.
    LaurentSeries phi_g = LaurentSeries::constant(0.0);
    LaurentSeries psi_f = LaurentSeries::constant(0.0);
    for (int n = 1; n <= order; ++n) {
        phi_g += pw.g_pow(-n) * pp.phi[static_cast<std::size_t>(n)];
        psi_f += pw.f_pow(n) * pp.psi[static_cast<std::size_t>(n)];
    }

    TauParts t;
    t.z1 = c.t.at(0) * c.v0 / 2.0;
    t.z2 = 0.5 * (residue_of_product(ctx.a(), phi_g) + residue_of_product(ctx.b(), psi_f));
    const JPair j = j_pair(h);
    const LaurentSeries j1 = ctx.eval(j.j1);
    const LaurentSeries j2 = ctx.eval(j.j2);
    t.z3 = 0.25 * (residue_of_product(j1, pw.dg()) + residue_of_product(j2, pw.df()));
    t.log_t = t.z1 + t.z2 + t.z3;
    cplx closed{};
    for (int n = 1; n <= order; ++n) {
        closed += c.t.at(n) * c.v.at(n) + c.t.at(-n) * c.v.at(-n);
    }
    t.z2_closed = 0.5 * closed;
    return t;
}

TauParts log_tau(const ConformalPair &pair, const Hamiltonian &h, const TodaCoordinates &c)
{
    return log_tau(CoordinateContext(pair, h, c.order), h, c);
}

TodaCoordinates coordinates(const ConformalPair &pair, const Hamiltonian &h, int order)
{
    const CoordinateContext ctx(pair, h, order);
    TodaCoordinates c = time_variables(ctx, order);
    c.v0 = v_zero(ctx);
    const TauParts t = log_tau(ctx, h, c);
    c.z1 = t.z1;
    c.z2 = t.z2;
    c.z3 = t.z3;
    c.log_t = t.log_t;
    c.z2_closed = t.z2_closed;
    return c;
}

PlemeljResult plemelj_check(const ConformalPair &pair, const Hamiltonian &h, const TodaCoordinates &c, int samples)
{
    const Partials p = partials(h);
    const LaurentSeries dg = derivative(pair.g());
    const LaurentSeries df = derivative(pair.f());
    const int order = c.order;
    const int m = samples;

    // Pointwise values on |w| = 1; coefficients by the trapezoidal rule.
    std::vector<cplx> cg(static_cast<std::size_t>(2 * order + 1));
    std::vector<cplx> cf(static_cast<std::size_t>(2 * order + 1));
    for (int j = 0; j < m; ++j) {
        const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * j / m);
        const cplx gv = pair.g().evaluate(w);
        const cplx fv = pair.f().evaluate(w);
        const cplx lhs_g = gv * p.d1.evaluate(gv, fv);
        const cplx lhs_f = -fv * p.d2.evaluate(gv, fv);
        // coefficient k: (1/2 pi i) oint F(w) g^(-k-1) g' dw.
        const cplx wg = dg.evaluate(w) * w / gv;
        const cplx wf = df.evaluate(w) * w / fv;
        const cplx ig = 1.0 / gv;
        const cplx if_ = 1.0 / fv;
        // g^(-k) starting from k = -order.
        cplx pg = 1.0;
        cplx pf = 1.0;
        for (int i = 0; i < order; ++i) {
            pg *= gv;
            pf *= fv;
        }
        for (int k = -order; k <= order; ++k) {
            const auto s = static_cast<std::size_t>(k + order);
            cg[s] += lhs_g * wg * pg;
            cf[s] += lhs_f * wf * pf;
            pg *= ig;
            pf *= if_;
        }
    }
    PlemeljResult r{0.0, 0.0};
    const double dm = m;
    for (int k = -order; k <= order; ++k) {
        const auto s = static_cast<std::size_t>(k + order);
        cplx eg;
        cplx ef;
        if (k > 0) {
            eg = static_cast<double>(k) * c.t.at(k);
            ef = -c.v.at(-k);
        } else if (k == 0) {
            eg = c.t.at(0);
            ef = c.t.at(0);
        } else {
            eg = c.v.at(-k);
            ef = static_cast<double>(k) * c.t.at(k);
        }
        r.g_side = std::max(r.g_side, std::abs(cg[s] / dm - eg));
        r.f_side = std::max(r.f_side, std::abs(cf[s] / dm - ef));
    }
    return r;
}

} // namespace dtoda
