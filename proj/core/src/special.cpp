#include "dtoda/special.hpp"

#include <cmath>

namespace dtoda
{

namespace
{

// log(s / w) expanded in the decay direction with the given constant.
LaurentSeries log_over_w(const LaurentSeries &s, Flavor direction, cplx log_lead, int window)
{
    const SplitForm sp = split_normalize(s, direction);
    const Window clip = direction == Flavor::AtInfinity ? Window{-window, 0} : Window{0, window};
    return log1p(sp.u, clip, direction) + LaurentSeries::constant(log_lead);
}

} // namespace

TodaCoordinates special_coords(const ConformalPair &pair, MonomialCase mc, int order)
{
    const Hamiltonian h = mc.hamiltonian();
    const int max_power = std::max(std::abs(mc.mu), std::abs(mc.nu)) + order + 1;
    const int window = power_window(pair, max_power);
    const Window clip = Window::symmetric(window);
    const PairPowers pw(pair, max_power, window);
    const double mu = mc.mu;
    const double nu = mc.nu;
    // f^-nu g' and g^mu f'.
    const LaurentSeries fg = mul(pw.f_pow(-mc.nu), pw.dg(), clip);
    const LaurentSeries gf = mul(pw.g_pow(mc.mu), pw.df(), clip);

    TodaCoordinates c;
    c.order = order;
    c.t[0] = mu * residue_of_product(pw.g_pow(mc.mu - 1), fg);
    c.t0_alt = nu * residue_of_product(pw.f_pow(-mc.nu - 1), gf);
    for (int n = 1; n <= order; ++n) {
        const double dn = n;
        c.t[n] = mu / dn * residue_of_product(pw.g_pow(mc.mu - n - 1), fg);
        c.v[n] = mu * residue_of_product(pw.g_pow(mc.mu + n - 1), fg);
        c.t[-n] = -nu / dn * residue_of_product(pw.f_pow(n - mc.nu - 1), gf);
        c.v[-n] = -nu * residue_of_product(pw.f_pow(-n - mc.nu - 1), gf);
    }
    const CoordinateContext ctx(pair, h, order);
    c.v0 = v_zero(ctx);
    const TauParts t = log_tau(ctx, h, c);
    c.z1 = t.z1;
    c.z2 = t.z2;
    c.z3 = t.z3;
    c.log_t = t.log_t;
    c.z2_closed = t.z2_closed;
    return c;
}

double nontrivial_identity(const TodaCoordinates &c, MonomialCase mc)
{
    cplx sp{};
    cplx sm{};
    for (int n = 1; n <= c.order; ++n) {
        sp += static_cast<double>(n) * c.t.at(n) * c.v.at(n);
        sm += static_cast<double>(n) * c.t.at(-n) * c.v.at(-n);
    }
    const cplx t0 = c.t.at(0);
    const double mu = mc.mu;
    const double nu = mc.nu;
    return std::abs(2.0 * nu * sp + nu * t0 * t0 - 2.0 * mu * sm - mu * t0 * t0);
}

cplx special_logtau(const TodaCoordinates &c, MonomialCase mc)
{
    const double mu = mc.mu;
    const double nu = mc.nu;
    const cplx t0 = c.t.at(0);
    cplx r = -(1.0 / mu + 1.0 / nu) * t0 * t0 / 8.0 + t0 * c.v0 / 2.0;
    for (int n = 1; n <= c.order; ++n) {
        const double dn = n;
        r += 0.5 * (1.0 - 0.5 * dn / mu) * c.t.at(n) * c.v.at(n);
        r += 0.5 * (1.0 - 0.5 * dn / nu) * c.t.at(-n) * c.v.at(-n);
    }
    return r;
}

GeneratingResult generating_identity_check(const ConformalPair &pair, const TodaCoordinates &c, MonomialCase mc)
{
    const Hamiltonian h = mc.hamiltonian();
    const int order = c.order;
    const int max_power = std::max({std::abs(mc.mu), std::abs(mc.nu), order});
    const int window = power_window(pair, max_power);
    const Window clip = Window::symmetric(window);
    const PairPowers pw(pair, max_power, window);

    GeneratingResult r;
    r.plemelj = plemelj_check(pair, h, c).max();

    const LaurentSeries lhs = mul(pw.g_pow(mc.mu), pw.f_pow(-mc.nu), clip);
    const cplx log_b = std::log(pair.b());
    const LaurentSeries lg = log_over_w(pair.g(), Flavor::AtInfinity, log_b, window);
    const LaurentSeries lf = log_over_w(pair.f(), Flavor::AtZero, -log_b, window);
    LaurentSeries rhs = (lg - lf) * c.t.at(0);
    for (int n = 1; n <= order; ++n) {
        const double dn = n;
        rhs += pw.g_pow(n) * c.t.at(n) - pw.g_pow(-n) * (c.v.at(n) / dn);
        rhs += pw.f_pow(n) * (c.v.at(-n) / dn) - pw.f_pow(-n) * c.t.at(-n);
    }
    const Window cmp{-order, order};
    r.derivative = max_abs_diff(derivative(lhs), derivative(rhs), cmp);
    r.offset = lhs.coeff(0) - rhs.coeff(0);
    return r;
}

} // namespace dtoda
