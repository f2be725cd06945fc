#include "dtoda/grunsky.hpp"

#include <cmath>
#include <numbers>

namespace dtoda
{

namespace
{

// log(s/w) for s = c w (1 + u), expanded in the decay direction.
LaurentSeries log_over_w(const LaurentSeries &s, Flavor direction, int window)
{
    const SplitForm sp = split_normalize(s, direction);
    if (sp.j != 1) {
        throw series_error("leading exponent is not 1");
    }
    const Window clip = direction == Flavor::AtInfinity ? Window{-window, 0} : Window{0, window};
    return log1p(sp.u, clip, direction) + LaurentSeries::constant(std::log(sp.c));
}

} // namespace

double GrunskyTable::symmetry_defect() const
{
    double d = 0.0;
    for (int m = -order_; m <= order_; ++m) {
        for (int n = -order_; n <= order_; ++n) {
            d = std::max(d, std::abs((*this)(m, n) - (*this)(n, m)));
        }
    }
    return d;
}

double GrunskyTable::max_difference(const GrunskyTable &a, const GrunskyTable &b)
{
    const int n0 = std::min(a.order(), b.order());
    double d = 0.0;
    for (int m = -n0; m <= n0; ++m) {
        for (int n = -n0; n <= n0; ++n) {
            d = std::max(d, std::abs(a(m, n) - b(m, n)));
        }
    }
    return d;
}

FaberPolynomial faber(const ConformalPair &pair, int n)
{
    if (n == 0) {
        return {0, true, LaurentSeries{}};
    }
    if (std::abs(n) > pair.depth()) {
        throw std::invalid_argument("faber: |n| exceeds the pair's storage depth");
    }
    if (n > 0) {
        const LaurentSeries p = int_pow(pair.g(), n, {0, n}, Flavor::AtInfinity);
        if (!p.trusted().contains(0)) {
            throw series_error("faber: g too short for the requested degree");
        }
        return {n, false, p.project({0, n})};
    }
    const LaurentSeries p = int_pow(pair.f(), n, {n, 0}, Flavor::AtZero);
    if (!p.trusted().contains(0)) {
        throw series_error("faber: f too short for the requested degree");
    }
    return {n, false, p.project({n, 0})};
}

GrunskyTable grunsky_table(const ConformalPair &pair, int order)
{
    if (order > pair.order()) {
        throw std::invalid_argument("grunsky_table: order exceeds the pair's order");
    }
    const int window = working_depth(pair.order());
    const PairPowers pw(pair, order + 1, window);
    const Window clip{-window, window};

    // gk[m] = g^(m-1) g', fk[m] = f^(-m-1) f' for m = 0..N.
    std::vector<LaurentSeries> gk;
    std::vector<LaurentSeries> fk;
    for (int m = 0; m <= order; ++m) {
        gk.push_back(mul(pw.g_pow(m - 1), pw.dg(), clip));
        fk.push_back(mul(pw.f_pow(-m - 1), pw.df(), clip));
    }

    GrunskyTable t(order);
    for (int n = 1; n <= order; ++n) {
        const double dn = n;
        const LaurentSeries pp = faber(pair, n).poly;
        const LaurentSeries pm = faber(pair, -n).poly;
        t.at(n, 0) = residue_of_product(pp, fk[0]) / dn;
        t.at(-n, 0) = -residue_of_product(pm, gk[0]) / dn;
        for (int m = 1; m <= order; ++m) {
            t.at(n, m) = residue_of_product(pp, gk[static_cast<std::size_t>(m)]) / dn;
            t.at(n, -m) = residue_of_product(pp, fk[static_cast<std::size_t>(m)]) / dn;
            t.at(-n, -m) = residue_of_product(pm, fk[static_cast<std::size_t>(m)]) / dn;
            t.at(-n, m) = residue_of_product(pm, gk[static_cast<std::size_t>(m)]) / dn;
        }
    }
    const LaurentSeries lg = log_over_w(pair.g(), Flavor::AtInfinity, window);
    const LaurentSeries lf = log_over_w(pair.f(), Flavor::AtZero, window);
    for (int m = 1; m <= order; ++m) {
        t.at(0, m) = residue_of_product(lg, gk[static_cast<std::size_t>(m)]);
        t.at(0, -m) = residue_of_product(lf, fk[static_cast<std::size_t>(m)]);
    }
    t.at(0, 0) = -std::log(pair.b());
    return t;
}

GrunskyTable grunsky_via_inverse(const ConformalPair &pair, int order, InverseSampling sampling)
{
    if (order > pair.order()) {
        throw std::invalid_argument("grunsky_via_inverse: order exceeds the pair's order");
    }
    const int depth = working_depth(pair.order());
    const LaurentSeries G = invert_function(pair.g(), depth);
    const LaurentSeries F = invert_function(pair.f(), depth);
    const int M = circle_samples_for({-order, order}, sampling.samples);
    const cplx beta = G.coeff(1);
    const cplx beta0 = G.coeff(0);
    const cplx alpha1 = F.coeff(1);

    // h[m][j]: z-coefficient m of the expanded logarithm at zeta_j.
    using Samples = std::vector<std::vector<cplx>>;
    Samples h1(static_cast<std::size_t>(order + 1), std::vector<cplx>(static_cast<std::size_t>(M)));
    Samples h2 = h1;
    Samples h3 = h1;

    for (int j = 0; j < M; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / M;
        const cplx unit = std::polar(1.0, theta);

        // (G(z) - G(zeta)) / (z - zeta) about z = infinity, zeta on |zeta| = radius_g.
        {
            const cplx zinv = 1.0 / (sampling.radius_g * unit);
            std::vector<cplx> zp(static_cast<std::size_t>(depth + 2), 1.0);
            for (std::size_t k = 1; k < zp.size(); ++k) {
                zp[k] = zp[k - 1] * zinv;
            }
            std::vector<cplx> u(static_cast<std::size_t>(order + 1));
            for (int a = 1; a <= order; ++a) {
                cplx s{};
                for (int jj = a; jj <= depth; ++jj) {
                    s -= G.coeff(-jj) * zp[static_cast<std::size_t>(jj + 1 - a)];
                }
                u[static_cast<std::size_t>(order - a)] = s / beta;
            }
            const auto us = LaurentSeries::polynomial(-order, u, Flavor::AtInfinity);
            const auto l = log1p(us, {-order, 0}, Flavor::AtInfinity);
            for (int m = 1; m <= order; ++m) {
                h1[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = l.coeff(-m);
            }
        }

        // (G(z) - F(zeta)) / z about z = infinity, zeta on |zeta| = radius_f.
        {
            const cplx zeta = sampling.radius_f * unit;
            std::vector<cplx> u(static_cast<std::size_t>(order + 1));
            u[static_cast<std::size_t>(order - 1)] = (beta0 - F.evaluate(zeta)) / beta;
            for (int a = 2; a <= order; ++a) {
                u[static_cast<std::size_t>(order - a)] = G.coeff(1 - a) / beta;
            }
            const auto us = LaurentSeries::polynomial(-order, u, Flavor::AtInfinity);
            const auto l = log1p(us, {-order, 0}, Flavor::AtInfinity);
            for (int m = 1; m <= order; ++m) {
                h2[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = l.coeff(-m);
            }
        }

        // (F(z) - F(zeta)) / (z - zeta) about z = 0.
        {
            const cplx zeta = sampling.radius_f * unit;
            std::vector<cplx> zp(static_cast<std::size_t>(depth + 1), 1.0);
            for (std::size_t k = 1; k < zp.size(); ++k) {
                zp[k] = zp[k - 1] * zeta;
            }
            std::vector<cplx> s(static_cast<std::size_t>(order + 1));
            for (int a = 0; a <= order; ++a) {
                cplx acc{};
                for (int k = a + 1; k <= depth; ++k) {
                    acc += F.coeff(k) * zp[static_cast<std::size_t>(k - 1 - a)];
                }
                s[static_cast<std::size_t>(a)] = acc;
            }
            const cplx s0 = s[0];
            std::vector<cplx> u(s.size());
            for (int a = 1; a <= order; ++a) {
                u[static_cast<std::size_t>(a)] = s[static_cast<std::size_t>(a)] / s0;
            }
            const auto us = LaurentSeries::polynomial(0, u, Flavor::AtZero);
            const auto l = log1p(us, {0, order}, Flavor::AtZero);
            h3[0][static_cast<std::size_t>(j)] = std::log(alpha1) + std::log(s0 / alpha1);
            for (int m = 1; m <= order; ++m) {
                h3[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = l.coeff(m);
            }
        }
    }

    GrunskyTable t(order);
    for (int m = 0; m <= order; ++m) {
        const auto sm = static_cast<std::size_t>(m);
        if (m >= 1) {
            const auto c1 = coefficients_from_samples(h1[sm], {-order, 0});
            const auto c2 = coefficients_from_samples(h2[sm], {0, order});
            for (int n = 1; n <= order; ++n) {
                t.at(m, n) = -c1.coeff(-n) * std::pow(sampling.radius_g, n);
            }
            for (int n = 0; n <= order; ++n) {
                t.at(m, -n) = -c2.coeff(n) / std::pow(sampling.radius_f, n);
            }
        }
        const auto c3 = coefficients_from_samples(h3[sm], {0, order});
        for (int n = 0; n <= order; ++n) {
            t.at(-m, -n) = -c3.coeff(n) / std::pow(sampling.radius_f, n);
        }
    }
    for (int m = 0; m <= order; ++m) {
        for (int n = 1; n <= order; ++n) {
            t.at(-m, n) = t(n, -m);
        }
    }
    t.at(0, 0) = std::log(beta);
    return t;
}

LaurentSeries b_polynomial(const ConformalPair &pair, const GrunskyTable &table, int n)
{
    if (n == 0) {
        throw std::invalid_argument("b_polynomial: n = 0 is the logarithm and is handled by callers");
    }
    const LaurentSeries p = faber(pair, n).poly;
    const double an = std::abs(n);
    const cplx shift = n > 0 ? -0.5 * an * table(n, 0) : 0.5 * an * table(n, 0);
    return p + LaurentSeries::constant(shift);
}

double faber_expansion_defect(const ConformalPair &pair, const GrunskyTable &table, int n)
{
    const int order = table.order();
    const int window = working_depth(pair.order());
    const PairPowers pw(pair, std::max(order, n), window);
    const double dn = n;
    const LaurentSeries pp = faber(pair, n).poly;
    const LaurentSeries pm = faber(pair, -n).poly;

    LaurentSeries r1 = pw.g_pow(n);
    LaurentSeries r2 = LaurentSeries::constant(dn * table(n, 0));
    LaurentSeries r3 = LaurentSeries::constant(-dn * table(-n, 0));
    LaurentSeries r4 = pw.f_pow(-n);
    for (int m = 1; m <= order; ++m) {
        r1 += pw.g_pow(-m) * (dn * table(n, m));
        r2 += pw.f_pow(m) * (dn * table(n, -m));
        r3 += pw.g_pow(-m) * (dn * table(-n, m));
        r4 += pw.f_pow(m) * (dn * table(-n, -m));
    }
    const Window cmp{-order, order};
    return std::max({max_abs_diff(pp, r1, {-order, n}), max_abs_diff(pp, r2, cmp), max_abs_diff(pm, r3, cmp),
                     max_abs_diff(pm, r4, cmp)});
}

} // namespace dtoda
