#include "dtoda/reductions.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace dtoda
{

namespace
{

// z^-m coefficients (m = 1..order) of log(1 + sum_a u[a] z^-a).
std::vector<cplx> log1p_at_infinity(const std::vector<cplx> &u, int order)
{
    std::vector<cplx> rev(static_cast<std::size_t>(order + 1));
    for (int a = 1; a <= order; ++a) {
        rev[static_cast<std::size_t>(order - a)] = u[static_cast<std::size_t>(a)];
    }
    const auto us = LaurentSeries::polynomial(-order, rev, Flavor::AtInfinity);
    const auto l = log1p(us, {-order, 0}, Flavor::AtInfinity);
    std::vector<cplx> out(static_cast<std::size_t>(order + 1));
    for (int m = 1; m <= order; ++m) {
        out[static_cast<std::size_t>(m)] = l.coeff(-m);
    }
    return out;
}

} // namespace

bool sigma_admissible(const Hamiltonian &h)
{
    const MonomialSum s = h.as_sum();
    for (const auto &[k, c] : s.terms()) {
        // (mu, nu) is stored as (e1, e2) = (mu, -nu); the partner is (nu, -mu).
        if (std::abs(s.coeff(-k.second, -k.first) - std::conj(c)) > 1e-15 * std::max(1.0, std::abs(c))) {
            return false;
        }
    }
    return true;
}

SigmaDefects sigma_coordinate_check(const LaurentSeries &g, const Hamiltonian &h, int order)
{
    if (!sigma_admissible(h)) {
        throw reduction_error("H not Σ-admissible");
    }
    const ConformalPair pair = sigma_conjugate(g, order);
    const TodaCoordinates c = coordinates(pair, h, order);
    SigmaDefects d;
    for (int n = 1; n <= order; ++n) {
        d.t_pairs = std::max(d.t_pairs, std::abs(c.t.at(-n) + std::conj(c.t.at(n))));
        d.v_pairs = std::max(d.v_pairs, std::abs(c.v.at(-n) + std::conj(c.v.at(n))));
    }
    d.t0_imag = std::abs(c.t.at(0).imag());
    d.v0_imag = std::abs(c.v0.imag());
    return d;
}

double GreenCoefficients::hermitian_defect() const
{
    double d = 0.0;
    for (int m = 0; m <= order_; ++m) {
        for (int n = 0; n <= order_; ++n) {
            d = std::max(d, std::abs(mixed(m, n) - std::conj(mixed(n, m))));
        }
    }
    return d;
}

void GreenCoefficients::write_csv(std::ostream &out) const
{
    const auto old = out.precision(17);
    out << "block,m,n,re,im\n";
    for (int m = 0; m <= order_; ++m) {
        for (int n = 0; n <= order_; ++n) {
            const cplx v = mixed(m, n);
            out << "mixed," << m << ',' << n << ',' << v.real() << ',' << v.imag() << '\n';
        }
    }
    for (int m = 1; m <= order_; ++m) {
        for (int n = 1; n <= order_; ++n) {
            const cplx v = holo(m, n);
            out << "holo," << m << ',' << n << ',' << v.real() << ',' << v.imag() << '\n';
        }
    }
    out.precision(old);
}

GreenCoefficients green_coefficients(const LaurentSeries &g, int order, InverseSampling sampling)
{
    const int depth = std::max(working_depth(order), 1 - g.lo());
    const LaurentSeries G = invert_function(g.with_flavor(Flavor::AtInfinity), depth);
    const cplx beta = G.coeff(1);
    const cplx beta0 = G.coeff(0);
    const cplx log_beta = std::log(beta);
    const double r = sampling.radius_g;
    const int M = circle_samples_for({-order, order}, sampling.samples);

    // a[m][j]: z1^-m coefficient of log((G(z1) - G(z2)) / (z1 - z2)) at z2 = zeta_j;
    // c[m][j]: same for log((G(z1) conj G(z2) - 1) / (z1 conj z2)).
    using Samples = std::vector<std::vector<cplx>>;
    Samples a(static_cast<std::size_t>(order + 1), std::vector<cplx>(static_cast<std::size_t>(M)));
    Samples c = a;

    for (int j = 0; j < M; ++j) {
        const cplx zeta = std::polar(r, 2.0 * std::numbers::pi * j / M);
        const cplx zinv = 1.0 / zeta;
        std::vector<cplx> zp(static_cast<std::size_t>(depth + 2), 1.0);
        for (std::size_t k = 1; k < zp.size(); ++k) {
            zp[k] = zp[k - 1] * zinv;
        }

        std::vector<cplx> u(static_cast<std::size_t>(order + 1));
        for (int p = 1; p <= order; ++p) {
            cplx s{};
            for (int k = p; k <= depth; ++k) {
                s -= G.coeff(-k) * zp[static_cast<std::size_t>(k + 1 - p)];
            }
            u[static_cast<std::size_t>(p)] = s / beta;
        }
        const auto la = log1p_at_infinity(u, order);

        const cplx gz = G.evaluate(zeta);
        const cplx gamma = std::conj(gz);
        std::fill(u.begin(), u.end(), cplx{});
        if (order >= 1) {
            u[1] = (beta0 - 1.0 / gamma) / beta;
        }
        for (int p = 2; p <= order; ++p) {
            u[static_cast<std::size_t>(p)] = G.coeff(1 - p) / beta;
        }
        const auto lc = log1p_at_infinity(u, order);

        a[0][static_cast<std::size_t>(j)] = log_beta;
        c[0][static_cast<std::size_t>(j)] = log_beta + std::conj(log_beta + std::log(gz / (beta * zeta)));
        for (int m = 1; m <= order; ++m) {
            a[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = la[static_cast<std::size_t>(m)];
            c[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = lc[static_cast<std::size_t>(m)];
        }
    }

    GreenCoefficients out(order);
    for (int m = 0; m <= order; ++m) {
        const auto sm = static_cast<std::size_t>(m);
        // a depends on z2 through z2^-n, c through conj(z2)^-n = r^-n e^{i n theta}.
        const auto ca = coefficients_from_samples(a[sm], {-order, 0});
        const auto cc = coefficients_from_samples(c[sm], {0, order});
        for (int n = 0; n <= order; ++n) {
            const double rn = std::pow(r, n);
            if (m >= 1 && n >= 1) {
                out.holo_at(m, n) = 0.5 * ca.coeff(-n) * rn;
            }
            out.mixed_at(m, n) = -0.5 * cc.coeff(n) * rn;
        }
        if (m == 0) {
            out.mixed_at(0, 0) = ca.coeff(0).real() - cc.coeff(0).real();
        }
    }
    return out;
}

GreenCoefficients green_from_table(const GrunskyTable &t)
{
    const int order = t.order();
    GreenCoefficients out(order);
    out.mixed_at(0, 0) = -t.b00();
    for (int m = 1; m <= order; ++m) {
        out.mixed_at(m, 0) = 0.5 * t(m, 0);
        out.mixed_at(0, m) = -0.5 * t(-m, 0);
        for (int n = 1; n <= order; ++n) {
            out.mixed_at(m, n) = 0.5 * t(m, -n);
            out.holo_at(m, n) = -0.5 * t(m, n);
        }
    }
    return out;
}

double green_identity_check(const LaurentSeries &g, const Hamiltonian &h, int order)
{
    if (!sigma_admissible(h)) {
        throw reduction_error("H not Σ-admissible");
    }
    const ConformalPair pair = sigma_conjugate(g, order);
    const GrunskyTable t = grunsky_table(pair, order);
    const GreenCoefficients lhs = green_coefficients(g, order);
    const GreenCoefficients rhs = green_from_table(t);

    double d = 0.0;
    for (int m = 0; m <= order; ++m) {
        for (int n = 0; n <= order; ++n) {
            d = std::max(d, std::abs(lhs.mixed(m, n) - rhs.mixed(m, n)));
            // conj block: coefficient of conj(z1)^-m z2^-n.
            cplx conj_block;
            if (m == 0 && n == 0) {
                conj_block = -t.b00();
            } else if (n == 0) {
                conj_block = -0.5 * t(-m, 0);
            } else if (m == 0) {
                conj_block = 0.5 * t(n, 0);
            } else {
                conj_block = 0.5 * t(n, -m);
            }
            d = std::max(d, std::abs(std::conj(lhs.mixed(m, n)) - conj_block));
            if (m >= 1 && n >= 1) {
                d = std::max(d, std::abs(lhs.holo(m, n) - rhs.holo(m, n)));
                d = std::max(d, std::abs(std::conj(lhs.holo(m, n)) + 0.5 * t(-m, -n)));
            }
        }
    }
    return d;
}

double real_subspace_check(const ConformalPair &pair, const Hamiltonian &h, int order)
{
    const TodaCoordinates c = coordinates(pair, h, order);
    double m = std::max(std::abs(c.v0.imag()), std::abs(c.log_t.imag()));
    for (const auto &[n, t] : c.t) {
        m = std::max(m, std::abs(t.imag()));
    }
    for (const auto &[n, v] : c.v) {
        m = std::max(m, std::abs(v.imag()));
    }
    return m;
}

} // namespace dtoda
