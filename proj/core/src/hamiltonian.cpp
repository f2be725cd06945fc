#include "dtoda/hamiltonian.hpp"

#include <cmath>
#include <cstdlib>

namespace dtoda
{

// ---------------------------------------------------------------------------
// MonomialSum

void MonomialSum::add(int e1, int e2, cplx c)
{
    if (c == cplx{}) {
        return;
    }
    const Key k{e1, e2};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second == cplx{}) {
        terms_.erase(it);
    }
}

cplx MonomialSum::coeff(int e1, int e2) const
{
    const auto it = terms_.find({e1, e2});
    return it == terms_.end() ? cplx{} : it->second;
}

MonomialSum MonomialSum::d_z1() const
{
    MonomialSum r;
    for (const auto &[k, c] : terms_) {
        r.add(k.first - 1, k.second, c * static_cast<double>(k.first));
    }
    return r;
}

MonomialSum MonomialSum::d_z2() const
{
    MonomialSum r;
    for (const auto &[k, c] : terms_) {
        r.add(k.first, k.second - 1, c * static_cast<double>(k.second));
    }
    return r;
}

namespace
{

cplx ipow(cplx z, int k)
{
    cplx r{1.0};
    const cplx base = k < 0 ? cplx{1.0} / z : z;
    for (int i = 0; i < std::abs(k); ++i) {
        r *= base;
    }
    return r;
}

} // namespace

cplx MonomialSum::evaluate(cplx z1, cplx z2) const
{
    cplx s{};
    for (const auto &[k, c] : terms_) {
        s += c * ipow(z1, k.first) * ipow(z2, k.second);
    }
    return s;
}

int MonomialSum::max_abs_exponent() const
{
    int m = 0;
    for (const auto &[k, c] : terms_) {
        m = std::max({m, std::abs(k.first), std::abs(k.second)});
    }
    return m;
}

MonomialSum &MonomialSum::operator+=(const MonomialSum &o)
{
    for (const auto &[k, c] : o.terms_) {
        add(k.first, k.second, c);
    }
    return *this;
}

MonomialSum &MonomialSum::operator*=(cplx s)
{
    if (s == cplx{}) {
        terms_.clear();
        return *this;
    }
    for (auto &[k, c] : terms_) {
        c *= s;
    }
    return *this;
}

double MonomialSum::max_difference(const MonomialSum &a, const MonomialSum &b)
{
    double d = 0.0;
    for (const auto &[k, c] : a.terms_) {
        d = std::max(d, std::abs(c - b.coeff(k.first, k.second)));
    }
    for (const auto &[k, c] : b.terms_) {
        d = std::max(d, std::abs(c - a.coeff(k.first, k.second)));
    }
    return d;
}

// ---------------------------------------------------------------------------
// Hamiltonian

namespace
{

void check_admissible(const std::vector<HamiltonianTerm> &terms)
{
    for (const auto &a : terms) {
        for (const auto &b : terms) {
            if (b.mu * b.nu == 0) {
                continue; // the primed term carries d12 and vanishes here
            }
            if (a.mu + b.mu == 0 || a.nu + b.nu == 0) {
                throw hamiltonian_error("log obstruction in J construction");
            }
        }
    }
}

} // namespace

Hamiltonian::Hamiltonian(std::vector<HamiltonianTerm> terms, std::vector<GaugeTerm> gauge)
    : terms_(std::move(terms)), gauge_(std::move(gauge))
{
    for (const auto &t : terms_) {
        if (t.mu == 0 || t.nu == 0) {
            throw hamiltonian_error("Hamiltonian exponents mu and nu must be nonzero");
        }
    }
    for (const auto &g : gauge_) {
        if (g.exponent == 0) {
            throw hamiltonian_error("gauge exponent must be nonzero");
        }
    }
    if (partials(*this).d12.empty()) {
        throw hamiltonian_error("d²H/dz1dz2 vanishes identically");
    }
    check_admissible(all_terms());
}

Hamiltonian Hamiltonian::with_gauge(const std::vector<GaugeTerm> &extra) const
{
    std::vector<GaugeTerm> g = gauge_;
    g.insert(g.end(), extra.begin(), extra.end());
    return Hamiltonian(terms_, std::move(g));
}

std::vector<HamiltonianTerm> Hamiltonian::all_terms() const
{
    std::vector<HamiltonianTerm> all = terms_;
    for (const auto &g : gauge_) {
        if (g.variable == GaugeVariable::z1) {
            all.push_back({g.exponent, 0, g.c});
        } else {
            all.push_back({0, -g.exponent, g.c});
        }
    }
    return all;
}

MonomialSum Hamiltonian::as_sum() const
{
    MonomialSum s;
    for (const auto &t : all_terms()) {
        s.add(t.mu, -t.nu, t.c);
    }
    return s;
}

bool Hamiltonian::real_on_real() const
{
    for (const auto &t : all_terms()) {
        if (t.c.imag() != 0.0) {
            return false;
        }
    }
    return true;
}

Partials partials(const Hamiltonian &h)
{
    Partials p;
    p.h = h.as_sum();
    p.d1 = p.h.d_z1();
    p.d2 = p.h.d_z2();
    p.d12 = p.d1.d_z2();
    p.d11 = p.d1.d_z1();
    p.d22 = p.d2.d_z2();
    return p;
}

JPair j_pair(const Hamiltonian &h)
{
    const auto terms = h.all_terms();
    check_admissible(terms);
    JPair j;
    for (const auto &a : terms) {
        for (const auto &b : terms) {
            const double w = static_cast<double>(b.mu) * b.nu;
            if (w == 0.0) {
                continue;
            }
            const cplx cc = a.c * b.c;
            j.j2.add(a.mu + b.mu, -a.nu - b.nu - 1, cc * (-w / (a.mu + b.mu)));
            j.j1.add(a.mu + b.mu - 1, -a.nu - b.nu, cc * (-w / (a.nu + b.nu)));
        }
    }
    return j;
}

LaurentSeries eval_along(const MonomialSum &s, const PairPowers &powers, Window window)
{
    LaurentSeries acc = LaurentSeries::constant(0.0);
    for (const auto &[k, c] : s.terms()) {
        LaurentSeries term;
        if (k.second == 0) {
            term = powers.g_pow(k.first);
        } else if (k.first == 0) {
            term = powers.f_pow(k.second);
        } else {
            term = mul(powers.g_pow(k.first), powers.f_pow(k.second), window);
        }
        acc += term * c;
    }
    if (acc.lo() < window.lo || acc.hi() > window.hi) {
        acc = acc.clip(window);
    }
    return acc.with_flavor(Flavor::TwoSided);
}

LaurentSeries eval_along(const MonomialSum &s, const ConformalPair &pair, Window window)
{
    const int w = std::max(std::abs(window.lo), std::abs(window.hi));
    const PairPowers powers(pair, s.max_abs_exponent(), w);
    return eval_along(s, powers, window);
}

GaugeShift gauge_shift_constants(const std::vector<GaugeTerm> &gauge, int order)
{
    GaugeShift s;
    for (int n = -order; n <= order; ++n) {
        s.c[n] = 0.0;
        if (n != 0) {
            s.d[n] = 0.0;
        }
    }
    for (const auto &g : gauge) {
        const int k = g.exponent;
        const double dk = k;
        if (g.variable == GaugeVariable::z1) {
            // dH1 = c k z1^(k-1): t_k += c (k >= 1), v_{-k} += c k (k <= -1).
            if (k >= 1 && k <= order) {
                s.c[k] += g.c;
            }
            if (k <= -1 && -k <= order) {
                s.d[-k] += g.c * dk;
            }
        } else {
            // dH2 = c k z2^(k-1): t_k += -c (k <= -1), v_{-k} += c k (k >= 1).
            if (k <= -1 && -k <= order) {
                s.c[k] -= g.c;
            }
            if (k >= 1 && k <= order) {
                s.d[-k] += g.c * dk;
            }
        }
    }
    s.v0_shift = 0.0;
    return s;
}

} // namespace dtoda
