#include "dtoda/conformal_pair.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace dtoda
{

namespace
{

// conj(a(1/conj(w))): conjugate coefficients and reflect exponents.
LaurentSeries reflect_conjugate(const LaurentSeries &a, Flavor flavor)
{
    std::vector<cplx> v;
    v.reserve(a.coeffs().size());
    for (int k = a.hi(); k >= a.lo(); --k) {
        v.push_back(std::conj(a.coeff(k)));
    }
    const Window t = a.trusted();
    const int rlo = t.hi == LaurentSeries::open_hi ? LaurentSeries::open_lo : -t.hi;
    const int rhi = t.lo == LaurentSeries::open_lo ? LaurentSeries::open_hi : -t.lo;
    return LaurentSeries::from_parts(-a.hi(), std::move(v), flavor, rlo, rhi);
}

// Uniform double in [0, 1) from the top 53 bits; reproducible across platforms.
double unit(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

ConformalPair ConformalPair::from_series(const LaurentSeries &g, const LaurentSeries &f, int order, int depth)
{
    if (order < 0 || depth < order) {
        throw pair_error("order must satisfy 0 <= order <= depth");
    }
    for (int k = std::max(2, g.lo()); k <= g.hi(); ++k) {
        if (g.coeff(k) != cplx{}) {
            throw pair_error("g has powers above w^1");
        }
    }
    if (f.coeff(0) != cplx{}) {
        throw pair_error("f(0) ≠ 0");
    }
    for (int k = f.lo(); k < 0; ++k) {
        if (f.coeff(k) != cplx{}) {
            throw pair_error("f has negative powers");
        }
    }
    const cplx b = g.coeff(1);
    const cplx a1 = f.coeff(1);
    if (b == cplx{} || a1 == cplx{}) {
        throw pair_error("vanishing leading coefficient");
    }
    if (std::abs(a1 * b - 1.0) > normalization_tolerance) {
        throw pair_error("a1·b ≠ 1");
    }
    LaurentSeries gs = g.clip({-depth, 1}).with_flavor(Flavor::AtInfinity);
    LaurentSeries fs = f.clip({1, depth + 1}).with_flavor(Flavor::AtZero);
    return {std::move(gs), std::move(fs), order, depth};
}

ConformalPair from_coefficients(const std::map<int, cplx> &g, const std::map<int, cplx> &f, int order)
{
    auto build = [](const std::map<int, cplx> &m, Flavor flavor) {
        if (m.empty()) {
            return LaurentSeries::polynomial(1, {cplx{}}, flavor);
        }
        const int lo = m.begin()->first;
        const int hi = m.rbegin()->first;
        std::vector<cplx> v(static_cast<std::size_t>(hi - lo + 1));
        for (const auto &[k, c] : m) {
            v[static_cast<std::size_t>(k - lo)] = c;
        }
        return LaurentSeries::polynomial(lo, std::move(v), flavor);
    };
    return ConformalPair::from_series(build(g, Flavor::AtInfinity), build(f, Flavor::AtZero), order);
}

int power_window(const ConformalPair &pair, int max_power)
{
    const int g_span = pair.g().exact_below() ? 1 - pair.g().lo() : 0;
    const int f_span = pair.f().exact_above() ? pair.f().hi() - 1 : 0;
    const int base = std::max(working_depth(pair.order()), max_power + pair.order());
    return base + max_power * std::max(g_span, f_span);
}

ConformalPair sigma_conjugate(const LaurentSeries &g, int order, int depth)
{
    const cplx b = g.coeff(1);
    if (std::abs(b) < 1e-300) {
        throw series_error("non-invertible leading term");
    }
    if (b.imag() != 0.0) {
        throw pair_error("sigma_conjugate needs real b (a1·b ≠ 1 otherwise)");
    }
    const LaurentSeries h = reflect_conjugate(g.clip({-depth, 1}), Flavor::AtZero);
    const LaurentSeries f = int_pow(h, -1, {1, depth + 1}, Flavor::AtZero);
    return ConformalPair::from_series(g, f, order, depth);
}

LaurentSeries sigma_implied_g(const LaurentSeries &f, int depth)
{
    const LaurentSeries h = reflect_conjugate(f.clip({1, depth + 1}), Flavor::AtInfinity);
    return int_pow(h, -1, {-depth, 1}, Flavor::AtInfinity);
}

ConformalPair random_pair(std::uint64_t seed, double decay, int order, bool real_mode)
{
    return random_pair(seed, decay, order, real_mode, default_storage_depth(order));
}

ConformalPair random_pair(std::uint64_t seed, double decay, int order, bool real_mode, int depth)
{
    if (!(decay >= 0.0 && decay < 1.0)) {
        throw pair_error("decay must lie in [0, 1)");
    }
    std::mt19937_64 rng(seed);
    auto draw = [&](double bound) -> cplx {
        const double r = bound * unit(rng);
        const double u = unit(rng);
        if (real_mode) {
            return u < 0.5 ? -r : r;
        }
        const double phase = 2.0 * std::numbers::pi * u;
        return std::polar(r, phase);
    };
    const double db_re = 0.1 * (unit(rng) - 0.5);
    const double db_im = 0.1 * (unit(rng) - 0.5);
    const cplx b = real_mode ? cplx{1.0 + db_re} : cplx{1.0 + db_re, db_im};

    // g = b w + sum_{k=1..order} c_k w^(1-k), f = w/b + sum_{k=1..order} d_k w^(1+k).
    std::vector<cplx> gv(static_cast<std::size_t>(order + 1));
    std::vector<cplx> fv(static_cast<std::size_t>(order + 1));
    gv[static_cast<std::size_t>(order)] = b;
    fv[0] = 1.0 / b;
    double bound = 1.0;
    for (int k = 1; k <= order; ++k) {
        bound *= decay;
        gv[static_cast<std::size_t>(order - k)] = draw(bound);
        fv[static_cast<std::size_t>(k)] = draw(bound);
    }
    const auto g = LaurentSeries::polynomial(1 - order, std::move(gv), Flavor::AtInfinity);
    const auto f = LaurentSeries::polynomial(1, std::move(fv), Flavor::AtZero);
    return ConformalPair::from_series(g, f, order, depth);
}

PairPowers::PairPowers(const ConformalPair &pair, int max_power, int window)
    : max_power_(max_power), window_(window), dg_(derivative(pair.g())), df_(derivative(pair.f()))
{
    const Window w{-window, window};
    // Each power is its neighbour times g or 1/g; the chain costs one product per power.
    auto chain = [&](const LaurentSeries &s, Flavor dir, std::vector<LaurentSeries> &out) {
        out.assign(static_cast<std::size_t>(2 * max_power + 1), LaurentSeries{});
        const auto at = [&](int k) -> LaurentSeries & { return out[static_cast<std::size_t>(k + max_power)]; };
        at(0) = LaurentSeries::constant(1.0).with_flavor(dir);
        if (max_power == 0) {
            return;
        }
        const LaurentSeries base = s.clip(w).with_flavor(dir);
        const LaurentSeries inv = int_pow(s, -1, w, dir);
        at(1) = base;
        at(-1) = inv;
        for (int k = 2; k <= max_power; ++k) {
            at(k) = mul(at(k - 1), base, w).with_flavor(dir);
            at(-k) = mul(at(-k + 1), inv, w).with_flavor(dir);
        }
    };
    chain(pair.g(), Flavor::AtInfinity, g_);
    chain(pair.f(), Flavor::AtZero, f_);
}

std::size_t PairPowers::slot(int k) const
{
    if (k < -max_power_ || k > max_power_) {
        throw std::out_of_range("power outside PairPowers range");
    }
    return static_cast<std::size_t>(k + max_power_);
}

ConformalPair identity_pair(int order)
{
    return ConformalPair::from_series(LaurentSeries::monomial(1.0, 1, Flavor::AtInfinity),
                                      LaurentSeries::monomial(1.0, 1, Flavor::AtZero), order);
}

ConformalPair sigma_fixture(int order)
{
    const auto g = LaurentSeries::polynomial(-1, {0.1, 0.0, 1.0}, Flavor::AtInfinity);
    return sigma_conjugate(g, order);
}

} // namespace dtoda
