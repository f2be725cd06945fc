#ifndef DTODA_CONFORMAL_PAIR_HPP
#define DTODA_CONFORMAL_PAIR_HPP

#include "dtoda/series.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>

namespace dtoda
{

class pair_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Storage depth used when a caller does not pick one.
[[nodiscard]] inline int default_storage_depth(int order) { return std::max(48, 3 * order); }

// Symmetric exponent depth for intermediate products (powers, logarithms).
[[nodiscard]] inline int working_depth(int order) { return std::max(96, 6 * order); }

// The pair (g, f): g(w) = b w + b0 + b1/w + ... about infinity, f(w) = a1 w + a2 w^2 + ...
// about zero, normalized by a1 b = 1. g is stored on [-depth, 1] and f on
// [1, depth + 1]; `order` is the truncation used for tables and coordinates.
class ConformalPair
{
public:
    static constexpr double normalization_tolerance = 1e-12;

    // Validating constructor; series are clipped to the storage depth.
    static ConformalPair from_series(const LaurentSeries &g, const LaurentSeries &f, int order, int depth);
    static ConformalPair from_series(const LaurentSeries &g, const LaurentSeries &f, int order)
    {
        return from_series(g, f, order, default_storage_depth(order));
    }

    [[nodiscard]] const LaurentSeries &g() const { return g_; }
    [[nodiscard]] const LaurentSeries &f() const { return f_; }
    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] int depth() const { return depth_; }
    [[nodiscard]] cplx b() const { return g_.coeff(1); }
    [[nodiscard]] cplx a1() const { return f_.coeff(1); }
    [[nodiscard]] double normalization_defect() const { return std::abs(a1() * b() - 1.0); }

private:
    ConformalPair(LaurentSeries g, LaurentSeries f, int order, int depth)
        : g_(std::move(g)), f_(std::move(f)), order_(order), depth_(depth)
    {
    }

    LaurentSeries g_;
    LaurentSeries f_;
    int order_ = 0;
    int depth_ = 0;
};

// g^k and f^k for |k| <= max_power, clipped to [-window, window] with trust
// limited only by the pair's own truncation.
// Work window for powers up to max_power: exact polynomial tails make g^k
// reach k times their length.
[[nodiscard]] int power_window(const ConformalPair &pair, int max_power);

class PairPowers
{
public:
    PairPowers(const ConformalPair &pair, int max_power, int window);

    [[nodiscard]] int max_power() const { return max_power_; }
    [[nodiscard]] int window() const { return window_; }
    [[nodiscard]] const LaurentSeries &g_pow(int k) const { return g_[slot(k)]; }
    [[nodiscard]] const LaurentSeries &f_pow(int k) const { return f_[slot(k)]; }
    [[nodiscard]] const LaurentSeries &dg() const { return dg_; }
    [[nodiscard]] const LaurentSeries &df() const { return df_; }

private:
    [[nodiscard]] std::size_t slot(int k) const;

    int max_power_;
    int window_;
    std::vector<LaurentSeries> g_;
    std::vector<LaurentSeries> f_;
    LaurentSeries dg_;
    LaurentSeries df_;
};

// Exponent-keyed coefficients; both series are taken as exact polynomials.
[[nodiscard]] ConformalPair from_coefficients(const std::map<int, cplx> &g, const std::map<int, cplx> &f, int order);

// f(w) = 1 / conj(g(1/conj(w))). Requires real b so that a1 b = 1.
[[nodiscard]] ConformalPair sigma_conjugate(const LaurentSeries &g, int order, int depth);
[[nodiscard]] inline ConformalPair sigma_conjugate(const LaurentSeries &g, int order)
{
    return sigma_conjugate(g, order, default_storage_depth(order));
}

// g implied by f under the same reflection: g(w) = 1 / conj(f(1/conj(w))).
[[nodiscard]] LaurentSeries sigma_implied_g(const LaurentSeries &f, int depth);

// Seeded pair with |k-th tail coefficient| <= decay^k and b = 1 + small
// perturbation; real_mode keeps every coefficient real.
[[nodiscard]] ConformalPair random_pair(std::uint64_t seed, double decay, int order, bool real_mode = false);
[[nodiscard]] ConformalPair random_pair(std::uint64_t seed, double decay, int order, bool real_mode, int depth);

// Named fixtures.
[[nodiscard]] ConformalPair identity_pair(int order);
[[nodiscard]] ConformalPair sigma_fixture(int order); // g = w + 0.1/w, f = sigma_conjugate(g)

} // namespace dtoda

#endif
