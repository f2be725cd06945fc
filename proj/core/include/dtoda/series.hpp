#ifndef DTODA_SERIES_HPP
#define DTODA_SERIES_HPP

#include <algorithm>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace dtoda
{

using cplx = std::complex<double>;

// Expansion direction of a truncated series. AtInfinity series are exact
// above their stored window and decay downward (g(w) = b w + b0 + ...);
// AtZero series are exact below and decay upward (f(w) = a1 w + ...).
enum class Flavor { AtZero, AtInfinity, TwoSided };

// Closed exponent range. Used both for clipping and for reporting the
// trusted part of a series.
struct Window {
    int lo;
    int hi;

    [[nodiscard]] bool empty() const { return lo > hi; }
    [[nodiscard]] bool contains(int k) const { return lo <= k && k <= hi; }
    [[nodiscard]] int width() const { return empty() ? 0 : hi - lo + 1; }
    [[nodiscard]] Window intersect(Window o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
    [[nodiscard]] static Window symmetric(int depth) { return {-depth, depth}; }
};

class series_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Windowed truncated Laurent series over complex doubles.
//
// Entry k of the coefficient vector is the coefficient of w^(lo + k). The
// trusted range is tracked as [rel_lo, rel_hi]; a side may be "exact", in
// which case every coefficient beyond the stored window on that side is a
// true zero (finite Laurent polynomials are exact on both sides). Coefficients
// outside the trusted range are truncation artefacts and must not be compared.
class LaurentSeries
{
public:
    static constexpr int open_lo = std::numeric_limits<int>::min();
    static constexpr int open_hi = std::numeric_limits<int>::max();

    // The zero series, exact on both sides.
    LaurentSeries();

    // A series with explicit storage. exact_below / exact_above declare that
    // the true series vanishes beyond the stored window on that side;
    // otherwise the stored boundary is a truncation point.
    LaurentSeries(int lo, std::vector<cplx> coeffs, Flavor flavor, bool exact_below, bool exact_above);

    // Exact finite Laurent polynomial.
    static LaurentSeries polynomial(int lo, std::vector<cplx> coeffs, Flavor flavor = Flavor::TwoSided);
    static LaurentSeries monomial(cplx c, int k, Flavor flavor = Flavor::TwoSided);
    static LaurentSeries constant(cplx c) { return monomial(c, 0); }

    [[nodiscard]] int lo() const { return lo_; }
    [[nodiscard]] int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] Window stored() const { return {lo(), hi()}; }
    [[nodiscard]] Flavor flavor() const { return flavor_; }
    [[nodiscard]] bool exact_below() const { return rel_lo_ == open_lo; }
    [[nodiscard]] bool exact_above() const { return rel_hi_ == open_hi; }

    // Trusted exponent range clipped to the stored window.
    [[nodiscard]] Window reliable() const;
    // Trusted range including exact-zero regions beyond storage; open sides
    // are reported as open_lo / open_hi.
    [[nodiscard]] Window trusted() const { return {rel_lo_, rel_hi_}; }

    [[nodiscard]] cplx coeff(int k) const
    {
        const long idx = static_cast<long>(k) - lo_;
        if (idx < 0 || idx >= static_cast<long>(c_.size())) {
            return {};
        }
        return c_[static_cast<std::size_t>(idx)];
    }
    [[nodiscard]] std::span<const cplx> coeffs() const { return c_; }

    // Exponent of the stored coefficient of largest modulus.
    [[nodiscard]] int peak() const;

    // Pointwise evaluation of the stored coefficients.
    [[nodiscard]] cplx evaluate(cplx w) const;

    // Copy with a different flavor tag (storage and trust unchanged).
    [[nodiscard]] LaurentSeries with_flavor(Flavor f) const;
    // Restrict storage to a window; sides that are cut become truncation points
    // unless the removed coefficients were all zero.
    [[nodiscard]] LaurentSeries clip(Window w) const;
    // Keep exponents inside w but treat the result as an exact polynomial
    // (used for projections such as (A)_{>=0}).
    [[nodiscard]] LaurentSeries project(Window w) const;
    // Restrict trust to w without touching storage.
    [[nodiscard]] LaurentSeries restrict_trust(Window w) const;

    LaurentSeries &operator+=(const LaurentSeries &o);
    LaurentSeries &operator-=(const LaurentSeries &o);
    LaurentSeries &operator*=(cplx s);

    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries &b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries &b) { return a -= b; }
    friend LaurentSeries operator*(LaurentSeries a, cplx s) { return a *= s; }
    friend LaurentSeries operator*(cplx s, LaurentSeries a) { return a *= s; }
    LaurentSeries operator-() const { return *this * cplx{-1.0}; }

    // Explicit trust bounds; pass open_lo / open_hi for exact sides.
    static LaurentSeries from_parts(int lo, std::vector<cplx> coeffs, Flavor flavor, int rel_lo, int rel_hi);

private:
    void normalize_trust();

    int lo_ = 0;
    std::vector<cplx> c_;
    Flavor flavor_ = Flavor::TwoSided;
    int rel_lo_ = open_lo;
    int rel_hi_ = open_hi;
};

// Default clip window used when a caller does not supply one: wide enough to
// never bind at desk scale.
inline constexpr Window unbounded_window{-(1 << 20), 1 << 20};

// Windowed convolution. The trusted range of the result excludes every
// exponent reached at first order by either operand's truncated tail paired
// with the partner's exact boundary (or, for a decaying partner, its dominant
// coefficient).
[[nodiscard]] LaurentSeries mul(const LaurentSeries &a, const LaurentSeries &b, Window clip = unbounded_window);

// Trusted range mul(a, b) would report, without forming the product.
[[nodiscard]] Window product_trust(const LaurentSeries &a, const LaurentSeries &b);

// Coefficient of w^-1 in a*b, computed as a single dot product. Throws if
// that coefficient would not be trusted.
[[nodiscard]] cplx residue_of_product(const LaurentSeries &a, const LaurentSeries &b);

struct SplitForm {
    cplx c;
    int j;
    LaurentSeries u;
};

// a = c w^j (1 + u) with u strictly decaying in the expansion direction.
// TwoSided series must pass an explicit direction.
[[nodiscard]] SplitForm split_normalize(const LaurentSeries &a);
[[nodiscard]] SplitForm split_normalize(const LaurentSeries &a, Flavor direction);

// (1 + u)^-1 for u strictly decaying in `direction`, truncated to `clip`
// (exponents relative to the unit leading term).
[[nodiscard]] LaurentSeries reciprocal_one_plus(const LaurentSeries &u, Flavor direction, Window clip);

[[nodiscard]] LaurentSeries int_pow(const LaurentSeries &a, int k, Window clip = unbounded_window);
[[nodiscard]] LaurentSeries int_pow(const LaurentSeries &a, int k, Window clip, Flavor direction);

// log(1 + u) for u with zero constant term, decaying in `direction`.
[[nodiscard]] LaurentSeries log1p(const LaurentSeries &u, Window clip);
[[nodiscard]] LaurentSeries log1p(const LaurentSeries &u, Window clip, Flavor direction);

[[nodiscard]] LaurentSeries derivative(const LaurentSeries &a);
[[nodiscard]] inline cplx residue(const LaurentSeries &a) { return a.coeff(-1); }
[[nodiscard]] inline cplx coeff(const LaurentSeries &a, int k) { return a.coeff(k); }

// a(b(z)) for a AtInfinity (exponents <= 1) with b AtInfinity, or a AtZero
// (exponents >= 0) with b AtZero.
[[nodiscard]] LaurentSeries compose(const LaurentSeries &a, const LaurentSeries &b, Window clip);

// Functional inverse by Newton iteration on series. AtInfinity input
// b w + b0 + ... gives G(z) = z/b + ...; AtZero input a1 w + ... gives
// F(z) = z/a1 + ....
[[nodiscard]] LaurentSeries invert_function(const LaurentSeries &a, int depth);

inline constexpr int default_circle_samples = 1024;

// Smallest admissible power-of-two sample count for a given window.
[[nodiscard]] int circle_samples_for(Window w, int requested = default_circle_samples);

// Values of a at the M-th roots of unity.
[[nodiscard]] std::vector<cplx> sample_on_circle(const LaurentSeries &a, int samples);
// Coefficients in `window` recovered from M equispaced samples on |w| = 1.
[[nodiscard]] LaurentSeries coefficients_from_samples(std::span<const cplx> values, Window window);

// num/den computed pointwise on the unit circle.
[[nodiscard]] LaurentSeries divide_on_circle(const LaurentSeries &num, const LaurentSeries &den, Window window,
                                             int samples = default_circle_samples);
// Product computed pointwise on the unit circle (cross-check for mul).
[[nodiscard]] LaurentSeries mul_on_circle(const LaurentSeries &a, const LaurentSeries &b, Window window,
                                          int samples = default_circle_samples);

// Largest |coefficient| over the intersection of the trusted range and w.
[[nodiscard]] double max_abs_on(const LaurentSeries &a, Window w);
// Largest |a_k - b_k| over the common trusted range intersected with w.
[[nodiscard]] double max_abs_diff(const LaurentSeries &a, const LaurentSeries &b, Window w = unbounded_window);

std::string to_string(const LaurentSeries &a);

} // namespace dtoda

#endif
