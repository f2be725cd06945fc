#include "dtoda/series.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <mutex>
#include <optional>
#include <sstream>

namespace dtoda
{

namespace
{

constexpr int open_lo = LaurentSeries::open_lo;
constexpr int open_hi = LaurentSeries::open_hi;

bool is_open_lo(int r) { return r == open_lo; }
bool is_open_hi(int r) { return r == open_hi; }

Flavor combine_flavor(const LaurentSeries &a, const LaurentSeries &b)
{
    if (a.flavor() == b.flavor()) {
        return a.flavor();
    }
    const bool a_poly = a.exact_below() && a.exact_above();
    const bool b_poly = b.exact_below() && b.exact_above();
    if (a.flavor() == Flavor::TwoSided && a_poly) {
        return b.flavor();
    }
    if (b.flavor() == Flavor::TwoSided && b_poly) {
        return a.flavor();
    }
    return Flavor::TwoSided;
}

cplx cpow_int(cplx c, int k)
{
    if (k < 0) {
        return cplx{1.0} / cpow_int(c, -k);
    }
    cplx r{1.0};
    cplx base = c;
    while (k > 0) {
        if (k & 1) {
            r *= base;
        }
        base *= base;
        k >>= 1;
    }
    return r;
}

// Shift exponents by s and scale by c, keeping trust.
LaurentSeries shift_scale(const LaurentSeries &a, int s, cplx c, Flavor flavor)
{
    std::vector<cplx> v(a.coeffs().begin(), a.coeffs().end());
    for (auto &x : v) {
        x *= c;
    }
    const Window t = a.trusted();
    const int rlo = is_open_lo(t.lo) ? open_lo : t.lo + s;
    const int rhi = is_open_hi(t.hi) ? open_hi : t.hi + s;
    return LaurentSeries::from_parts(a.lo() + s, std::move(v), flavor, rlo, rhi);
}

std::mutex &fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

// In-place DFT of length n; sign is FFTW_FORWARD or FFTW_BACKWARD.
void dft(std::vector<cplx> &data, int sign)
{
    const int n = static_cast<int>(data.size());
    auto *buf = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_plan plan{};
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
    }
    for (int i = 0; i < n; ++i) {
        buf[i][0] = data[static_cast<std::size_t>(i)].real();
        buf[i][1] = data[static_cast<std::size_t>(i)].imag();
    }
    fftw_execute(plan);
    for (int i = 0; i < n; ++i) {
        data[static_cast<std::size_t>(i)] = {buf[i][0], buf[i][1]};
    }
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);
}

constexpr int max_reciprocal_depth = 1 << 16;

// Operands at least this long are multiplied through the FFT.
constexpr std::size_t fft_mul_threshold = 128;

std::vector<cplx> fft_convolve(std::span<const cplx> a, std::span<const cplx> b)
{
    const std::size_t n = a.size() + b.size() - 1;
    std::size_t m = 1;
    while (m < n) {
        m <<= 1;
    }
    std::vector<cplx> fa(m);
    std::vector<cplx> fb(m);
    std::copy(a.begin(), a.end(), fa.begin());
    std::copy(b.begin(), b.end(), fb.begin());
    dft(fa, FFTW_FORWARD);
    dft(fb, FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        fa[i] *= fb[i] * scale;
    }
    dft(fa, FFTW_BACKWARD);
    fa.resize(n);
    return fa;
}

int positive_mod(long k, int m)
{
    const long r = k % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

} // namespace

// ---------------------------------------------------------------------------
// LaurentSeries

LaurentSeries::LaurentSeries() : c_{cplx{}} {}

LaurentSeries::LaurentSeries(int lo, std::vector<cplx> coeffs, Flavor flavor, bool exact_below, bool exact_above)
    : lo_(lo), c_(std::move(coeffs)), flavor_(flavor)
{
    if (c_.empty()) {
        c_.push_back({});
    }
    rel_lo_ = exact_below ? open_lo : lo_;
    rel_hi_ = exact_above ? open_hi : hi();
}

LaurentSeries LaurentSeries::from_parts(int lo, std::vector<cplx> coeffs, Flavor flavor, int rel_lo, int rel_hi)
{
    LaurentSeries s;
    s.lo_ = lo;
    s.c_ = std::move(coeffs);
    if (s.c_.empty()) {
        s.c_.push_back({});
    }
    s.flavor_ = flavor;
    s.rel_lo_ = rel_lo;
    s.rel_hi_ = rel_hi;
    s.normalize_trust();
    return s;
}

void LaurentSeries::normalize_trust()
{
    if (!is_open_lo(rel_lo_)) {
        rel_lo_ = std::max(rel_lo_, lo_);
    }
    if (!is_open_hi(rel_hi_)) {
        rel_hi_ = std::min(rel_hi_, hi());
    }
}

LaurentSeries LaurentSeries::polynomial(int lo, std::vector<cplx> coeffs, Flavor flavor)
{
    return {lo, std::move(coeffs), flavor, true, true};
}

LaurentSeries LaurentSeries::monomial(cplx c, int k, Flavor flavor) { return polynomial(k, {c}, flavor); }

Window LaurentSeries::reliable() const
{
    return {is_open_lo(rel_lo_) ? lo() : rel_lo_, is_open_hi(rel_hi_) ? hi() : rel_hi_};
}

int LaurentSeries::peak() const
{
    std::size_t best = 0;
    double m = -1.0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const double a = std::abs(c_[i]);
        if (a > m) {
            m = a;
            best = i;
        }
    }
    return lo_ + static_cast<int>(best);
}

cplx LaurentSeries::evaluate(cplx w) const
{
    // Horner from the top, then scale by w^lo.
    cplx acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * w + *it;
    }
    return acc * cpow_int(w, lo_);
}

LaurentSeries LaurentSeries::with_flavor(Flavor f) const
{
    LaurentSeries s = *this;
    s.flavor_ = f;
    return s;
}

LaurentSeries LaurentSeries::clip(Window w) const
{
    const int nlo = std::max(lo(), w.lo);
    const int nhi = std::min(hi(), w.hi);
    if (nlo > nhi) {
        throw series_error("window underflow");
    }
    bool cut_below = false;
    for (int k = lo(); k < nlo; ++k) {
        cut_below = cut_below || coeff(k) != cplx{};
    }
    bool cut_above = false;
    for (int k = nhi + 1; k <= hi(); ++k) {
        cut_above = cut_above || coeff(k) != cplx{};
    }
    std::vector<cplx> v(c_.begin() + (nlo - lo()), c_.begin() + (nhi - lo() + 1));
    int rlo = rel_lo_;
    int rhi = rel_hi_;
    if (cut_below) {
        rlo = is_open_lo(rlo) ? nlo : std::max(rlo, nlo);
    }
    if (cut_above) {
        rhi = is_open_hi(rhi) ? nhi : std::min(rhi, nhi);
    }
    return from_parts(nlo, std::move(v), flavor_, rlo, rhi);
}

LaurentSeries LaurentSeries::project(Window w) const
{
    const int nlo = std::max(lo(), w.lo);
    const int nhi = std::min(hi(), w.hi);
    if (nlo > nhi) {
        return polynomial(0, {cplx{}}, flavor_);
    }
    std::vector<cplx> v(c_.begin() + (nlo - lo()), c_.begin() + (nhi - lo() + 1));
    return polynomial(nlo, std::move(v), flavor_);
}

LaurentSeries LaurentSeries::restrict_trust(Window w) const
{
    LaurentSeries s = *this;
    s.rel_lo_ = is_open_lo(s.rel_lo_) ? w.lo : std::max(s.rel_lo_, w.lo);
    s.rel_hi_ = is_open_hi(s.rel_hi_) ? w.hi : std::min(s.rel_hi_, w.hi);
    s.normalize_trust();
    return s;
}

LaurentSeries &LaurentSeries::operator+=(const LaurentSeries &o)
{
    const Flavor fl = combine_flavor(*this, o);
    const int nlo = std::min(lo(), o.lo());
    const int nhi = std::max(hi(), o.hi());
    std::vector<cplx> v(static_cast<std::size_t>(nhi - nlo + 1));
    for (int k = nlo; k <= nhi; ++k) {
        v[static_cast<std::size_t>(k - nlo)] = coeff(k) + o.coeff(k);
    }
    int rlo = open_lo;
    if (!is_open_lo(rel_lo_)) {
        rlo = rel_lo_;
    }
    if (!is_open_lo(o.rel_lo_)) {
        rlo = is_open_lo(rlo) ? o.rel_lo_ : std::max(rlo, o.rel_lo_);
    }
    int rhi = open_hi;
    if (!is_open_hi(rel_hi_)) {
        rhi = rel_hi_;
    }
    if (!is_open_hi(o.rel_hi_)) {
        rhi = is_open_hi(rhi) ? o.rel_hi_ : std::min(rhi, o.rel_hi_);
    }
    *this = from_parts(nlo, std::move(v), fl, rlo, rhi);
    return *this;
}

LaurentSeries &LaurentSeries::operator-=(const LaurentSeries &o) { return *this += -o; }

LaurentSeries &LaurentSeries::operator*=(cplx s)
{
    for (auto &x : c_) {
        x *= s;
    }
    return *this;
}

// ---------------------------------------------------------------------------
// Products

// Outermost nonzero exponents; stored exact zeros do not spread truncation.
static int support_hi(const LaurentSeries &s)
{
    for (int k = s.hi(); k > s.lo(); --k) {
        if (s.coeff(k) != cplx{}) {
            return k;
        }
    }
    return s.lo();
}

static int support_lo(const LaurentSeries &s)
{
    for (int k = s.lo(); k < s.hi(); ++k) {
        if (s.coeff(k) != cplx{}) {
            return k;
        }
    }
    return s.hi();
}

Window product_trust(const LaurentSeries &a, const LaurentSeries &b)
{
    int rlo = open_lo;
    auto raise = [&rlo](int v) { rlo = is_open_lo(rlo) ? v : std::max(rlo, v); };
    if (!a.exact_below()) {
        raise(a.trusted().lo + (b.exact_above() ? support_hi(b) : b.peak()));
    }
    if (!b.exact_below()) {
        raise(b.trusted().lo + (a.exact_above() ? support_hi(a) : a.peak()));
    }
    int rhi = open_hi;
    auto lower = [&rhi](int v) { rhi = is_open_hi(rhi) ? v : std::min(rhi, v); };
    if (!a.exact_above()) {
        lower(a.trusted().hi + (b.exact_below() ? support_lo(b) : b.peak()));
    }
    if (!b.exact_above()) {
        lower(b.trusted().hi + (a.exact_below() ? support_lo(a) : a.peak()));
    }
    return {rlo, rhi};
}

LaurentSeries mul(const LaurentSeries &a, const LaurentSeries &b, Window clip)
{
    const int full_lo = a.lo() + b.lo();
    const int full_hi = a.hi() + b.hi();
    const int nlo = std::max(full_lo, clip.lo);
    const int nhi = std::min(full_hi, clip.hi);
    if (nlo > nhi) {
        throw series_error("window underflow");
    }
    const auto ac = a.coeffs();
    const auto bc = b.coeffs();
    std::vector<cplx> v(static_cast<std::size_t>(nhi - nlo + 1));
    if (std::min(ac.size(), bc.size()) >= fft_mul_threshold) {
        const std::vector<cplx> full = fft_convolve(ac, bc);
        for (int k = nlo; k <= nhi; ++k) {
            v[static_cast<std::size_t>(k - nlo)] = full[static_cast<std::size_t>(k - full_lo)];
        }
    }
    for (int k = nlo; k <= nhi && std::min(ac.size(), bc.size()) < fft_mul_threshold; ++k) {
        const int ilo = std::max(a.lo(), k - b.hi());
        const int ihi = std::min(a.hi(), k - b.lo());
        cplx s{};
        for (int i = ilo; i <= ihi; ++i) {
            s += ac[static_cast<std::size_t>(i - a.lo())] * bc[static_cast<std::size_t>(k - i - b.lo())];
        }
        v[static_cast<std::size_t>(k - nlo)] = s;
    }
    Window t = product_trust(a, b);
    if (nlo > full_lo) {
        t.lo = is_open_lo(t.lo) ? nlo : std::max(t.lo, nlo);
    }
    if (nhi < full_hi) {
        t.hi = is_open_hi(t.hi) ? nhi : std::min(t.hi, nhi);
    }
    return LaurentSeries::from_parts(nlo, std::move(v), combine_flavor(a, b), t.lo, t.hi);
}

cplx residue_of_product(const LaurentSeries &a, const LaurentSeries &b)
{
    const Window t = product_trust(a, b);
    if (!t.contains(-1)) {
        throw series_error("residue outside trusted window");
    }
    const int ilo = std::max(a.lo(), -1 - b.hi());
    const int ihi = std::min(a.hi(), -1 - b.lo());
    cplx s{};
    for (int i = ilo; i <= ihi; ++i) {
        s += a.coeff(i) * b.coeff(-1 - i);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Normal form, reciprocal, powers, logarithm

SplitForm split_normalize(const LaurentSeries &a)
{
    if (a.flavor() == Flavor::TwoSided) {
        throw std::invalid_argument("split_normalize: TwoSided series needs an explicit direction");
    }
    return split_normalize(a, a.flavor());
}

SplitForm split_normalize(const LaurentSeries &a, Flavor direction)
{
    if (direction == Flavor::TwoSided) {
        throw std::invalid_argument("split_normalize: direction must be AtZero or AtInfinity");
    }
    const bool from_top = direction == Flavor::AtInfinity;
    int j = from_top ? a.hi() : a.lo();
    if (from_top && a.exact_above()) {
        while (j > a.lo() && a.coeff(j) == cplx{}) {
            --j;
        }
    }
    if (!from_top && a.exact_below()) {
        while (j < a.hi() && a.coeff(j) == cplx{}) {
            ++j;
        }
    }
    const cplx c = a.coeff(j);
    if (std::abs(c) < 1e-300) {
        throw series_error("zero leading coefficient");
    }
    LaurentSeries shifted = shift_scale(a, -j, cplx{1.0} / c, direction);
    // Drop exact zeros beyond the leading term and the leading unit itself.
    const Window keep = from_top ? Window{shifted.lo(), 0} : Window{0, shifted.hi()};
    LaurentSeries u = shifted.clip(keep);
    u -= LaurentSeries::constant(u.coeff(0));
    u = u.clip(keep).with_flavor(direction);
    return {c, j, u};
}

LaurentSeries reciprocal_one_plus(const LaurentSeries &u, Flavor direction, Window clip)
{
    if (direction == Flavor::TwoSided) {
        throw std::invalid_argument("reciprocal_one_plus: direction must be AtZero or AtInfinity");
    }
    const bool down = direction == Flavor::AtInfinity;
    for (int k = u.lo(); k <= u.hi(); ++k) {
        const bool wrong_side = down ? k >= 0 : k <= 0;
        if (wrong_side && u.coeff(k) != cplx{}) {
            throw series_error("argument is not strictly decaying");
        }
    }
    // Recurrence along the decay direction: r_0 = 1, r_k = -sum u_i r_{k-i}.
    const int depth = down ? std::max(0, -clip.lo) : std::max(0, clip.hi);
    std::vector<cplx> r(static_cast<std::size_t>(depth + 1));
    r[0] = 1.0;
    for (int m = 1; m <= depth; ++m) {
        cplx s{};
        for (int i = 1; i <= m; ++i) {
            const cplx ui = u.coeff(down ? -i : i);
            if (ui != cplx{}) {
                s += ui * r[static_cast<std::size_t>(m - i)];
            }
        }
        r[static_cast<std::size_t>(m)] = -s;
    }
    // Trust: a truncated tail of u at relative depth d contaminates r from d on.
    int rel = down ? open_lo : open_hi;
    const bool u_zero = std::all_of(u.coeffs().begin(), u.coeffs().end(), [](cplx x) { return x == cplx{}; });
    if (!u_zero || (down ? !u.exact_below() : !u.exact_above())) {
        rel = down ? -depth : depth;
        if (down && !u.exact_below()) {
            rel = std::max(rel, u.trusted().lo);
        }
        if (!down && !u.exact_above()) {
            rel = std::min(rel, u.trusted().hi);
        }
    }
    LaurentSeries out;
    if (down) {
        std::vector<cplx> v(r.rbegin(), r.rend());
        out = LaurentSeries::from_parts(-depth, std::move(v), direction, rel, open_hi);
    } else {
        out = LaurentSeries::from_parts(0, std::move(r), direction, open_lo, rel);
    }
    if (out.lo() < clip.lo || out.hi() > clip.hi) {
        out = out.clip(clip);
    }
    return out;
}

// c w^j exactly, if a is an exact single-term series.
static std::optional<std::pair<cplx, int>> as_monomial(const LaurentSeries &a)
{
    if (!a.exact_below() || !a.exact_above()) {
        return std::nullopt;
    }
    std::optional<std::pair<cplx, int>> m;
    for (int k = a.lo(); k <= a.hi(); ++k) {
        if (a.coeff(k) != cplx{}) {
            if (m) {
                return std::nullopt;
            }
            m = std::pair{a.coeff(k), k};
        }
    }
    return m;
}

static LaurentSeries monomial_pow(cplx c, int j, int k, Window clip, Flavor flavor)
{
    if (k < 0 && std::abs(c) < 1e-300) {
        throw series_error("non-invertible leading term");
    }
    const long e = static_cast<long>(j) * k;
    if (e < clip.lo || e > clip.hi) {
        throw series_error("window underflow");
    }
    return LaurentSeries::monomial(cpow_int(c, k), static_cast<int>(e), flavor);
}

LaurentSeries int_pow(const LaurentSeries &a, int k, Window clip)
{
    if (const auto m = as_monomial(a); m && k != 0) {
        return monomial_pow(m->first, m->second, k, clip, a.flavor());
    }
    if (a.flavor() == Flavor::TwoSided) {
        if (k < 0) {
            throw std::invalid_argument("int_pow: negative power of a TwoSided series needs a direction");
        }
        LaurentSeries r = LaurentSeries::constant(1.0);
        LaurentSeries base = a;
        int e = k;
        while (e > 0) {
            if (e & 1) {
                r = mul(r, base);
            }
            e >>= 1;
            if (e > 0) {
                base = mul(base, base);
            }
        }
        if (r.lo() < clip.lo || r.hi() > clip.hi) {
            r = r.clip(clip);
        }
        return r;
    }
    return int_pow(a, k, clip, a.flavor());
}

LaurentSeries int_pow(const LaurentSeries &a, int k, Window clip, Flavor direction)
{
    if (k == 0) {
        return LaurentSeries::constant(1.0).with_flavor(direction);
    }
    if (const auto m = as_monomial(a)) {
        return monomial_pow(m->first, m->second, k, clip, direction);
    }
    SplitForm s = [&] {
        try {
            return split_normalize(a, direction);
        } catch (const series_error &) {
            if (k < 0) {
                throw series_error("non-invertible leading term");
            }
            throw;
        }
    }();
    if (k < 0 && std::abs(s.c) < 1e-300) {
        throw series_error("non-invertible leading term");
    }
    const long shift = static_cast<long>(s.j) * k;
    // Relative window for powers of (1 + u); contamination only travels in the
    // decay direction, so clipping the far side is harmless.
    const bool down = direction == Flavor::AtInfinity;
    const Window rel = down ? Window{static_cast<int>(std::max<long>(clip.lo - shift, -(1 << 20))), 0}
                            : Window{0, static_cast<int>(std::min<long>(clip.hi - shift, 1 << 20))};
    if (rel.empty()) {
        throw series_error("window underflow");
    }
    if (k < 0 && rel.width() > max_reciprocal_depth) {
        throw std::invalid_argument("int_pow: negative power needs a finite clip window");
    }
    LaurentSeries base = s.u + LaurentSeries::constant(1.0);
    base = base.with_flavor(direction);
    if (k < 0) {
        base = reciprocal_one_plus(s.u, direction, rel);
    }
    int e = std::abs(k);
    LaurentSeries r = LaurentSeries::constant(1.0).with_flavor(direction);
    while (e > 0) {
        if (e & 1) {
            r = mul(r, base, rel);
        }
        e >>= 1;
        if (e > 0) {
            base = mul(base, base, rel);
        }
    }
    LaurentSeries out = shift_scale(r, static_cast<int>(shift), cpow_int(s.c, k), direction);
    if (out.lo() < clip.lo || out.hi() > clip.hi) {
        out = out.clip(clip);
    }
    return out;
}

LaurentSeries log1p(const LaurentSeries &u, Window clip)
{
    if (u.flavor() == Flavor::TwoSided) {
        throw std::invalid_argument("log1p: TwoSided series needs an explicit direction");
    }
    return log1p(u, clip, u.flavor());
}

LaurentSeries log1p(const LaurentSeries &u, Window clip, Flavor direction)
{
    if (u.coeff(0) != cplx{}) {
        throw series_error("nonzero constant term in u");
    }
    if (direction == Flavor::TwoSided) {
        throw std::invalid_argument("log1p: direction must be AtZero or AtInfinity");
    }
    const bool down = direction == Flavor::AtInfinity;
    const bool u_zero = std::all_of(u.coeffs().begin(), u.coeffs().end(), [](cplx x) { return x == cplx{}; });
    if (u_zero && u.exact_below() && u.exact_above()) {
        return LaurentSeries::constant(0.0).with_flavor(direction);
    }
    // (log(1+u))' = u' / (1 + u), then integrate termwise.
    const Window rclip = down ? Window{clip.lo - 1, 0} : Window{0, clip.hi - 1};
    const LaurentSeries recip = reciprocal_one_plus(u, direction, rclip);
    const Window dclip = down ? Window{clip.lo - 1, -2} : Window{0, clip.hi - 1};
    const LaurentSeries du = mul(derivative(u), recip, dclip);
    const int olo = down ? std::max(clip.lo, du.lo() + 1) : 1;
    const int ohi = down ? -1 : std::min(clip.hi, du.hi() + 1);
    if (olo > ohi) {
        throw series_error("window underflow");
    }
    std::vector<cplx> v(static_cast<std::size_t>(ohi - olo + 1));
    for (int k = olo; k <= ohi; ++k) {
        v[static_cast<std::size_t>(k - olo)] = du.coeff(k - 1) / static_cast<double>(k);
    }
    const Window t = du.trusted();
    const int rlo = is_open_lo(t.lo) ? open_lo : t.lo + 1;
    const int rhi = is_open_hi(t.hi) ? open_hi : t.hi + 1;
    return LaurentSeries::from_parts(olo, std::move(v), direction, down ? std::max(rlo, olo) : open_lo,
                                     down ? open_hi : std::min(rhi, ohi));
}

LaurentSeries derivative(const LaurentSeries &a)
{
    std::vector<cplx> v(a.coeffs().size());
    for (int k = a.lo(); k <= a.hi(); ++k) {
        v[static_cast<std::size_t>(k - a.lo())] = static_cast<double>(k) * a.coeff(k);
    }
    const Window t = a.trusted();
    const int rlo = is_open_lo(t.lo) ? open_lo : t.lo - 1;
    const int rhi = is_open_hi(t.hi) ? open_hi : t.hi - 1;
    return LaurentSeries::from_parts(a.lo() - 1, std::move(v), a.flavor(), rlo, rhi);
}

// ---------------------------------------------------------------------------
// Composition and inversion

LaurentSeries compose(const LaurentSeries &a, const LaurentSeries &b, Window clip)
{
    Flavor dir = b.flavor();
    if (dir == Flavor::TwoSided) {
        dir = a.flavor();
    }
    if (dir == Flavor::TwoSided) {
        throw std::invalid_argument("compose: inner series needs a direction");
    }
    const int steps = a.hi() - a.lo() + 2;
    const Window work = dir == Flavor::AtInfinity ? Window{clip.lo - steps, clip.hi}
                                                  : Window{clip.lo, clip.hi + steps};
    LaurentSeries result = LaurentSeries::constant(a.coeff(0)).with_flavor(dir);
    if (a.hi() > 0) {
        // sum_{k>=1} a_k b^k by Horner.
        LaurentSeries acc = LaurentSeries::constant(a.coeff(a.hi())).with_flavor(dir);
        for (int k = a.hi() - 1; k >= 1; --k) {
            acc = mul(acc, b, work) + LaurentSeries::constant(a.coeff(k));
        }
        result += mul(acc, b, work);
    }
    if (a.lo() < 0) {
        // sum_{k>=1} a_{-k} y^k with y = 1/b.
        const LaurentSeries y = int_pow(b, -1, work, dir);
        LaurentSeries acc = LaurentSeries::constant(a.coeff(a.lo())).with_flavor(dir);
        for (int k = a.lo() + 1; k <= -1; ++k) {
            acc = mul(acc, y, work) + LaurentSeries::constant(a.coeff(k));
        }
        result += mul(acc, y, work);
        if (!a.exact_below()) {
            // Missing terms of a contribute y^k for k beyond the stored depth.
            const int depth = -a.trusted().lo;
            const Window lead = y.stored();
            const int edge = dir == Flavor::AtInfinity ? (depth + 1) * lead.hi : (depth + 1) * lead.lo;
            result = dir == Flavor::AtInfinity ? result.restrict_trust({edge + 1, open_hi})
                                               : result.restrict_trust({open_lo, edge - 1});
        }
    }
    if (!a.exact_above() && a.hi() > 0) {
        const int depth = a.trusted().hi;
        const int edge = (depth + 1) * b.lo();
        result = result.restrict_trust({open_lo, edge - 1});
    }
    return result.clip(clip).with_flavor(dir);
}

LaurentSeries invert_function(const LaurentSeries &a, int depth)
{
    const Flavor dir = a.flavor();
    if (dir == Flavor::TwoSided) {
        throw std::invalid_argument("invert_function: series must be AtZero or AtInfinity");
    }
    const bool inf = dir == Flavor::AtInfinity;
    const cplx lead = a.coeff(1);
    if (std::abs(lead) < 1e-300) {
        throw series_error("vanishing leading coefficient");
    }
    const Window win = inf ? Window{-depth, 1} : Window{1, depth};
    const LaurentSeries z = LaurentSeries::monomial(1.0, 1, dir);
    const LaurentSeries da = derivative(a);
    LaurentSeries g = LaurentSeries::monomial(cplx{1.0} / lead, 1, dir);
    const int iterations = static_cast<int>(std::ceil(std::log2(static_cast<double>(std::max(depth, 2))))) + 2;
    for (int it = 0; it < iterations; ++it) {
        const LaurentSeries ag = compose(a, g, {win.lo - 1, win.hi + 1});
        const LaurentSeries dag = compose(da, g, {win.lo - 1, win.hi + 1});
        const LaurentSeries err = ag - z;
        const LaurentSeries step = mul(err, int_pow(dag, -1, {win.lo - 1, win.hi + 1}, dir), win);
        g = (g - step).clip(win);
    }
    // Newton converges on the full window; only the input's truncation limits trust.
    std::vector<cplx> v(g.coeffs().begin(), g.coeffs().end());
    int rlo = open_lo;
    int rhi = open_hi;
    if (inf) {
        rlo = a.exact_below() ? -depth : std::max(-depth, a.trusted().lo);
        if (a.exact_below() && a.lo() >= 0) {
            rlo = open_lo;
        }
    } else {
        rhi = a.exact_above() ? depth : std::min(depth, a.trusted().hi);
        if (a.exact_above() && a.hi() <= 1) {
            rhi = open_hi;
        }
    }
    return LaurentSeries::from_parts(g.lo(), std::move(v), dir, rlo, rhi);
}

// ---------------------------------------------------------------------------
// Circle sampling

int circle_samples_for(Window w, int requested)
{
    if (requested <= 0 || !std::has_single_bit(static_cast<unsigned>(requested))) {
        throw std::invalid_argument("circle sample count must be a positive power of two");
    }
    int m = requested;
    while (m < 4 * w.width()) {
        m *= 2;
    }
    return m;
}

std::vector<cplx> sample_on_circle(const LaurentSeries &a, int samples)
{
    std::vector<cplx> bins(static_cast<std::size_t>(samples));
    for (int k = a.lo(); k <= a.hi(); ++k) {
        bins[static_cast<std::size_t>(positive_mod(k, samples))] += a.coeff(k);
    }
    dft(bins, FFTW_BACKWARD);
    return bins;
}

LaurentSeries coefficients_from_samples(std::span<const cplx> values, Window window)
{
    const int m = static_cast<int>(values.size());
    if (window.width() > m) {
        throw std::invalid_argument("window wider than the sample count");
    }
    std::vector<cplx> data(values.begin(), values.end());
    dft(data, FFTW_FORWARD);
    std::vector<cplx> v(static_cast<std::size_t>(window.width()));
    for (int k = window.lo; k <= window.hi; ++k) {
        v[static_cast<std::size_t>(k - window.lo)] = data[static_cast<std::size_t>(positive_mod(k, m))] / static_cast<double>(m);
    }
    return LaurentSeries::from_parts(window.lo, std::move(v), Flavor::TwoSided, window.lo, window.hi);
}

LaurentSeries divide_on_circle(const LaurentSeries &num, const LaurentSeries &den, Window window, int samples)
{
    const int m = circle_samples_for(window, samples);
    auto nv = sample_on_circle(num, m);
    const auto dv = sample_on_circle(den, m);
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto &d : dv) {
        dmin = std::min(dmin, std::abs(d));
    }
    if (!(dmin > 1e-8)) {
        throw series_error("denominator vanishes on circle");
    }
    for (std::size_t i = 0; i < nv.size(); ++i) {
        nv[i] /= dv[i];
    }
    return coefficients_from_samples(nv, window);
}

LaurentSeries mul_on_circle(const LaurentSeries &a, const LaurentSeries &b, Window window, int samples)
{
    const int m = circle_samples_for(window, samples);
    auto av = sample_on_circle(a, m);
    const auto bv = sample_on_circle(b, m);
    for (std::size_t i = 0; i < av.size(); ++i) {
        av[i] *= bv[i];
    }
    return coefficients_from_samples(av, window);
}

// ---------------------------------------------------------------------------
// Comparison helpers

double max_abs_on(const LaurentSeries &a, Window w)
{
    const Window r = a.reliable().intersect(w);
    double m = 0.0;
    for (int k = r.lo; k <= r.hi; ++k) {
        m = std::max(m, std::abs(a.coeff(k)));
    }
    return m;
}

double max_abs_diff(const LaurentSeries &a, const LaurentSeries &b, Window w)
{
    Window r = a.trusted().intersect(b.trusted()).intersect(w);
    r = r.intersect({std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())});
    double m = 0.0;
    for (int k = r.lo; k <= r.hi; ++k) {
        m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
    }
    return m;
}

std::string to_string(const LaurentSeries &a)
{
    std::ostringstream os;
    os.precision(17);
    const Window r = a.reliable();
    os << "LaurentSeries[lo=" << a.lo() << ", hi=" << a.hi() << ", reliable=[" << r.lo << ", " << r.hi << "]]";
    for (int k = a.lo(); k <= a.hi(); ++k) {
        const cplx c = a.coeff(k);
        if (c != cplx{}) {
            os << " (" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)w^" << k;
        }
    }
    return os.str();
}

} // namespace dtoda
