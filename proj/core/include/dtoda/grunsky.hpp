#ifndef DTODA_GRUNSKY_HPP
#define DTODA_GRUNSKY_HPP

#include "dtoda/conformal_pair.hpp"
#include "dtoda/series.hpp"

#include <vector>

namespace dtoda
{

// P_n(w) = (g^n)_{>=0} for n >= 1, P_n(w) = (f^n)_{<=0} for n <= -1; P_0 = log w
// is represented by is_log = true and an empty polynomial.
struct FaberPolynomial {
    int n = 0;
    bool is_log = false;
    LaurentSeries poly;
};

[[nodiscard]] FaberPolynomial faber(const ConformalPair &pair, int n);

// Dense table of b_{m,n} for |m|, |n| <= N.
class GrunskyTable
{
public:
    GrunskyTable() = default;
    explicit GrunskyTable(int order)
        : order_(order), data_(static_cast<std::size_t>((2 * order + 1) * (2 * order + 1)))
    {
    }

    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] cplx operator()(int m, int n) const { return data_[index(m, n)]; }
    cplx &at(int m, int n) { return data_[index(m, n)]; }
    [[nodiscard]] cplx b00() const { return (*this)(0, 0); }

    // max |b(m,n) - b(n,m)|.
    [[nodiscard]] double symmetry_defect() const;
    // max |a(m,n) - b(m,n)| over the common range.
    [[nodiscard]] static double max_difference(const GrunskyTable &a, const GrunskyTable &b);

private:
    [[nodiscard]] std::size_t index(int m, int n) const
    {
        if (m < -order_ || m > order_ || n < -order_ || n > order_) {
            throw std::out_of_range("Grunsky index outside table");
        }
        return static_cast<std::size_t>((m + order_) * (2 * order_ + 1) + (n + order_));
    }

    int order_ = 0;
    std::vector<cplx> data_;
};

// Every entry as a finite residue in the w variable; no functional inversion.
[[nodiscard]] GrunskyTable grunsky_table(const ConformalPair &pair, int order);

struct InverseSampling {
    int samples = default_circle_samples;
    double radius_g = 1.0; // |zeta| for the expansions about infinity
    double radius_f = 0.9; // |zeta| for the expansions about zero
};

// Independent path: invert g and f, expand the logarithmic generating
// functions in z for sampled zeta, and recover zeta-coefficients by DFT.
// b_{0,m} and b_{-m,n} (m >= 1) are filled by symmetry from b_{m,0}, b_{n,-m}.
[[nodiscard]] GrunskyTable grunsky_via_inverse(const ConformalPair &pair, int order, InverseSampling sampling = {});

// B_n = P_n - (n/2) b_{n,0} for n >= 1 and B_{-n} = P_{-n} + (n/2) b_{-n,0}.
[[nodiscard]] LaurentSeries b_polynomial(const ConformalPair &pair, const GrunskyTable &table, int n);

// Largest trusted coefficient of the four Faber expansion identities for index
// n >= 1 (P_n and P_{-n} against the g and f bases), compared on |exponent| <= N.
[[nodiscard]] double faber_expansion_defect(const ConformalPair &pair, const GrunskyTable &table, int n);

} // namespace dtoda

#endif
