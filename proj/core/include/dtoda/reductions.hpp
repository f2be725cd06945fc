#ifndef DTODA_REDUCTIONS_HPP
#define DTODA_REDUCTIONS_HPP

#include "dtoda/coords.hpp"
#include "dtoda/grunsky.hpp"

#include <iosfwd>

namespace dtoda
{

class reduction_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// H(z, 1/conj(z)) is real: every (mu, nu, c) has a partner (nu, mu, conj c).
[[nodiscard]] bool sigma_admissible(const Hamiltonian &h);

struct SigmaDefects {
    double t_pairs = 0.0; // |t(-n) + conj t(n)|
    double v_pairs = 0.0; // |v(-n) + conj v(n)|
    double t0_imag = 0.0;
    double v0_imag = 0.0;

    [[nodiscard]] double max() const { return std::max({t_pairs, v_pairs, t0_imag, v0_imag}); }
};

[[nodiscard]] SigmaDefects sigma_coordinate_check(const LaurentSeries &g, const Hamiltonian &h, int order);

// Expansion of G_Omega(z1, z2) - log|1/z1 - 1/z2| for the exterior of g(|w| = 1).
// mixed(m, n) multiplies z1^-m conj(z2)^-n (m or n zero: single-variable and
// constant terms); holo(m, n) multiplies z1^-m z2^-n for m, n >= 1. The other
// two blocks are the complex conjugates of these.
class GreenCoefficients
{
public:
    explicit GreenCoefficients(int order = 0)
        : order_(order), mixed_(static_cast<std::size_t>((order + 1) * (order + 1))),
          holo_(static_cast<std::size_t>((order + 1) * (order + 1)))
    {
    }

    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] cplx mixed(int m, int n) const { return mixed_[index(m, n)]; }
    [[nodiscard]] cplx holo(int m, int n) const { return holo_[index(m, n)]; }
    cplx &mixed_at(int m, int n) { return mixed_[index(m, n)]; }
    cplx &holo_at(int m, int n) { return holo_[index(m, n)]; }
    // The Hermitian kernel: mixed(m, n).
    [[nodiscard]] cplx kernel(int m, int n) const { return mixed(m, n); }

    // max |mixed(m,n) - conj mixed(n,m)|.
    [[nodiscard]] double hermitian_defect() const;
    // Rows "block,m,n,re,im".
    void write_csv(std::ostream &out) const;

private:
    [[nodiscard]] std::size_t index(int m, int n) const
    {
        if (m < 0 || n < 0 || m > order_ || n > order_) {
            throw std::out_of_range("Green index outside table");
        }
        return static_cast<std::size_t>(m * (order_ + 1) + n);
    }

    int order_;
    std::vector<cplx> mixed_;
    std::vector<cplx> holo_;
};

// Expansion from the inverse map G = g^-1 sampled on |z2| = radius.
[[nodiscard]] GreenCoefficients green_coefficients(const LaurentSeries &g, int order,
                                                   InverseSampling sampling = {});

// The same expansion predicted by second derivatives of log T, i.e. by the
// Grunsky entries of the sigma pair built from g.
[[nodiscard]] GreenCoefficients green_from_table(const GrunskyTable &table);

// max difference between green_coefficients and green_from_table(grunsky_table),
// including the conjugate blocks read from the table's negative indices.
[[nodiscard]] double green_identity_check(const LaurentSeries &g, const Hamiltonian &h, int order);

// max |Im| over t, v, v0 and log T.
[[nodiscard]] double real_subspace_check(const ConformalPair &pair, const Hamiltonian &h, int order);

} // namespace dtoda

#endif
