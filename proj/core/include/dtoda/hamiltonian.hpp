#ifndef DTODA_HAMILTONIAN_HPP
#define DTODA_HAMILTONIAN_HPP

#include "dtoda/conformal_pair.hpp"
#include "dtoda/series.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dtoda
{

class hamiltonian_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Finite sum of c z1^e1 z2^e2 with like terms merged. Zero coefficients are kept
// out of the map so that equality is structural.
class MonomialSum
{
public:
    using Key = std::pair<int, int>;

    void add(int e1, int e2, cplx c);
    [[nodiscard]] const std::map<Key, cplx> &terms() const { return terms_; }
    [[nodiscard]] bool empty() const { return terms_.empty(); }
    [[nodiscard]] cplx coeff(int e1, int e2) const;

    [[nodiscard]] MonomialSum d_z1() const;
    [[nodiscard]] MonomialSum d_z2() const;
    [[nodiscard]] cplx evaluate(cplx z1, cplx z2) const;
    // Largest |exponent| over both variables.
    [[nodiscard]] int max_abs_exponent() const;

    MonomialSum &operator+=(const MonomialSum &o);
    MonomialSum &operator*=(cplx s);
    friend MonomialSum operator+(MonomialSum a, const MonomialSum &b) { return a += b; }
    friend MonomialSum operator*(MonomialSum a, cplx s) { return a *= s; }

    // max |a - b| over the union of exponents.
    [[nodiscard]] static double max_difference(const MonomialSum &a, const MonomialSum &b);

private:
    std::map<Key, cplx> terms_;
};

// c z1^mu z2^-nu.
struct HamiltonianTerm {
    int mu;
    int nu;
    cplx c;
};

enum class GaugeVariable { z1, z2 };

// c z1^k (a term of H1) or c z2^k (a term of H2).
struct GaugeTerm {
    GaugeVariable variable;
    int exponent;
    cplx c;
};

struct Partials {
    MonomialSum h;
    MonomialSum d1;
    MonomialSum d2;
    MonomialSum d12;
    MonomialSum d11;
    MonomialSum d22;
};

// H(z1, z2) = sum c z1^mu z2^-nu (mu, nu nonzero) plus optional gauge terms
// H1(z1) + H2(z2). Construction rejects vanishing d12 and any term pair
// whose J antiderivative would need a logarithm.
class Hamiltonian
{
public:
    explicit Hamiltonian(std::vector<HamiltonianTerm> terms, std::vector<GaugeTerm> gauge = {});

    [[nodiscard]] const std::vector<HamiltonianTerm> &terms() const { return terms_; }
    [[nodiscard]] const std::vector<GaugeTerm> &gauge() const { return gauge_; }
    [[nodiscard]] Hamiltonian with_gauge(const std::vector<GaugeTerm> &extra) const;

    // Core terms and gauge terms as (mu, nu, c) with z2^-nu; gauge terms have
    // mu = 0 or nu = 0.
    [[nodiscard]] std::vector<HamiltonianTerm> all_terms() const;
    [[nodiscard]] MonomialSum as_sum() const;
    [[nodiscard]] bool real_on_real() const;

private:
    std::vector<HamiltonianTerm> terms_;
    std::vector<GaugeTerm> gauge_;
};

[[nodiscard]] Partials partials(const Hamiltonian &h);

struct JPair {
    MonomialSum j1;
    MonomialSum j2;
};

// Ordered-pair antiderivatives with -dJ1/dz2 = dJ2/dz1 = H d12.
[[nodiscard]] JPair j_pair(const Hamiltonian &h);

// Sum of c g^e1 f^e2 as a series clipped to `window`.
[[nodiscard]] LaurentSeries eval_along(const MonomialSum &s, const PairPowers &powers, Window window);
[[nodiscard]] LaurentSeries eval_along(const MonomialSum &s, const ConformalPair &pair, Window window);

struct GaugeShift {
    std::map<int, cplx> c; // t_n -> t_n + c[n]
    std::map<int, cplx> d; // v_n -> v_n + d[n]
    cplx v0_shift;
};

// Closed-form coordinate shifts caused by adding gauge terms, for |n| <= N.
[[nodiscard]] GaugeShift gauge_shift_constants(const std::vector<GaugeTerm> &gauge, int order);

} // namespace dtoda

#endif
