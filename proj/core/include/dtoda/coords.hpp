#ifndef DTODA_COORDS_HPP
#define DTODA_COORDS_HPP

#include "dtoda/conformal_pair.hpp"
#include "dtoda/hamiltonian.hpp"

#include <map>
#include <vector>

namespace dtoda
{

// t_n (|n| <= N), v_n (0 < |n| <= N), v0 and the tau function pieces.
struct TodaCoordinates {
    int order = 0;
    std::map<int, cplx> t;
    std::map<int, cplx> v;
    cplx t0_alt;
    cplx v0;
    cplx z1;
    cplx z2;
    cplx z3;
    cplx log_t;
    cplx z2_closed;

    [[nodiscard]] cplx t_at(int n) const { return t.at(n); }
    [[nodiscard]] cplx v_at(int n) const { return n == 0 ? v0 : v.at(n); }
    // log tau = 2 Re log T.
    [[nodiscard]] double log_tau() const { return 2.0 * log_t.real(); }
};

// Series evaluations shared by the coordinate residues.
class CoordinateContext
{
public:
    CoordinateContext(const ConformalPair &pair, const Hamiltonian &h, int order);

    [[nodiscard]] const ConformalPair &pair() const { return *pair_; }
    [[nodiscard]] const Partials &partials() const { return partials_; }
    [[nodiscard]] const PairPowers &powers() const { return powers_; }
    [[nodiscard]] Window window() const { return window_; }
    // d1(g, f) g' and d2(g, f) f'.
    [[nodiscard]] const LaurentSeries &a() const { return a_; }
    [[nodiscard]] const LaurentSeries &b() const { return b_; }
    [[nodiscard]] LaurentSeries eval(const MonomialSum &s) const { return eval_along(s, powers_, window_); }

private:
    const ConformalPair *pair_;
    Partials partials_;
    int order_;
    Window window_;
    PairPowers powers_;
    LaurentSeries a_;
    LaurentSeries b_;
};

// t, v and t0_alt; v0 and the tau pieces are left zero.
[[nodiscard]] TodaCoordinates time_variables(const ConformalPair &pair, const Hamiltonian &h, int order);
[[nodiscard]] TodaCoordinates time_variables(const CoordinateContext &ctx, int order);

// Residue of d1 g' log(g/w) + d2 f' log(f/w) - H/w with log a1 := -log b.
[[nodiscard]] cplx v_zero(const ConformalPair &pair, const Hamiltonian &h);
[[nodiscard]] cplx v_zero(const CoordinateContext &ctx);

struct PhiPsi {
    std::vector<cplx> phi; // phi[n] is the coefficient of z^-n, n = 1..N (phi[0] = 0)
    std::vector<cplx> psi; // psi[n] is the coefficient of z^n
};

[[nodiscard]] PhiPsi phi_psi(const TodaCoordinates &c, int order);

struct TauParts {
    cplx z1;
    cplx z2;
    cplx z3;
    cplx log_t;
    cplx z2_closed;
};

[[nodiscard]] TauParts log_tau(const ConformalPair &pair, const Hamiltonian &h, const TodaCoordinates &c);
[[nodiscard]] TauParts log_tau(const CoordinateContext &ctx, const Hamiltonian &h, const TodaCoordinates &c);

// Everything above in one pass.
[[nodiscard]] TodaCoordinates coordinates(const ConformalPair &pair, const Hamiltonian &h, int order);

struct PlemeljResult {
    double g_side;
    double f_side;
    [[nodiscard]] double max() const { return std::max(g_side, f_side); }
};

// Expands g d1(g, f) in powers of g and -f d2(g, f) in powers of f by
// trapezoidal quadrature of pointwise values on |w| = 1, and compares the
// coefficients with (n t_n, t0, v_n) and (-n t_-n, t0, -v_-n).
[[nodiscard]] PlemeljResult plemelj_check(const ConformalPair &pair, const Hamiltonian &h, const TodaCoordinates &c,
                                          int samples = default_circle_samples);

} // namespace dtoda

#endif
