#ifndef DTODA_SPECIAL_HPP
#define DTODA_SPECIAL_HPP

#include "dtoda/coords.hpp"

namespace dtoda
{

// H = z1^mu z2^-nu.
struct MonomialCase {
    int mu = 1;
    int nu = 1;

    [[nodiscard]] Hamiltonian hamiltonian() const { return Hamiltonian({{mu, nu, 1.0}}); }
};

// t, v from the monomial residues g^(mu-n-1) f^-nu g' and g^mu f^(n-nu-1) f';
// v0 and the tau pieces through the general path.
[[nodiscard]] TodaCoordinates special_coords(const ConformalPair &pair, MonomialCase mc, int order);

// |2 nu sum n t_n v_n + nu t0^2 - 2 mu sum n t_-n v_-n - mu t0^2|.
[[nodiscard]] double nontrivial_identity(const TodaCoordinates &c, MonomialCase mc);

// -(1/mu + 1/nu) t0^2 / 8 + t0 v0 / 2 + sum (1 - n/(2 mu)) t_n v_n / 2 + sum (1 - n/(2 nu)) t_-n v_-n / 2.
[[nodiscard]] cplx special_logtau(const TodaCoordinates &c, MonomialCase mc);

struct GeneratingResult {
    double plemelj = 0.0;    // the two expansions of mu g^mu f^-nu and nu g^mu f^-nu
    double derivative = 0.0; // d/dw of g^mu f^-nu against the integrated expansion
    cplx offset;             // w^0 coefficient of lhs minus rhs

    [[nodiscard]] double max() const { return std::max(plemelj, derivative); }
};

// g^mu f^-nu = sum [t_n g^n - v_n g^-n / n - t_-n f^-n + v_-n f^n / n] + t0 log(g / f) + const.
[[nodiscard]] GeneratingResult generating_identity_check(const ConformalPair &pair, const TodaCoordinates &c,
                                                         MonomialCase mc);

// Summation order for identities that need the infinite sums: the working
// depth when both maps are stored exactly; otherwise half the storage depth,
// since f^-n (or g^n) is trusted only to the stored relative depth.
[[nodiscard]] inline int summation_order(const ConformalPair &pair)
{
    const bool exact = pair.g().exact_below() && pair.f().exact_above();
    return exact ? working_depth(pair.order()) : pair.depth() / 2 - 2;
}

} // namespace dtoda

#endif
