#ifndef DTODA_FLOWS_HPP
#define DTODA_FLOWS_HPP

#include "dtoda/coords.hpp"
#include "dtoda/grunsky.hpp"

namespace dtoda
{

struct FlowField {
    int n = 0;
    LaurentSeries u;
    LaurentSeries dg;
    LaurentSeries df;

    // Largest |dg/g' - df/f' - u| on [-order, order].
    [[nodiscard]] double split_defect(const ConformalPair &pair) const;
};

enum class StepMethod { euler, rk4 };

// d12 H(g, f) f' g' as a series.
[[nodiscard]] LaurentSeries flow_denominator(const ConformalPair &pair, const Hamiltonian &h);

// u_n = -P_n' / (f' g' d12 H(g, f)); P_0' = 1/w.
[[nodiscard]] LaurentSeries u_field(const ConformalPair &pair, const Hamiltonian &h, int n);

[[nodiscard]] FlowField flow_field(const ConformalPair &pair, const Hamiltonian &h, int n);

// Pair moved by (eps dg, eps df), then f rescaled so that a1 b = 1.
[[nodiscard]] ConformalPair advance(const ConformalPair &pair, const LaurentSeries &dg, const LaurentSeries &df,
                                    cplx eps);

[[nodiscard]] ConformalPair step(const ConformalPair &pair, const Hamiltonian &h, int n, double eps,
                                 StepMethod method = StepMethod::euler);

// max |d t_m / d t_n - delta_nm| for |n|, |m| <= N by central differences.
[[nodiscard]] double jacobian_check(const ConformalPair &pair, const Hamiltonian &h, int order, double eps = 1e-5);

// (w g' df0 - w f' dg0) d12 H(g, f) - 1.
[[nodiscard]] LaurentSeries string_residual(const ConformalPair &pair, const Hamiltonian &h);
[[nodiscard]] double string_check(const ConformalPair &pair, const Hamiltonian &h);

// {a, b} = w (a' d0 b - d0 a b').
[[nodiscard]] LaurentSeries bracket(const LaurentSeries &a, const LaurentSeries &d0a, const LaurentSeries &b,
                                    const LaurentSeries &d0b);

struct LaxResult {
    double g_side = 0.0;
    double f_side = 0.0;
    double canonical = 0.0;

    [[nodiscard]] double max() const { return std::max({g_side, f_side, canonical}); }
};

// d_n g = {B_n, g}, d_n f = {B_n, f} and {g, g d1 H(g, f)} = g.
[[nodiscard]] LaxResult lax_check(const ConformalPair &pair, const Hamiltonian &h, const GrunskyTable &table, int n);

struct TauCheckResult {
    double gradient = 0.0; // d log T / d t_n vs v_n
    double hessian = 0.0;  // d v_m / d t_n vs the Grunsky entries
    double symmetry = 0.0; // d v_m / d t_n vs d v_n / d t_m

    [[nodiscard]] double max() const { return std::max({gradient, hessian, symmetry}); }
};

// Expected d v_m / d t_n: -|mn| b_mn, |m| b_m0 for n = 0, |n| b_0n for m = 0, -2 b00.
[[nodiscard]] cplx hessian_entry(const GrunskyTable &table, int m, int n);

[[nodiscard]] TauCheckResult tau_gradient_check(const ConformalPair &pair, const Hamiltonian &h, int order,
                                                double eps = 1e-5);

} // namespace dtoda

#endif
