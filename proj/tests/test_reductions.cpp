#include "dtoda/reductions.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace dtoda;

namespace
{

const Hamiltonian h11({{1, 1, 1.0}});
const Hamiltonian h22({{2, 2, 1.0}});

LaurentSeries ellipse()
{
    return LaurentSeries::polynomial(-1, {0.1, 0.0, 1.0}, Flavor::AtInfinity);
}

} // namespace

TEST_CASE("sigma admissibility")
{
    CHECK(sigma_admissible(h11));
    CHECK(sigma_admissible(Hamiltonian({{2, 1, cplx{1.0, 0.5}}, {1, 2, cplx{1.0, -0.5}}})));
    CHECK_FALSE(sigma_admissible(Hamiltonian({{2, 1, 1.0}})));
    CHECK_FALSE(sigma_admissible(Hamiltonian({{1, 1, cplx{0.0, 1.0}}})));
    CHECK_THROWS_WITH((void)sigma_coordinate_check(ellipse(), Hamiltonian({{2, 1, 1.0}}), 4),
                      "H not Σ-admissible");
}

TEST_CASE("sigma_coordinate_check")
{
    const auto id = LaurentSeries::monomial(1.0, 1, Flavor::AtInfinity);
    CHECK(sigma_coordinate_check(id, h11, 8).max() == 0.0);
    CHECK(sigma_coordinate_check(ellipse(), h11, 16).max() <= 1e-10);
    CHECK(std::abs(coordinates(sigma_fixture(16), h11, 16).t.at(0) - 0.99) < 1e-14);
    CHECK(sigma_coordinate_check(ellipse(), h22, 16).max() <= 1e-10);
    const auto g = LaurentSeries::polynomial(-3, {cplx{0.01, 0.02}, cplx{0.0, 0.05}, 0.03, 0.0, 1.1}, Flavor::AtInfinity);
    CHECK(sigma_coordinate_check(g, Hamiltonian({{2, 1, cplx{0.3, 0.1}}, {1, 2, cplx{0.3, -0.1}}, {1, 1, 1.0}}), 12)
              .max() <= 1e-10);
}

TEST_CASE("green_coefficients of the disc")
{
    const auto gc = green_coefficients(LaurentSeries::monomial(1.0, 1, Flavor::AtInfinity), 6);
    for (int m = 0; m <= 6; ++m) {
        for (int n = 0; n <= 6; ++n) {
            const cplx expected = (m == n && m > 0) ? cplx{0.5 / m} : cplx{};
            CHECK(std::abs(gc.mixed(m, n) - expected) < 1e-14);
            if (m > 0 && n > 0) {
                CHECK(std::abs(gc.holo(m, n)) < 1e-14);
            }
        }
    }
    CHECK(gc.hermitian_defect() <= 1e-12);
}

TEST_CASE("green_coefficients two ways")
{
    const auto lhs = green_coefficients(ellipse(), 8);
    const auto rhs = green_from_table(grunsky_table(sigma_conjugate(ellipse(), 8), 8));
    CHECK(std::abs(lhs.kernel(1, 1) - rhs.kernel(1, 1)) <= 1e-10);
    CHECK(lhs.hermitian_defect() <= 1e-12);
    CHECK(rhs.hermitian_defect() <= 1e-12);

    std::ostringstream os;
    lhs.write_csv(os);
    CHECK(os.str().rfind("block,m,n,re,im\nmixed,0,0,", 0) == 0);
}

TEST_CASE("green_identity_check")
{
    CHECK(green_identity_check(LaurentSeries::monomial(1.0, 1, Flavor::AtInfinity), h11, 6) < 1e-14);
    CHECK(green_identity_check(ellipse(), h11, 8) <= 1e-10);
    CHECK(green_identity_check(ellipse(), h22, 8) <= 1e-10);
    const auto gi = LaurentSeries::polynomial(-2, {cplx{0.0, 0.05}, 0.0, 0.0, 1.0}, Flavor::AtInfinity);
    CHECK(green_identity_check(gi, h11, 8) <= 1e-10);
    // b != 1 exposes the sign of the t0 second derivative.
    const auto gb = LaurentSeries::polynomial(-1, {0.1, 0.0, 1.25}, Flavor::AtInfinity);
    const double d = green_identity_check(gb, h11, 8);
    MESSAGE("b = 1.25 Green defect " << d);
    CHECK(d <= 1e-10);
}

TEST_CASE("real_subspace_check")
{
    CHECK(real_subspace_check(identity_pair(8), h11, 8) == 0.0);
    CHECK(real_subspace_check(random_pair(11, 0.3, 12, true), h11, 12) <= 1e-11);
    CHECK(real_subspace_check(random_pair(11, 0.3, 12, false), h11, 12) > 1e-6);
}
