#include <doctest.h>

#include <cmath>

#include "core/admissibility.hpp"
#include "oracles.hpp"

using namespace twistdeform;

namespace {

Multivector su2_twist(const AlgebraPtr& g, const Rational& l12,
                      const Rational& l13, const Rational& l23) {
    Multivector t(g, 2);
    t.add_term({1, 2}, l12 / 2);
    t.add_term({1, 3}, l13 / 2);
    t.add_term({2, 3}, l23 / 2);
    return t;
}

}  // namespace

TEST_CASE("zero twist gives f = +1 in any dimension") {
    for (int m : {2, 3}) {
        auto g = LieAlgebra::su(m);
        Multivector t(g, 2);
        Eigen::VectorXd xi = Eigen::VectorXd::LinSpaced(g->dim(), -1.0, 2.0);
        Eigen::MatrixXd a = dressing_matrix(t, xi);
        CHECK((a + Eigen::MatrixXd::Identity(g->dim(), g->dim())).norm() ==
              doctest::Approx(0.0));
        CHECK(admissibility_determinant(t, xi) == doctest::Approx(1.0));
        std::vector<Rational> xiq(g->dim(), Rational(1, 3));
        CHECK(admissibility_determinant_exact(t, xiq) == 1);
    }
}

TEST_CASE("su(2) determinant collapses to the linear square") {
    auto g = LieAlgebra::su(2);
    std::mt19937 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        Rational l12 = oracles::random_rational(rng);
        Rational l13 = oracles::random_rational(rng);
        Rational l23 = oracles::random_rational(rng);
        auto t = su2_twist(g, l12, l13, l23);
        std::vector<Rational> xi = {oracles::random_rational(rng),
                                    oracles::random_rational(rng),
                                    oracles::random_rational(rng)};
        Rational lin = 1 + 2 * l23 * xi[0] - 2 * l13 * xi[1] + 2 * l12 * xi[2];
        CHECK(admissibility_determinant_exact(t, xi) == lin * lin);

        Eigen::VectorXd xid(3);
        for (int k = 0; k < 3; ++k) xid[k] = xi[k].convert_to<double>();
        CHECK(admissibility_determinant(t, xid) ==
              doctest::Approx((lin * lin).convert_to<double>()).epsilon(1e-12));
    }
}

TEST_CASE("float and exact determinants agree on su(3)") {
    auto g = LieAlgebra::su(3);
    std::mt19937 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        auto t = oracles::random_bivector(g, rng);
        std::vector<Rational> xi;
        Eigen::VectorXd xid(8);
        for (int k = 0; k < 8; ++k) {
            xi.push_back(oracles::random_rational(rng) / 4);
            xid[k] = xi.back().convert_to<double>();
        }
        double exact =
            admissibility_determinant_exact(t, xi).convert_to<double>();
        CHECK(admissibility_determinant(t, xid) ==
              doctest::Approx(exact).epsilon(1e-9));
    }
}

TEST_CASE("commuting Cartan pairs keep f identically one") {
    auto g = LieAlgebra::su(3);
    std::mt19937 rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        /* X, Y in span{Z1, Z2}: [X,Y] = 0 */
        SparseVector x, y;
        for (int k : {7, 8}) {
            x[k] = oracles::random_rational(rng);
            y[k] = oracles::random_rational(rng);
        }
        REQUIRE(g->bracket(x, y).empty());
        auto t = half_wedge(g, x, y);
        std::vector<Rational> xi;
        for (int k = 0; k < 8; ++k) xi.push_back(oracles::random_rational(rng));
        CHECK(admissibility_determinant_exact(t, xi) == 1);
    }
}

TEST_CASE("sphere samples cover the sphere with exact poles") {
    auto pts = sphere_samples(0.5, 200);
    REQUIRE(static_cast<int>(pts.size()) == 206);
    for (const auto& p : pts)
        CHECK(p.norm() == doctest::Approx(0.5).epsilon(1e-12));
    /* first coordinate steps a uniform grid of pitch 2r/count */
    CHECK(pts[0][0] == doctest::Approx(0.5 * (1.0 - 1.0 / 200)));
    CHECK(pts[10][0] - pts[11][0] == doctest::Approx(0.5 / 100.0));
    /* six exact axis points at the tail */
    CHECK(pts[200][0] == 0.5);
    CHECK(pts[201][0] == -0.5);
    CHECK(pts[203][1] == -0.5);
    CHECK(pts[205][2] == -0.5);
    CHECK_THROWS_AS(sphere_samples(0.0, 10), Error);
    CHECK_THROWS_AS(sphere_samples(1.0, 0), Error);
}

TEST_CASE("admissibility scan on the radius-1/2 sphere") {
    auto g = LieAlgebra::su(2);
    auto samples = sphere_samples(0.5, 2000);

    /* lambda in the l23 slot: f = (1 + 2 lambda xi1)^2, extremes on-axis. */
    auto scan = [&](double lambda) {
        Rational lq(static_cast<long long>(std::llround(lambda * 100)), 100);
        return admissible_on(su2_twist(g, 0, 0, lq), samples, 1e-6);
    };

    auto rep = scan(0.5);
    CHECK(rep.admissible);
    CHECK(rep.min_abs == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(rep.argmin[0] == doctest::Approx(-0.5));
    CHECK(rep.n_samples == 2006);
    CHECK(static_cast<int>(rep.values.size()) == 2006);

    auto bad = scan(1.01);
    CHECK_FALSE(bad.admissible);
    CHECK(bad.min_abs < 1e-6);

    CHECK_THROWS_AS(admissible_on(su2_twist(g, 0, 0, 1), {}, 1e-6), Error);
    CHECK_THROWS_AS(admissible_on(su2_twist(g, 0, 0, 1), samples, -1.0), Error);
}

TEST_CASE("affine pairs reduce to the linear form") {
    /* solvable: [e1,e2] = e2, [e1,e3] = e3 */
    LieAlgebra::Tensor c;
    c[{1, 2, 2}] = 1;
    c[{2, 1, 2}] = -1;
    c[{1, 3, 3}] = 1;
    c[{3, 1, 3}] = -1;
    auto g = LieAlgebra::create(3, {}, c, "solvable3");
    REQUIRE(g->validate().ok());

    SparseVector x{{1, 1}};
    SparseVector y{{2, 1}};
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 1000; ++trial) {
        Eigen::VectorXd xi(3);
        for (int k = 0; k < 3; ++k) xi[k] = dist(rng);
        /* [X,Y] = 0*X + 1*Y */
        double form = affine_form_value(g, x, y, 0, 1, xi);
        CHECK(form == doctest::Approx(1.0 + xi[1]).epsilon(1e-14));
        /* the determinant is the square of the affine form, so the
         * regularity verdicts coincide */
        auto t = half_wedge(g, x, y);
        double det = admissibility_determinant(t, xi);
        CHECK(det == doctest::Approx(form * form).epsilon(1e-12));
        CHECK(affine_case_check(g, x, y, 0, 1, xi) == (std::abs(det) > 1e-9));
    }
    /* the zero hyperplane: xi = -xi' / (eta . xi') */
    Eigen::VectorXd xip(3);
    xip << 0.4, 1.7, -0.3;
    Eigen::VectorXd xi0 = -xip / xip[1]; /* eta = e^2 */
    CHECK_FALSE(affine_case_check(g, x, y, 0, 1, xi0));
    CHECK(affine_case_check(g, x, y, 0, 1, Eigen::VectorXd::Zero(3)));
    /* wrong coefficients are rejected exactly */
    CHECK_THROWS_AS(affine_form_value(g, x, y, 1, 1, Eigen::VectorXd::Zero(3)),
                    Error);
    /* non-affine pair */
    auto su2 = LieAlgebra::su(2);
    CHECK_THROWS_AS(affine_form_value(su2, SparseVector{{1, 1}},
                                      SparseVector{{2, 1}}, 0, 0,
                                      Eigen::VectorXd::Zero(3)),
                    Error);
}

TEST_CASE("argument validation") {
    auto g = LieAlgebra::su(2);
    Multivector t(g, 2);
    CHECK_THROWS_AS(dressing_matrix(t, Eigen::VectorXd::Zero(2)), Error);
    Multivector bad(g, 1);
    CHECK_THROWS_AS(dressing_matrix(bad, Eigen::VectorXd::Zero(3)), Error);
    CHECK_THROWS_AS(admissibility_determinant_exact(t, {1, 2}), Error);
}
