#include <doctest.h>

#include <random>

#include "normaj/mason_shapiro.hpp"
#include "support.hpp"

using namespace normaj;

TEST_SUITE("mason_shapiro") {

TEST_CASE("operator matrix for Q = z - a") {
    Complex a{0.7, -0.3};
    ComplexPoly q({-a, Complex{1, 0}});
    TqOperator op = tq_matrix(q, 1);
    CHECK(std::abs(op.matrix(0, 0) - Complex{1, 0}) < 1e-15);
    CHECK(std::abs(op.matrix(0, 1) - (-a)) < 1e-15);
    CHECK(std::abs(op.matrix(1, 0)) == 0.0);
    CHECK(std::abs(op.matrix(1, 1) - Complex{2, 0}) < 1e-15);
}

TEST_CASE("operator matrix for Q = z^2") {
    ComplexPoly q({Complex{0, 0}, Complex{0, 0}, Complex{1, 0}});
    TqOperator m0 = tq_matrix(q, 0);
    REQUIRE(m0.matrix.rows() == 1);
    CHECK(m0.matrix(0, 0) == Complex{2, 0});

    TqOperator m1 = tq_matrix(q, 1);
    CHECK(m1.matrix(0, 0) == Complex{2, 0});
    CHECK(m1.matrix(1, 1) == Complex{6, 0});
    CHECK(m1.matrix(1, 0) == Complex{0, 0});
}

TEST_CASE("diagonal equals the rising product exactly") {
    std::mt19937_64 rng(191);
    for (std::size_t k = 1; k <= 6; ++k) {
        auto zs = testsup::random_separated_points(rng, k, 1.0, 0.1);
        ComplexPoly q = ComplexPoly::from_roots(zs);
        for (std::size_t m = 0; m <= 10; ++m) {
            TqOperator op = tq_matrix(q, m);
            for (std::size_t j = 0; j <= m; ++j) {
                double want = 1.0;
                for (std::size_t i = 1; i <= k; ++i) want *= double(j + i);
                CHECK(op.matrix(j, j).real() == want);
                CHECK(op.matrix(j, j).imag() == 0.0);
            }
            // strict upper triangularity below the diagonal
            for (std::size_t r = 0; r <= m; ++r)
                for (std::size_t c = 0; c < r; ++c) CHECK(std::abs(op.matrix(r, c)) == 0.0);
        }
    }
}

TEST_CASE("eigen polynomial closed forms") {
    Complex a{1.5, 0.5};
    ComplexPoly q({-a, Complex{1, 0}});
    ComplexPoly p1 = eigen_poly(tq_matrix(q, 1));
    REQUIRE(p1.degree() == 1);
    CHECK(std::abs(p1.coeff(0) + a) < 1e-12);
    CHECK(std::abs(p1.coeff(1) - Complex{1, 0}) < 1e-15);

    ComplexPoly zsq({Complex{0, 0}, Complex{0, 0}, Complex{1, 0}});
    ComplexPoly pz = eigen_poly(tq_matrix(zsq, 1));
    CHECK(std::abs(pz.coeff(0)) < 1e-15);
    CHECK(std::abs(pz.coeff(1) - Complex{1, 0}) < 1e-15);

    ComplexPoly p0 = eigen_poly(tq_matrix(zsq, 0));
    CHECK(p0.degree() == 0);
    CHECK(p0.coeff(0) == Complex{1, 0});
}

TEST_CASE("eigen residuals on random Q") {
    std::mt19937_64 rng(193);
    for (int trial = 0; trial < 15; ++trial) {
        std::size_t k = 1 + std::size_t(trial % 5);
        auto zs = testsup::random_separated_points(rng, k, 1.0, 0.05);
        ComplexPoly q = ComplexPoly::from_roots(zs);
        for (std::size_t m = 0; m <= 8; ++m) {
            TqOperator op = tq_matrix(q, m);
            MsZeroReport rep = ms_zero_report(q, m, 7);
            CHECK(rep.eigen_residual <= 1e-9);
        }
    }
}

TEST_CASE("zero report for Q = z - a") {
    Complex a{0.25, 0.75};
    ComplexPoly q({-a, Complex{1, 0}});
    MsZeroReport rep = ms_zero_report(q, 1, 11);
    REQUIRE(rep.w.size() == 1);
    CHECK(std::abs(rep.w[0] - a) < 1e-12);
    CHECK(rep.hull_ok);
    CHECK(rep.stochastic_feasible);
    for (const MsBatteryEntry& e : rep.battery) CHECK(std::abs(e.slack) < 1e-9);
}

TEST_CASE("zero report for Q = z^2 - 1 pins w = 0") {
    ComplexPoly q({Complex{-1, 0}, Complex{0, 0}, Complex{1, 0}});
    MsZeroReport rep = ms_zero_report(q, 1, 11);
    REQUIRE(rep.w.size() == 1);
    CHECK(std::abs(rep.w[0]) < 1e-10);
    CHECK(rep.hull_ok);
    CHECK(rep.stochastic_feasible);
    CHECK(!rep.multiple_roots_in_q);
}

TEST_CASE("zero report for Q = z^2 flags the double root but still verifies the hull") {
    ComplexPoly q({Complex{0, 0}, Complex{0, 0}, Complex{1, 0}});
    MsZeroReport rep = ms_zero_report(q, 1, 11);
    CHECK(rep.multiple_roots_in_q);
    REQUIRE(rep.w.size() == 1);
    CHECK(std::abs(rep.w[0]) < 1e-7);
    CHECK(rep.hull_ok);
}

TEST_CASE("degree-1 Q with m > 1 degrades to a flagged m-fold zero") {
    Complex a{0.4, 0.2};
    ComplexPoly q({-a, Complex{1, 0}});
    MsZeroReport rep = ms_zero_report(q, 3, 11);  // p_3 = (z-a)^3
    CHECK(rep.multiple_roots_in_pm);
    CHECK(rep.eigen_residual <= 1e-9);
    for (const Complex& w : rep.w) CHECK(std::abs(w - a) < 1e-3);
}

TEST_CASE("trivial m = 0 report") {
    ComplexPoly q({Complex{-1, 0}, Complex{0, 0}, Complex{1, 0}});
    MsZeroReport rep = ms_zero_report(q, 0, 3);
    CHECK(rep.w.empty());
    CHECK(rep.hull_ok);
    CHECK(rep.stochastic_feasible);
    CHECK(rep.pm.degree() == 0);
}

TEST_CASE("monicity is enforced") {
    ComplexPoly q({Complex{1, 0}, Complex{2, 0}});
    CHECK_THROWS_AS(tq_matrix(q, 2), NotMonic);
}

TEST_CASE("hull, battery and stochastic witness on random Q") {
    std::mt19937_64 rng(197);
    for (int trial = 0; trial < 12; ++trial) {
        std::size_t k = 2 + std::size_t(trial % 3);
        auto zs = testsup::random_separated_points(rng, k, 1.5, 0.2);
        ComplexPoly q = ComplexPoly::from_roots(zs);
        for (std::size_t m = 1; m <= 6; ++m) {
            MsZeroReport rep = ms_zero_report(q, m, 13 + std::uint64_t(trial));
            CHECK(rep.hull_ok);
            CHECK(rep.stochastic_feasible);
            for (const MsBatteryEntry& e : rep.battery) CHECK(e.normalized_slack >= -1e-9);
        }
    }
}

}  // TEST_SUITE
