#include <doctest.h>

#include <random>

#include "normaj/gauss_lucas.hpp"
#include "support.hpp"

using namespace normaj;

namespace {

ComplexPoly cubic() {  // z^3 - z
    return ComplexPoly({Complex{0, 0}, Complex{-1, 0}, Complex{0, 0}, Complex{1, 0}});
}

double witness_map_gap(const GaussLucasWitness& w) {
    std::size_t n = w.lambda.size();
    std::vector<Complex> target = w.mu;
    target.push_back(w.mu_mean);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc{0, 0};
        for (std::size_t j = 0; j < n; ++j) acc += w.s1.s[i][j] * w.lambda[j];
        worst = std::max(worst, std::abs(acc - target[i]));
    }
    return worst;
}

}  // namespace

TEST_SUITE("gauss_lucas") {

TEST_CASE("schur triangularization by deflation") {
    std::mt19937_64 rng(131);
    for (int trial = 0; trial < 8; ++trial) {
        std::size_t n = 2 + std::size_t(trial % 6);
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = testsup::random_in_box(rng, 2.0);
        SchurResult s = schur_upper_triangularize(m);
        CHECK(linf_diff(s.q.adjoint() * s.q, CMatrix::identity(n)) < 1e-10);
        CMatrix t = s.q.adjoint() * m * s.q;
        CHECK(linf_diff(t, s.t) < 1e-8);
        double below = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) below = std::max(below, std::abs(s.t(i, j)));
        CHECK(below < 1e-8 * std::max(1.0, max_abs(m)));
    }
}

TEST_CASE("witness for z^2 - 1 is the forced half matrix") {
    ComplexPoly p({Complex{-1, 0}, Complex{0, 0}, Complex{1, 0}});
    GaussLucasWitness w = gl_witness(p, 1);
    REQUIRE(w.lambda.size() == 2);
    CHECK(std::abs(w.mu[0]) < 1e-10);
    CHECK(std::abs(w.mu_mean) < 1e-12);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(w.s1.s[i][j] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("witness for z^3 - z") {
    GaussLucasWitness w = gl_witness(cubic(), 1);
    REQUIRE(w.lambda.size() == 3);
    for (std::size_t j = 0; j < 3; ++j)
        CHECK(w.s1.s[2][j] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(witness_map_gap(w) <= 1e-7);
    CHECK(std::abs(w.mu_mean) < 1e-12);
    double r = 1.0 / std::sqrt(3.0);
    CHECK(testsup::match_multisets(w.mu, {{r, 0.0}, {-r, 0.0}}, 1e-8));
}

TEST_CASE("witness on collinear real roots stays real") {
    std::vector<Complex> rs{{-2, 0}, {0.5, 0}, {3, 0}, {1, 0}};
    GaussLucasWitness w = gl_witness(ComplexPoly::from_roots(rs), 3);
    for (const Complex& m : w.mu) CHECK(std::abs(m.imag()) < 1e-8);
    Complex acc{0, 0};
    for (std::size_t j = 0; j < 4; ++j) acc += w.s1.s[0][j] * w.lambda[j];
    CHECK(std::abs(acc.imag()) < 1e-8);
}

TEST_CASE("witness rejects repeated roots") {
    std::vector<Complex> rs{{1, 0}, {1, 0}, {2, 0}};
    CHECK_THROWS_AS(gl_witness(ComplexPoly::from_roots(rs), 1), MultipleRoots);
}

TEST_CASE("level-k witnesses on the cubic") {
    GaussLucasWitness w = gl_witness(cubic(), 1);

    LevelKWitness l1 = sk_witness(w, 1);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(std::abs(l1.sk[i][j] - w.s1.s[i][j]) < 1e-12);

    LevelKWitness l2 = sk_witness(w, 2);
    CHECK(l2.row_tol < 1e-8);
    CHECK(l2.col_tol < 1e-8);
    CHECK(l2.block_row_sum_spread < 1e-7);
    CHECK(l2.eq_residual <= 1e-6);

    CHECK_THROWS_AS(sk_witness(w, 3), LevelOutOfRange);
}

TEST_CASE("level witness size guard") {
    std::mt19937_64 rng(141);
    auto pts = testsup::random_separated_points(rng, 9, 2.0, 0.25);
    GaussLucasWitness w = gl_witness(ComplexPoly::from_roots(pts), 5);
    CHECK_THROWS_AS(sk_witness(w, 4), SizeExceeded);  // C(9,4) = 126 > 70
    CHECK(sk_witness(w, 2).eq_residual <= 1e-6);      // C(9,2) = 36 stays in range
}

TEST_CASE("block row sums match k/n, refuting the complement candidate") {
    std::mt19937_64 rng(137);
    for (int trial = 0; trial < 6; ++trial) {
        std::size_t deg = 4 + std::size_t(trial % 3);
        auto pts = testsup::random_separated_points(rng, deg, 2.0, 0.3);
        GaussLucasWitness w = gl_witness(ComplexPoly::from_roots(pts), 7);
        for (std::size_t k = 1; k + 1 <= deg - 1; ++k) {
            BlockRowSumProbe probe = block_row_sum_probe(w, k);
            CHECK(probe.spread < 1e-7);
            CHECK(probe.gap_k_over_n < 1e-7);
            if (2 * k != deg)  // candidates coincide at k = n/2
                CHECK(probe.gap_complement > 1e-2);
        }
    }
}

TEST_CASE("level n-1 products land in conv(0, p'(lambda_j))") {
    std::mt19937_64 rng(139);
    for (int trial = 0; trial < 6; ++trial) {
        std::size_t deg = 3 + std::size_t(trial % 4);
        auto pts = testsup::random_separated_points(rng, deg, 2.0, 0.3);
        ComplexPoly p = ComplexPoly::from_roots(pts);
        ComplexPoly dp = p.derivative();
        auto mu = roots(dp, 11);
        for (const Complex& lam : pts) {
            Complex prod{1, 0};
            for (const Complex& m : mu) prod *= (lam - m);
            Complex anchor = dp(lam);
            VectorFamily seg = family_from_complex(std::vector<Complex>{{0, 0}, anchor});
            double pt[2] = {prod.real(), prod.imag()};
            CHECK(point_in_hull(pt, seg).inside);
        }
    }
}

TEST_CASE("prodeq identities") {
    // k=1, alpha=0: mean of mu equals mean of lambda.
    std::vector<Complex> lam{{1, 0}, {-1, 0}, {0, 0}};
    double r = 1.0 / std::sqrt(3.0);
    std::vector<Complex> mu{{r, 0}, {-r, 0}};
    ProdeqResult m1 = prodeq_check(lam, mu, Complex{0, 0}, 1);
    CHECK(m1.deviation < 1e-14);

    // k=2, alpha=0 on z^3 - z: both averages equal -1/3.
    ProdeqResult m2 = prodeq_check(lam, mu, Complex{0, 0}, 2);
    CHECK(std::abs(m2.left - Complex{-1.0 / 3.0, 0.0}) < 1e-12);
    CHECK(std::abs(m2.right - Complex{-1.0 / 3.0, 0.0}) < 1e-12);
    CHECK(m2.deviation < 1e-12);

    // Random quintic, k=3, random alpha.
    std::mt19937_64 rng(149);
    auto pts = testsup::random_separated_points(rng, 5, 2.0, 0.3);
    ComplexPoly p = ComplexPoly::from_roots(pts);
    auto dmu = roots(p.derivative(), 13);
    Complex alpha = testsup::random_in_box(rng, 2.0);
    ProdeqResult m3 = prodeq_check(pts, dmu, alpha, 3);
    CHECK(m3.deviation <= 1e-8 * m3.scale);
}

TEST_CASE("debruijn battery on hand values") {
    auto entries = debruijn_check(
        cubic(), 1, Complex{0, 0},
        std::vector<ConvexDescriptor>{ConvexDescriptor::abs_power(Complex{0, 0}, 2.0)});
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].left == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(entries[0].right == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(entries[0].slack >= -1e-9);

    // Affine-like member at k=1, alpha=0: means agree, slack vanishes
    // (hinge with the zero direction is constant).
    auto flat = debruijn_check(
        cubic(), 1, Complex{0, 0},
        std::vector<ConvexDescriptor>{ConvexDescriptor::hinge_re(Complex{0, 0}, 1.0)});
    CHECK(std::abs(flat[0].slack) < 1e-12);

    // z^4 - 1 at k=2 with f = |z| keeps a strictly positive gap.
    ComplexPoly quartic({Complex{-1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{0, 0}, Complex{1, 0}});
    auto gap = debruijn_check(
        quartic, 2, Complex{0, 0},
        std::vector<ConvexDescriptor>{ConvexDescriptor::abs_power(Complex{0, 0}, 1.0)});
    CHECK(gap[0].left == doctest::Approx(0.0));
    CHECK(gap[0].right == doctest::Approx(1.0));

    CHECK_THROWS_AS(ConvexDescriptor::abs_power(Complex{0, 0}, 0.5), InvalidDescriptor);
}

TEST_CASE("debruijn slacks on random polynomials") {
    std::mt19937_64 rng(151);
    for (int trial = 0; trial < 8; ++trial) {
        std::size_t deg = 3 + std::size_t(trial % 5);
        auto pts = testsup::random_separated_points(rng, deg, 2.0, 0.25);
        ComplexPoly p = ComplexPoly::from_roots(pts);
        Complex alpha = testsup::random_in_box(rng, 1.0);
        double prodmod = std::pow(5.0, double(deg));
        std::vector<ConvexDescriptor> battery{
            ConvexDescriptor::abs_power(testsup::random_in_box(rng, 1.0), 1.0),
            ConvexDescriptor::abs_power(testsup::random_in_box(rng, 1.0), 2.0),
            ConvexDescriptor::abs_power(Complex{0, 0}, 3.0),
            ConvexDescriptor::hinge_re(Complex{0.3, 0.2}, 0.5),
            ConvexDescriptor::exp_re(Complex{1.0 / prodmod, 0.5 / prodmod}),
        };
        for (std::size_t k = 1; k < deg; ++k)
            for (const DebruijnEntry& e : debruijn_check(p, k, alpha, battery))
                CHECK(e.normalized_slack >= -1e-9);
    }
}

TEST_CASE("schoenberg closed forms") {
    std::vector<Complex> real3{{1, 0}, {-1, 0}, {0, 0}};
    SchoenbergReport a = schoenberg_check(real3);
    CHECK(a.lhs == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(a.rhs == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(a.collinear);
    CHECK(a.equality);

    std::vector<Complex> tri{{1, 0}, {0, 1}, {-1, -1}};
    SchoenbergReport b = schoenberg_check(tri);
    CHECK(b.lhs == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(b.rhs == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(b.slack == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(!b.collinear);
    CHECK(!b.equality);

    std::vector<Complex> off{{1, 0}, {2, 0}};
    CHECK_THROWS_AS(schoenberg_check(off), NotCentered);
}

TEST_CASE("schoenberg equality is rotation and scale invariant on lines") {
    std::mt19937_64 rng(157);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 3 + std::size_t(trial % 5);
        std::vector<double> xs(n);
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            xs[i] = d(rng);
            total += xs[i];
        }
        xs[n - 1] = -total;  // centered real set
        Complex rot = std::polar(0.5 + std::abs(d(rng)), ang(rng));
        std::vector<Complex> lam(n);
        for (std::size_t i = 0; i < n; ++i) lam[i] = rot * Complex{xs[i], 0.0};
        SchoenbergReport rep = schoenberg_check(lam);
        CHECK(rep.collinear);
        CHECK(rep.equality);
        CHECK(rep.slack >= -1e-9);
        CHECK(std::abs(rep.slack) <= 1e-7 * rep.scale);
    }
}

TEST_CASE("schoenberg random centered sets") {
    std::mt19937_64 rng(163);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 3 + std::size_t(trial % 6);
        std::vector<Complex> lam(n);
        Complex total{0, 0};
        for (std::size_t i = 0; i + 1 < n; ++i) {
            lam[i] = testsup::random_in_box(rng, 2.0);
            total += lam[i];
        }
        lam[n - 1] = -total;
        SchoenbergReport rep = schoenberg_check(lam);
        CHECK(rep.slack >= -1e-9);
        CHECK(rep.collinear == rep.equality);
    }
}

TEST_CASE("dft witness closed forms") {
    std::vector<Complex> pm1{{1, 0}, {-1, 0}};
    DftWitness w = dft_normal_witness(pm1);
    CHECK(std::abs(w.a(0, 0)) < 1e-12);
    CHECK(std::abs(w.a(1, 1)) < 1e-12);
    CHECK(std::abs(w.a(0, 1) - Complex{1, 0}) < 1e-12);
    CHECK(std::abs(w.a(1, 0) - Complex{1, 0}) < 1e-12);
    CHECK(w.identity_slack < 1e-12);

    // Cube roots of unity produce the cyclic shift.
    Complex om = std::polar(1.0, 2.0 * M_PI / 3.0);
    std::vector<Complex> cube{{1, 0}, om, om * om};
    DftWitness c = dft_normal_witness(cube);
    // shift pattern: a_{k,j} = 1 when k - j == 2 mod 3
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t j = 0; j < 3; ++j) {
            double expect = ((3 + k - j) % 3 == 2) ? 1.0 : 0.0;
            CHECK(std::abs(c.a(k, j) - Complex{expect, 0.0}) < 1e-12);
        }

    std::vector<Complex> line{{1, 0}, {-1, 0}, {0, 0}};
    DftWitness l = dft_normal_witness(line);
    CHECK(l.identity_slack <= 1e-10);
    CHECK(l.charpoly_residual <= 1e-7);
    CHECK(l.diagonal_defect <= 1e-10);

    std::vector<Complex> off{{1, 0}, {1, 0}};
    CHECK_THROWS_AS(dft_normal_witness(off), NotCentered);
}

TEST_CASE("dft witness matches the circulant closed form") {
    // A = (1/n) (r(eps^{k-j})) with r(z) = sum_j lambda_j z^{j-1}.
    std::mt19937_64 rng(165);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 2 + std::size_t(trial % 7);
        std::vector<Complex> lam(n);
        Complex total{0, 0};
        for (std::size_t i = 0; i + 1 < n; ++i) {
            lam[i] = testsup::random_in_box(rng, 2.0);
            total += lam[i];
        }
        lam[n - 1] = -total;
        DftWitness w = dft_normal_witness(lam);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t e = (n + k - j) % n;  // eps^{(k+1)-(j+1)}
                Complex arg = std::polar(1.0, 2.0 * M_PI * double(e) / double(n));
                Complex r{0, 0};
                Complex pw{1, 0};
                for (std::size_t t = 0; t < n; ++t) {
                    r += lam[t] * pw;
                    pw *= arg;
                }
                CHECK(std::abs(w.a(k, j) - r / double(n)) < 1e-10);
            }
    }
}

TEST_CASE("dft witness identity on random centered sets") {
    std::mt19937_64 rng(167);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 2 + std::size_t(trial % 9);
        std::vector<Complex> lam(n);
        Complex total{0, 0};
        for (std::size_t i = 0; i + 1 < n; ++i) {
            lam[i] = testsup::random_in_box(rng, 3.0);
            total += lam[i];
        }
        lam[n - 1] = -total;
        DftWitness w = dft_normal_witness(lam);
        CHECK(w.identity_slack <= 1e-8 * w.scale);
        CHECK(w.diagonal_defect <= 1e-10 * w.scale);
        if (n >= 2) CHECK(w.charpoly_residual <= 1e-7);
    }
}

TEST_CASE("diagonal majorization probe") {
    // Diagonal model: the witness is the identity.
    NormalModel diag(UnitaryFactor(CMatrix::identity(3)), {{1, 0}, {2, 0}, {0, 1}});
    MajorizationReport rep = diagonal_majorization_probe(diag);
    REQUIRE(*rep.prec_ds);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(rep.witness->s[i][j] == doctest::Approx(i == j ? 1.0 : 0.0));

    // Half-half 2x2 with spectrum (0,2): diagonal (1,1).
    double s = 1.0 / std::sqrt(2.0);
    NormalModel half(unitary_with_last_row(std::vector<Complex>{{s, 0}, {s, 0}}), {{0, 0}, {2, 0}});
    MajorizationReport rep2 = diagonal_majorization_probe(half);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(rep2.witness->s[i][j] == doctest::Approx(0.5).epsilon(1e-12));

    // Trace invariance: the diagonal mean equals the spectral mean.
    std::mt19937_64 rng(173);
    CMatrix u = testsup::random_unitary(rng, 4);
    std::vector<Complex> spec{{1, 1}, {-2, 0}, {0.5, -1}, {3, 0.25}};
    NormalModel any(UnitaryFactor(u), spec);
    CMatrix a = any.realized();
    Complex dmean{0, 0}, smean{0, 0};
    for (std::size_t i = 0; i < 4; ++i) {
        dmean += a(i, i);
        smean += spec[i];
    }
    CHECK(std::abs(dmean - smean) < 1e-10);
    CHECK(*diagonal_majorization_probe(any).prec_ds);
}

TEST_CASE("gl witness invariants on random polynomials with random shifts") {
    std::mt19937_64 rng(179);
    for (int trial = 0; trial < 6; ++trial) {
        std::size_t deg = 3 + std::size_t(trial);
        auto pts = testsup::random_separated_points(rng, deg, 2.0, 0.3);
        ComplexPoly p = ComplexPoly::from_roots(pts);
        GaussLucasWitness w = gl_witness(p, 19 + std::uint64_t(trial));
        CHECK(w.s1.row_tol <= 1e-8);
        CHECK(w.s1.col_tol <= 1e-8);
        CHECK(witness_map_gap(w) <= 1e-7);
        for (std::size_t k = 1; k < deg; ++k) {
            LevelKWitness lk = sk_witness(w, k, 23);
            CHECK(lk.eq_residual <= 1e-6);
            CHECK(lk.row_tol <= 1e-8);
            CHECK(lk.col_tol <= 1e-8);
            CHECK(lk.block_row_sum_spread <= 1e-7);
        }
        auto mu = roots(p.derivative(), 29);
        for (int a = 0; a < 3; ++a) {
            Complex alpha = testsup::random_in_box(rng, 2.0);
            for (std::size_t k = 1; k < deg; ++k) {
                ProdeqResult pr = prodeq_check(pts, mu, alpha, k);
                CHECK(pr.deviation <= 1e-8 * pr.scale);
            }
        }
    }
}

}  // TEST_SUITE
