#include "normaj/gauss_lucas.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace normaj {

namespace {

constexpr std::uint64_t kSchurSeed = 0x5ca1ab1e;

double spectrum_scale(std::span<const Complex> v) {
    double s = 1.0;
    for (const Complex& z : v) s = std::max(s, std::abs(z));
    return s;
}

std::vector<Complex> ones_vector(std::size_t n, double value) {
    return std::vector<Complex>(n, Complex{value, 0.0});
}

// Unit eigenvector of m for the (approximate) eigenvalue theta by shifted
// inverse iteration; deterministic starts, best residual wins.
std::vector<Complex> inverse_iteration_eigenvector(const CMatrix& m, Complex theta) {
    std::size_t n = m.rows();
    double off = 1e-8 * (1.0 + std::abs(theta));
    CMatrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= theta + Complex{off, 0.0};

    double mscale = std::max(1.0, max_abs(m));
    auto run = [&](std::vector<Complex> v) -> std::pair<std::vector<Complex>, double> {
        for (int it = 0; it < 3; ++it) {
            std::vector<Complex> next;
            try {
                next = lu_solve(shifted, v);
            } catch (const Error&) {
                return {v, 1e300};
            }
            double norm2 = 0.0;
            for (const Complex& e : next) norm2 += std::norm(e);
            double norm = std::sqrt(norm2);
            if (norm == 0.0) return {v, 1e300};
            for (Complex& e : next) e /= norm;
            v = std::move(next);
        }
        std::vector<Complex> mv = m * std::span<const Complex>(v);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(mv[i] - theta * v[i]));
        return {v, res / mscale};
    };

    double inv_sqrt = 1.0 / std::sqrt(double(n));
    auto [best, best_res] = run(ones_vector(n, inv_sqrt));
    for (std::size_t j = 0; j < n && best_res > 1e-8; ++j) {
        std::vector<Complex> e(n, Complex{0.0, 0.0});
        e[j] = Complex{1.0, 0.0};
        auto [cand, res] = run(std::move(e));
        if (res < best_res) {
            best = std::move(cand);
            best_res = res;
        }
    }
    if (best_res > 1e-5)
        throw Error("inverse iteration failed to isolate an eigenvector");
    return best;
}

// Unitary with the given unit vector as first column (Householder based).
CMatrix unitary_with_first_column(const std::vector<Complex>& v) {
    std::size_t n = v.size();
    Complex sigma = v[0];
    Complex alpha = (sigma == Complex{0.0, 0.0}) ? Complex{-1.0, 0.0} : -sigma / std::abs(sigma);
    std::vector<Complex> w = v;
    w[0] -= alpha;
    double ww = 0.0;
    for (const Complex& e : w) ww += std::norm(e);
    CMatrix h = CMatrix::identity(n);
    if (ww > 0.0)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) h(i, j) -= 2.0 * w[i] * std::conj(w[j]) / ww;
    // Column 1 of H is conj(alpha) v; absorbing the phase into the first
    // column makes it v exactly.
    for (std::size_t i = 0; i < n; ++i) h(i, 0) = v[i];
    return h;
}

bool lex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

SchurResult schur_upper_triangularize(const CMatrix& m_in) {
    if (m_in.rows() != m_in.cols()) throw ShapeMismatch("triangularization of non-square matrix");
    std::size_t n = m_in.rows();
    CMatrix q = CMatrix::identity(n);
    CMatrix t = m_in;
    for (std::size_t s = 0; s + 1 < n; ++s) {
        std::size_t r = n - s;
        CMatrix block(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) block(i, j) = t(s + i, s + j);

        std::vector<Complex> evs = roots(char_poly(block), kSchurSeed);
        std::sort(evs.begin(), evs.end(), lex_less);
        Complex theta = evs.front();
        std::vector<Complex> v = inverse_iteration_eigenvector(block, theta);
        CMatrix qs = unitary_with_first_column(v);

        CMatrix reduced = qs.adjoint() * block * qs;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) t(s + i, s + j) = reduced(i, j);
        // Rows above the active block pick up the right factor of the
        // similarity (I_s (+) qs).
        for (std::size_t i = 0; i < s; ++i) {
            std::vector<Complex> updated(r, Complex{0.0, 0.0});
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t c = 0; c < r; ++c) updated[j] += t(i, s + c) * qs(c, j);
            for (std::size_t j = 0; j < r; ++j) t(i, s + j) = updated[j];
        }

        // Accumulate q <- q (I_s (+) qs).
        CMatrix qn(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Complex acc{0.0, 0.0};
                if (j < s) {
                    acc = q(i, j);
                } else {
                    for (std::size_t c = 0; c < r; ++c) acc += q(i, s + c) * qs(c, j - s);
                }
                qn(i, j) = acc;
            }
        q = std::move(qn);
    }
    return SchurResult{std::move(q), std::move(t)};
}

GaussLucasWitness gl_witness(const ComplexPoly& p, std::uint64_t seed) {
    std::size_t n = p.degree();
    if (n < 2) throw Error("gl_witness: degree >= 2 required");
    std::vector<Complex> lambda = roots(p, seed);
    if (has_multiple_roots(p, seed))
        throw MultipleRoots("repeated root; deflate before constructing the witness");

    double inv_sqrt = 1.0 / std::sqrt(double(n));
    UnitaryFactor v = unitary_with_last_row(ones_vector(n, inv_sqrt));
    NormalModel model(v, lambda);
    CMatrix a = model.realized();

    SchurResult schur = schur_upper_triangularize(a.principal_block(n - 1));

    // W = (V1 (+) 1)* V; the squared moduli of W give the witness.
    CMatrix u1 = CMatrix::identity(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j + 1 < n; ++j) u1(i, j) = schur.q(i, j);
    CMatrix w = u1.adjoint() * v.matrix();

    GaussLucasWitness out;
    out.lambda = lambda;
    out.mu = schur.t.diag();
    Complex mean{0.0, 0.0};
    for (const Complex& z : lambda) mean += z;
    out.mu_mean = mean / double(n);
    out.w = w;

    CMatrix s1c = schur_product(w, w.conjugate());
    std::vector<std::vector<double>> s1(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s1[i][j] = s1c(i, j).real();
    out.s1 = make_witness(std::move(s1));

    for (std::size_t j = 0; j < n; ++j)
        if (std::abs(out.s1.s[n - 1][j] - 1.0 / double(n)) > 1e-9)
            throw Error("gl_witness: last witness row is not uniform to 1e-9");
    if (out.s1.row_tol > 1e-8 || out.s1.col_tol > 1e-8)
        throw Error("gl_witness: witness is not doubly stochastic to 1e-8");

    std::vector<Complex> target = out.mu;
    target.push_back(out.mu_mean);
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) acc += out.s1.s[i][j] * lambda[j];
        if (std::abs(acc - target[i]) > 1e-7)
            throw Error("gl_witness: witness does not map lambda onto (mu, mean)");
    }

    VectorFamily hull = family_from_complex(lambda);
    for (const Complex& m : out.mu) {
        double pt[2] = {m.real(), m.imag()};
        if (!point_in_hull(pt, hull).inside)
            throw Error("gl_witness: derivative root escaped the root hull");
    }
    return out;
}

namespace {

// Permutation putting subsets avoiding element n-1 first (lex order kept
// inside each block).
std::vector<std::size_t> avoiding_first_order(std::size_t n, std::size_t k) {
    auto subsets = index_subsets(n, k);
    std::vector<std::size_t> order;
    order.reserve(subsets.size());
    for (std::size_t i = 0; i < subsets.size(); ++i)
        if (subsets[i].back() != n - 1) order.push_back(i);
    for (std::size_t i = 0; i < subsets.size(); ++i)
        if (subsets[i].back() == n - 1) order.push_back(i);
    return order;
}

std::vector<Complex> shifted(std::span<const Complex> v, Complex alpha) {
    std::vector<Complex> out(v.begin(), v.end());
    for (Complex& z : out) z -= alpha;
    return out;
}

std::vector<Complex> subset_products(std::span<const Complex> v, std::size_t k) {
    std::vector<Complex> out;
    for (const auto& idx : index_subsets(v.size(), k)) {
        Complex prod{1.0, 0.0};
        for (std::size_t i : idx) prod *= v[i];
        out.push_back(prod);
    }
    return out;
}

}  // namespace

LevelKWitness sk_witness(const GaussLucasWitness& w, std::size_t k, std::uint64_t seed) {
    std::size_t n = w.lambda.size();
    if (k < 1 || k > n - 1) throw LevelOutOfRange("level outside 1..n-1");
    std::size_t b = binomial(n, k);
    if (b > 70) throw SizeExceeded("compound dimension beyond C(n,k) <= 70");
    std::size_t a = binomial(n - 1, k);

    CMatrix ck = compound(w.w, k);
    std::vector<std::size_t> order = avoiding_first_order(n, k);

    LevelKWitness out;
    out.k = k;
    out.sk.assign(b, std::vector<double>(b, 0.0));
    for (std::size_t p = 0; p < b; ++p)
        for (std::size_t q = 0; q < b; ++q)
            out.sk[p][q] = std::norm(ck(order[p], order[q]));

    double row_tol = 0.0, col_tol = 0.0;
    std::vector<double> colsum(b, 0.0);
    for (std::size_t p = 0; p < b; ++p) {
        double rs = 0.0;
        for (std::size_t q = 0; q < b; ++q) {
            rs += out.sk[p][q];
            colsum[q] += out.sk[p][q];
        }
        row_tol = std::max(row_tol, std::abs(rs - 1.0));
    }
    for (std::size_t q = 0; q < b; ++q) col_tol = std::max(col_tol, std::abs(colsum[q] - 1.0));
    out.row_tol = row_tol;
    out.col_tol = col_tol;

    double lo = 1e300, hi = -1e300, total = 0.0;
    for (std::size_t q = 0; q < b; ++q) {
        double s = 0.0;
        for (std::size_t p = a; p < b; ++p) s += out.sk[p][q];
        lo = std::min(lo, s);
        hi = std::max(hi, s);
        total += s;
    }
    out.block_row_sum = total / double(b);
    out.block_row_sum_spread = hi - lo;

    // Compound identity at seeded random shifts: the first C(n-1,k)
    // coordinates of Sk C_k(lambda - alpha) are the mu products.
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (k + 1)));
    std::uniform_real_distribution<double> box(-2.0, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        Complex alpha{box(rng), box(rng)};
        std::vector<Complex> lam_prod = subset_products(shifted(w.lambda, alpha), k);
        std::vector<Complex> mu_prod = subset_products(shifted(w.mu, alpha), k);
        double scale = 1.0;
        for (const Complex& z : lam_prod) scale = std::max(scale, std::abs(z));
        for (const Complex& z : mu_prod) scale = std::max(scale, std::abs(z));
        for (std::size_t p = 0; p < a; ++p) {
            Complex acc{0.0, 0.0};
            for (std::size_t q = 0; q < b; ++q) acc += out.sk[p][q] * lam_prod[order[q]];
            worst = std::max(worst, std::abs(acc - mu_prod[p]) / scale);
        }
    }
    out.eq_residual = worst;
    return out;
}

BlockRowSumProbe block_row_sum_probe(const GaussLucasWitness& w, std::size_t k) {
    LevelKWitness lk = sk_witness(w, k);
    std::size_t n = w.lambda.size();
    BlockRowSumProbe probe;
    probe.measured = lk.block_row_sum;
    probe.spread = lk.block_row_sum_spread;
    probe.gap_k_over_n = std::abs(lk.block_row_sum - double(k) / double(n));
    probe.gap_complement = std::abs(lk.block_row_sum - double(n - k) / double(n));
    return probe;
}

ProdeqResult prodeq_check(std::span<const Complex> lambda, std::span<const Complex> mu,
                          Complex alpha, std::size_t k) {
    if (lambda.size() > 12) throw CombinatorialBound("prodeq limited to 12 values");
    if (k < 1 || k > mu.size()) throw LevelOutOfRange("prodeq level outside 1..n-1");
    std::vector<Complex> lp = subset_products(shifted(lambda, alpha), k);
    std::vector<Complex> mp = subset_products(shifted(mu, alpha), k);
    ProdeqResult res;
    for (const Complex& z : mp) res.left += z;
    for (const Complex& z : lp) res.right += z;
    res.left /= double(mp.size());
    res.right /= double(lp.size());
    res.deviation = std::abs(res.left - res.right);
    for (const Complex& z : lp) res.scale = std::max(res.scale, std::abs(z));
    return res;
}

ConvexDescriptor ConvexDescriptor::abs_power(Complex c, double q) {
    if (!(q >= 1.0)) throw InvalidDescriptor("abs-power exponent must be >= 1");
    return ConvexDescriptor{Kind::AbsPower, c, q};
}

ConvexDescriptor ConvexDescriptor::hinge_re(Complex h, double offset) {
    return ConvexDescriptor{Kind::HingeRe, h, offset};
}

ConvexDescriptor ConvexDescriptor::exp_re(Complex h) {
    return ConvexDescriptor{Kind::ExpRe, h, 0.0};
}

double eval_convex(const ConvexDescriptor& d, Complex z) {
    switch (d.kind) {
        case ConvexDescriptor::Kind::AbsPower:
            if (!(d.param >= 1.0)) throw InvalidDescriptor("abs-power exponent must be >= 1");
            return std::pow(std::abs(z - d.anchor), d.param);
        case ConvexDescriptor::Kind::HingeRe:
            return std::max((std::conj(d.anchor) * z).real() + d.param, 0.0);
        case ConvexDescriptor::Kind::ExpRe:
            return std::exp((std::conj(d.anchor) * z).real());
    }
    throw InvalidDescriptor("unknown descriptor kind");
}

std::vector<DebruijnEntry> debruijn_check(const ComplexPoly& p, std::size_t k, Complex alpha,
                                          std::span<const ConvexDescriptor> battery,
                                          std::uint64_t seed) {
    std::size_t n = p.degree();
    if (k < 1 || k > n - 1) throw LevelOutOfRange("level outside 1..n-1");
    std::vector<Complex> lambda = roots(p, seed);
    std::vector<Complex> mu = roots(p.derivative(), seed);
    std::vector<Complex> lp = subset_products(shifted(lambda, alpha), k);
    std::vector<Complex> mp = subset_products(shifted(mu, alpha), k);

    std::vector<DebruijnEntry> out;
    out.reserve(battery.size());
    for (const ConvexDescriptor& d : battery) {
        DebruijnEntry e;
        e.descriptor = d;
        for (const Complex& z : mp) e.left += eval_convex(d, z);
        for (const Complex& z : lp) e.right += eval_convex(d, z);
        e.left /= double(mp.size());
        e.right /= double(lp.size());
        e.slack = e.right - e.left;
        e.normalized_slack = e.slack / std::max(1.0, std::abs(e.right));
        out.push_back(e);
    }
    return out;
}

SchoenbergReport schoenberg_check(std::span<const Complex> lambda, std::uint64_t seed) {
    std::size_t n = lambda.size();
    if (n < 2) throw Error("schoenberg_check: need n >= 2");
    Complex total{0.0, 0.0};
    double abs_sum = 0.0;
    for (const Complex& z : lambda) {
        total += z;
        abs_sum += std::abs(z);
    }
    if (std::abs(total) > 1e-9 * std::max(1.0, abs_sum))
        throw NotCentered("lambda must sum to zero");

    ComplexPoly p = ComplexPoly::from_roots(lambda);
    std::vector<Complex> mu = roots(p.derivative(), seed);

    SchoenbergReport rep;
    double sl = 0.0, sm = 0.0;
    for (const Complex& z : lambda) sl += std::norm(z);
    for (const Complex& z : mu) sm += std::norm(z);
    rep.lhs = double(n) * sm;
    rep.rhs = double(n - 2) * sl;
    rep.slack = rep.rhs - rep.lhs;
    rep.scale = std::max(1.0, sl);
    rep.equality = rep.slack <= 1e-7 * rep.scale;

    // Rank of the second-moment matrix of unit directions decides
    // collinearity (all lambda on one line through the centroid).
    double mxx = 0.0, mxy = 0.0, myy = 0.0;
    std::size_t used = 0;
    double mod_scale = spectrum_scale(lambda);
    for (const Complex& z : lambda) {
        double az = std::abs(z);
        if (az <= 1e-12 * mod_scale) continue;
        double dx = z.real() / az, dy = z.imag() / az;
        mxx += dx * dx;
        mxy += dx * dy;
        myy += dy * dy;
        ++used;
    }
    if (used == 0) {
        rep.collinear = true;
        return rep;
    }
    double tr = mxx + myy;
    double dt = mxx * myy - mxy * mxy;
    double lam_min = 0.5 * (tr - std::sqrt(std::max(0.0, tr * tr - 4.0 * dt)));
    rep.collinear = lam_min <= 1e-8 * double(used);
    return rep;
}

DftWitness dft_normal_witness(std::span<const Complex> lambda) {
    std::size_t n = lambda.size();
    if (n < 2) throw Error("dft_normal_witness: need n >= 2");
    Complex total{0.0, 0.0};
    double abs_sum = 0.0;
    for (const Complex& z : lambda) {
        total += z;
        abs_sum += std::abs(z);
    }
    if (std::abs(total) > 1e-9 * std::max(1.0, abs_sum))
        throw NotCentered("lambda must sum to zero");

    double inv_sqrt = 1.0 / std::sqrt(double(n));
    CMatrix u(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j) {
            double angle = 2.0 * M_PI * double((r + 1) * j % n) / double(n);
            u(r, j) = inv_sqrt * Complex{std::cos(angle), std::sin(angle)};
        }
    NormalModel model(UnitaryFactor(u), std::vector<Complex>(lambda.begin(), lambda.end()));
    CMatrix a = model.realized();

    DftWitness out;
    out.a = a;
    double sl = 0.0;
    for (const Complex& z : lambda) sl += std::norm(z);
    out.scale = std::max(1.0, sl);
    for (std::size_t i = 0; i < n; ++i)
        out.diagonal_defect = std::max(out.diagonal_defect, std::abs(a(i, i)));
    out.identity_slack = std::abs(double(n) * frobenius_sq(a.principal_block(n - 1)) -
                                  double(n - 2) * frobenius_sq(a));

    // The submatrix characteristic polynomial equals p'/n coefficientwise.
    ComplexPoly got = char_poly(a.principal_block(n - 1));
    ComplexPoly dp = ComplexPoly::from_roots(lambda).derivative();
    for (std::size_t j = 0; j < n; ++j) {
        Complex want = dp.coeff(j) / double(n);
        out.charpoly_residual = std::max(
            out.charpoly_residual, std::abs(got.coeff(j) - want) / (1.0 + std::abs(want)));
    }
    return out;
}

MajorizationReport diagonal_majorization_probe(const NormalModel& model) {
    std::size_t n = model.dim();
    const CMatrix& u = model.unitary().matrix();
    CMatrix a = model.realized();

    std::vector<std::vector<double>> s(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s[i][j] = std::norm(u(i, j));
    BistochasticWitness witness = make_witness(std::move(s));
    if (witness.row_tol > 1e-9 || witness.col_tol > 1e-9)
        throw Error("diagonal probe: unitary-stochastic matrix defect above 1e-9");

    for (std::size_t i = 0; i < n; ++i) {
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) acc += witness.s[i][j] * model.spectrum()[j];
        if (std::abs(acc - a(i, i)) > 1e-9)
            throw Error("diagonal probe: witness does not map spectrum to diagonal");
    }

    MajorizationReport rep;
    rep.prec_ds = true;
    rep.witness = std::move(witness);
    return rep;
}

}  // namespace normaj
