#include "normaj/mason_shapiro.hpp"

#include <algorithm>
#include <cmath>

#include "normaj/majorization.hpp"

namespace normaj {

TqOperator tq_matrix(const ComplexPoly& q, std::size_t m) {
    if (q.degree() < 1) throw Error("tq_matrix: Q must have degree >= 1");
    if (std::abs(q.leading() - Complex{1.0, 0.0}) > 1e-12)
        throw NotMonic("Q must be monic");
    std::size_t k = q.degree();

    CMatrix mat(m + 1, m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        // Column j: coefficients of (Q z^j)^(k), truncated to degree <= m.
        std::vector<Complex> c(q.coeffs().size() + j, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < q.coeffs().size(); ++i) c[i + j] = q.coeffs()[i];
        for (std::size_t d = 0; d < k; ++d) {
            for (std::size_t i = 1; i < c.size(); ++i) c[i - 1] = c[i] * double(i);
            c.pop_back();
        }
        for (std::size_t i = 0; i < c.size() && i <= m; ++i) mat(i, j) = c[i];
    }
    return TqOperator{q, m, std::move(mat)};
}

double tq_eigenvalue(std::size_t m, std::size_t k) {
    double acc = 1.0;
    for (std::size_t i = 1; i <= k; ++i) acc *= double(m + i);
    return acc;
}

ComplexPoly eigen_poly(const TqOperator& op) {
    std::size_t m = op.m;
    double lam = tq_eigenvalue(m, op.q.degree());
    std::vector<Complex> c(m + 1, Complex{0.0, 0.0});
    c[m] = Complex{1.0, 0.0};
    for (std::size_t i = m; i-- > 0;) {
        Complex acc{0.0, 0.0};
        for (std::size_t j = i + 1; j <= m; ++j) acc += op.matrix(i, j) * c[j];
        c[i] = -acc / (op.matrix(i, i) - lam);
    }
    return ComplexPoly(std::move(c));
}

namespace {

std::vector<ConvexDescriptor> ms_battery(std::span<const Complex> z) {
    double mod = 1.0;
    Complex mean{0.0, 0.0};
    for (const Complex& v : z) {
        mod = std::max(mod, std::abs(v));
        mean += v;
    }
    if (!z.empty()) mean /= double(z.size());
    Complex h{1.0 / (1.0 + mod), 0.0};
    return {
        ConvexDescriptor::abs_power(Complex{0.0, 0.0}, 1.0),
        ConvexDescriptor::abs_power(Complex{0.0, 0.0}, 2.0),
        ConvexDescriptor::abs_power(mean, 2.0),
        ConvexDescriptor::hinge_re(h, 0.0),
        ConvexDescriptor::exp_re(h),
    };
}

}  // namespace

MsZeroReport ms_zero_report(const ComplexPoly& q, std::size_t m, std::uint64_t seed) {
    TqOperator op = tq_matrix(q, m);
    std::size_t k = q.degree();

    MsZeroReport rep;
    rep.seed = seed;
    rep.pm = eigen_poly(op);

    // Residual of the eigen relation measured on coefficient vectors.
    {
        std::vector<Complex> c(m + 1, Complex{0.0, 0.0});
        for (std::size_t i = 0; i <= m && i < rep.pm.coeffs().size(); ++i)
            c[i] = rep.pm.coeffs()[i];
        std::vector<Complex> tc = op.matrix * std::span<const Complex>(c);
        double lam = tq_eigenvalue(m, k);
        double scale = std::max(1.0, lam);
        for (std::size_t i = 0; i <= m; ++i)
            rep.eigen_residual =
                std::max(rep.eigen_residual, std::abs(tc[i] - lam * c[i]) / scale);
    }

    rep.z = roots(q, seed);
    rep.multiple_roots_in_q = has_multiple_roots(q, seed);

    if (m == 0) return rep;  // p_0 = 1 has no zeros; every check is vacuous

    rep.w = roots(rep.pm, seed);
    rep.multiple_roots_in_pm = has_multiple_roots(rep.pm, seed);

    VectorFamily hull = family_from_complex(rep.z);
    for (const Complex& wj : rep.w) {
        double pt[2] = {wj.real(), wj.imag()};
        bool inside = point_in_hull(pt, hull).inside;
        rep.hull_per_point.push_back(inside);
        rep.hull_ok = rep.hull_ok && inside;
    }

    for (const ConvexDescriptor& d : ms_battery(rep.z)) {
        MsBatteryEntry e;
        e.descriptor = d;
        for (const Complex& wj : rep.w) e.left += eval_convex(d, wj);
        for (const Complex& zj : rep.z) e.right += eval_convex(d, zj);
        e.left /= double(m);
        e.right /= double(k);
        e.slack = e.right - e.left;
        e.normalized_slack = e.slack / std::max(1.0, std::abs(e.right));
        rep.battery.push_back(e);
    }

    // Row-stochastic S (m x k) with column sums m/k and w = S z.
    LPProblem prob;
    prob.vars = m * k;
    std::size_t rows = m + k + 2 * m;
    prob.a.assign(rows, std::vector<double>(prob.vars, 0.0));
    prob.b.assign(rows, 0.0);
    std::size_t r = 0;
    for (std::size_t i = 0; i < m; ++i, ++r) {
        for (std::size_t j = 0; j < k; ++j) prob.a[r][i * k + j] = 1.0;
        prob.b[r] = 1.0;
    }
    for (std::size_t j = 0; j < k; ++j, ++r) {
        for (std::size_t i = 0; i < m; ++i) prob.a[r][i * k + j] = 1.0;
        prob.b[r] = double(m) / double(k);
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) prob.a[r][i * k + j] = rep.z[j].real();
        prob.b[r++] = rep.w[i].real();
        for (std::size_t j = 0; j < k; ++j) prob.a[r][i * k + j] = rep.z[j].imag();
        prob.b[r++] = rep.w[i].imag();
    }
    LPOutcome lp = lp_solve(prob);
    rep.stochastic_feasible = lp.feasible;
    rep.lp_phase1_objective = lp.phase1_objective;
    return rep;
}

}  // namespace normaj
