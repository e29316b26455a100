#include "normaj/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "normaj/linalg.hpp"

namespace normaj {

namespace {

constexpr double kFeasibleObjective = 1e-7;
constexpr double kPivotEps = 1e-11;
constexpr std::size_t kMaxRows = 200;
constexpr std::size_t kMaxVars = 400;

std::vector<double> family_total(const VectorFamily& f) {
    std::vector<double> t(f.dim, 0.0);
    for (const auto& p : f.points)
        for (std::size_t d = 0; d < f.dim; ++d) t[d] += p[d];
    return t;
}

}  // namespace

VectorFamily::VectorFamily(std::size_t d, std::vector<std::vector<double>> pts)
    : dim(d), points(std::move(pts)) {
    if (points.empty()) throw Error("VectorFamily: empty family");
    for (const auto& p : points) {
        if (p.size() != dim) throw ShapeMismatch("VectorFamily: point dimension mismatch");
        for (double v : p)
            if (!std::isfinite(v)) throw Error("VectorFamily: non-finite coordinate");
    }
}

VectorFamily family_from_complex(std::span<const std::complex<double>> zs) {
    std::vector<std::vector<double>> pts;
    pts.reserve(zs.size());
    for (const auto& z : zs) pts.push_back({z.real(), z.imag()});
    return VectorFamily(2, std::move(pts));
}

BistochasticWitness make_witness(std::vector<std::vector<double>> s) {
    BistochasticWitness w;
    w.s = std::move(s);
    std::size_t m = w.s.size();
    std::vector<double> colsum(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double rowsum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            rowsum += w.s[i][j];
            colsum[j] += w.s[i][j];
        }
        w.row_tol = std::max(w.row_tol, std::abs(rowsum - 1.0));
    }
    for (std::size_t j = 0; j < m; ++j) w.col_tol = std::max(w.col_tol, std::abs(colsum[j] - 1.0));
    return w;
}

LPOutcome lp_solve(const LPProblem& prob) {
    std::size_t m = prob.a.size();
    std::size_t n = prob.vars;
    if (m > kMaxRows || n > kMaxVars)
        throw SizeExceeded("LP beyond desk-scale bounds (rows <= 200, vars <= 400)");
    if (prob.b.size() != m) throw ShapeMismatch("LP rhs size");
    for (const auto& r : prob.a)
        if (r.size() != n) throw ShapeMismatch("LP row size");

    // Sign-normalize so the rhs is nonnegative, remembering the flips for
    // the Farkas certificate.
    std::vector<double> flip(m, 1.0);
    std::size_t width = n + m + 1;  // original vars, artificials, rhs
    std::vector<std::vector<double>> t(m, std::vector<double>(width, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        flip[i] = (prob.b[i] < 0.0) ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = flip[i] * prob.a[i][j];
        t[i][n + i] = 1.0;
        t[i][width - 1] = flip[i] * prob.b[i];
    }

    // Phase-1 objective row: minimize the sum of artificials.  Reduced
    // costs start as the negated column sums over the constraint rows.
    std::vector<double> cost(width, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) cost[j] -= t[i][j];
    for (std::size_t i = 0; i < m; ++i) cost[width - 1] -= t[i][width - 1];

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    const std::size_t max_pivots = 50 * (m + n) + 1000;
    bool optimal = false;
    for (std::size_t iter = 0; iter < max_pivots; ++iter) {
        // Bland: entering column = lowest index with negative reduced cost.
        std::size_t enter = width;
        for (std::size_t j = 0; j + 1 < width; ++j) {
            if (cost[j] < -kPivotEps) { enter = j; break; }
        }
        if (enter == width) { optimal = true; break; }

        std::size_t leave = m;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= kPivotEps) continue;
            double ratio = t[i][width - 1] / t[i][enter];
            if (leave == m || ratio < best_ratio - 1e-15 ||
                (std::abs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m)
            throw Error("lp_solve: unbounded phase-1 problem (inconsistent state)");

        double piv = t[leave][enter];
        for (std::size_t j = 0; j < width; ++j) t[leave][j] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            double f = t[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
        }
        double f = cost[enter];
        if (f != 0.0)
            for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t[leave][j];
        basis[leave] = enter;
    }

    if (!optimal) throw Error("lp_solve: pivot limit reached before optimality");

    double objective = -cost[width - 1];
    LPOutcome out;
    out.phase1_objective = std::max(0.0, objective);

    if (objective > kFeasibleObjective) {
        out.feasible = false;
        // Simplex multipliers: y_i = 1 - (reduced cost of artificial i),
        // mapped back through the row sign flips.
        out.farkas.resize(m);
        for (std::size_t i = 0; i < m; ++i) out.farkas[i] = flip[i] * (1.0 - cost[n + i]);
        return out;
    }

    out.feasible = true;
    out.solution.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) out.solution[basis[i]] = t[i][width - 1];

    auto residual_of = [&](const std::vector<double>& x) {
        double r = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double s = -prob.b[i];
            for (std::size_t j = 0; j < n; ++j) s += prob.a[i][j] * x[j];
            r = std::max(r, std::abs(s));
        }
        return r;
    };
    out.residual = residual_of(out.solution);

    // Refine by re-solving for the basic variables against the original
    // data; keep the tableau values if the basis solve does not help.
    if (out.residual > 1e-12 && m <= 64) {
        CMatrix bmat(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t c = 0; c < m; ++c) {
                std::size_t j = basis[c];
                bmat(i, c) = (j < n) ? Complex(prob.a[i][j] , 0.0)
                                     : Complex((i == j - n) ? flip[i] : 0.0, 0.0);
            }
        std::vector<Complex> rhs(m);
        for (std::size_t i = 0; i < m; ++i) rhs[i] = Complex(prob.b[i], 0.0);
        try {
            std::vector<Complex> xb = lu_solve(bmat, rhs);
            std::vector<double> refined(n, 0.0);
            bool sane = true;
            for (std::size_t c = 0; c < m; ++c) {
                double v = xb[c].real();
                if (basis[c] < n) {
                    if (v < -1e-10) { sane = false; break; }
                    refined[basis[c]] = v;
                } else if (std::abs(v) > 1e-9) {
                    sane = false;
                    break;
                }
            }
            if (sane) {
                double r2 = residual_of(refined);
                if (r2 < out.residual) {
                    out.solution = std::move(refined);
                    out.residual = r2;
                }
            }
        } catch (const Error&) {
            // singular refinement basis: tableau solution stands
        }
    }
    return out;
}

std::optional<std::vector<double>> lp_feasible(const LPProblem& prob) {
    LPOutcome out = lp_solve(prob);
    if (!out.feasible) return std::nullopt;
    return out.solution;
}

HullResult point_in_hull(std::span<const double> p, const VectorFamily& pts) {
    std::size_t n = pts.dim;
    if (p.size() != n) throw ShapeMismatch("point dimension differs from family");
    std::size_t cnt = pts.size();
    LPProblem prob;
    prob.vars = cnt;
    prob.a.assign(n + 1, std::vector<double>(cnt, 0.0));
    prob.b.assign(n + 1, 0.0);
    for (std::size_t d = 0; d < n; ++d) {
        for (std::size_t i = 0; i < cnt; ++i) prob.a[d][i] = pts.points[i][d];
        prob.b[d] = p[d];
    }
    for (std::size_t i = 0; i < cnt; ++i) prob.a[n][i] = 1.0;
    prob.b[n] = 1.0;

    LPOutcome out = lp_solve(prob);
    HullResult res;
    res.inside = out.feasible;
    if (out.feasible) {
        res.coefficients = std::move(out.solution);
    } else {
        res.direction.assign(out.farkas.begin(), out.farkas.begin() + long(n));
    }
    return res;
}

namespace {

void check_family_pair(const VectorFamily& x, const VectorFamily& y) {
    if (x.dim != y.dim) throw ShapeMismatch("families live in different dimensions");
    if (x.size() > y.size()) throw Error("majorization requires l <= m");
}

std::vector<double> subset_sum(const VectorFamily& f, const std::vector<std::size_t>& idx) {
    std::vector<double> s(f.dim, 0.0);
    for (std::size_t i : idx)
        for (std::size_t d = 0; d < f.dim; ++d) s[d] += f.points[i][d];
    return s;
}

}  // namespace

MajorizationReport prec_check(const VectorFamily& x, const VectorFamily& y) {
    check_family_pair(x, y);
    std::size_t l = x.size(), m = y.size();
    if (l > 12 || m > 14)
        throw CombinatorialBound("subset enumeration bound l <= 12, m <= 14 exceeded");

    MajorizationReport rep;
    rep.prec_levels.assign(l, true);
    bool all = true;
    for (std::size_t k = 1; k <= l; ++k) {
        auto ysubs = index_subsets(m, k);
        std::vector<std::vector<double>> hullpts;
        hullpts.reserve(ysubs.size());
        for (const auto& s : ysubs) hullpts.push_back(subset_sum(y, s));
        VectorFamily hull(y.dim, std::move(hullpts));

        for (const auto& xs : index_subsets(l, k)) {
            std::vector<double> target = subset_sum(x, xs);
            HullResult h = point_in_hull(target, hull);
            if (!h.inside) {
                rep.prec_levels[k - 1] = false;
                all = false;
                if (!rep.failure) {
                    FailureCertificate cert;
                    cert.level = k;
                    cert.subset = xs;
                    cert.direction = h.direction;
                    rep.failure = std::move(cert);
                }
            }
        }
    }
    rep.prec = all;
    return rep;
}

MajorizationReport prec_ds_check(const VectorFamily& x, const VectorFamily& y) {
    check_family_pair(x, y);
    std::size_t l = x.size(), m = y.size(), n = x.dim;

    // Variables s_ij, row-major: index i*m + j.
    LPProblem prob;
    prob.vars = m * m;
    std::size_t rows = 2 * m + l * n;
    prob.a.assign(rows, std::vector<double>(prob.vars, 0.0));
    prob.b.assign(rows, 0.0);
    std::size_t r = 0;
    for (std::size_t i = 0; i < m; ++i, ++r) {
        for (std::size_t j = 0; j < m; ++j) prob.a[r][i * m + j] = 1.0;
        prob.b[r] = 1.0;
    }
    for (std::size_t j = 0; j < m; ++j, ++r) {
        for (std::size_t i = 0; i < m; ++i) prob.a[r][i * m + j] = 1.0;
        prob.b[r] = 1.0;
    }
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t d = 0; d < n; ++d, ++r) {
            for (std::size_t j = 0; j < m; ++j) prob.a[r][i * m + j] = y.points[j][d];
            prob.b[r] = x.points[i][d];
        }

    LPOutcome out = lp_solve(prob);
    MajorizationReport rep;
    rep.prec_ds = out.feasible;
    if (out.feasible) {
        std::vector<std::vector<double>> s(m, std::vector<double>(m, 0.0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) s[i][j] = out.solution[i * m + j];
        rep.witness = make_witness(std::move(s));
    } else {
        rep.ds_phase1_objective = out.phase1_objective;
    }
    return rep;
}

bool hlp_check(std::span<const double> beta, std::span<const double> alpha, bool strict) {
    constexpr double tol = 1e-10;
    if (strict && beta.size() != alpha.size())
        throw LengthMismatch("strict majorization requires equal lengths");
    std::vector<double> b(beta.begin(), beta.end());
    std::vector<double> a(alpha.begin(), alpha.end());
    std::sort(b.rbegin(), b.rend());
    std::sort(a.rbegin(), a.rend());
    std::size_t upto = std::min(a.size(), b.size());
    double sb = 0.0, sa = 0.0;
    for (std::size_t j = 0; j < upto; ++j) {
        sb += b[j];
        sa += a[j];
        if (sb > sa + tol) return false;
    }
    if (strict) {
        double tb = std::accumulate(b.begin(), b.end(), 0.0);
        double ta = std::accumulate(a.begin(), a.end(), 0.0);
        if (std::abs(tb - ta) > tol) return false;
    }
    return true;
}

BistochasticWitness t_transform_witness(std::span<const double> beta,
                                        std::span<const double> alpha) {
    if (!hlp_check(beta, alpha, true))
        throw NotMajorized("beta is not majorized by alpha");
    std::size_t m = alpha.size();

    // Sort both descending, remembering the permutations.
    auto argsort_desc = [](std::span<const double> v) {
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t i, std::size_t j) { return v[i] > v[j]; });
        return idx;
    };
    std::vector<std::size_t> pa = argsort_desc(alpha);
    std::vector<std::size_t> pb = argsort_desc(beta);
    std::vector<double> ah(m), bh(m);
    for (std::size_t i = 0; i < m; ++i) {
        ah[i] = alpha[pa[i]];
        bh[i] = beta[pb[i]];
    }

    // Work on sorted copies: at each step move mass from the largest surplus
    // index j to the first deficit index k > j; each T-transform closes at
    // least one gap, so at most m-1 steps run.
    std::vector<std::vector<double>> shat(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) shat[i][i] = 1.0;
    std::vector<double> work = ah;
    constexpr double gap_tol = 1e-12;
    for (std::size_t step = 0; step + 1 < m; ++step) {
        std::size_t j = m, k = m;
        for (std::size_t i = m; i-- > 0;)
            if (work[i] - bh[i] > gap_tol) { j = i; break; }
        if (j == m) break;
        for (std::size_t i = j + 1; i < m; ++i)
            if (bh[i] - work[i] > gap_tol) { k = i; break; }
        if (k == m) break;

        double delta = std::min(work[j] - bh[j], bh[k] - work[k]);
        double span = work[j] - work[k];
        double tcoef = (span > 0.0) ? 1.0 - delta / span : 1.0;
        // Apply T = t I + (1-t) Q_{jk} on the left of shat and of work.
        for (std::size_t c = 0; c < m; ++c) {
            double rj = shat[j][c], rk = shat[k][c];
            shat[j][c] = tcoef * rj + (1.0 - tcoef) * rk;
            shat[k][c] = tcoef * rk + (1.0 - tcoef) * rj;
        }
        double wj = work[j], wk = work[k];
        work[j] = tcoef * wj + (1.0 - tcoef) * wk;
        work[k] = tcoef * wk + (1.0 - tcoef) * wj;
    }

    // Undo the sorting: S = Pb' Shat Pa maps the original alpha to beta.
    std::vector<std::vector<double>> s(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) s[pb[i]][pa[j]] = shat[i][j];

    BistochasticWitness w = make_witness(std::move(s));
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) acc += w.s[i][j] * alpha[j];
        worst = std::max(worst, std::abs(acc - beta[i]));
    }
    if (worst > 1e-8) throw Error("t_transform_witness: residual above 1e-8");
    return w;
}

VectorFamily petrov_extend(const VectorFamily& x, const VectorFamily& y) {
    check_family_pair(x, y);
    std::size_t l = x.size(), m = y.size();
    if (l == m) throw AlreadyFull("family already has m members");
    std::vector<double> ext = family_total(y);
    std::vector<double> tx = family_total(x);
    for (std::size_t d = 0; d < y.dim; ++d) ext[d] = (ext[d] - tx[d]) / double(m - l);
    std::vector<std::vector<double>> pts = x.points;
    pts.push_back(std::move(ext));
    return VectorFamily(y.dim, std::move(pts));
}

ProjectionProbeResult projection_probe(const VectorFamily& x, const VectorFamily& y,
                                       std::span<const std::vector<double>> directions) {
    check_family_pair(x, y);
    std::size_t l = x.size(), m = y.size();
    ProjectionProbeResult res;
    for (const auto& h : directions) {
        if (h.size() != x.dim) throw ShapeMismatch("direction dimension mismatch");
        std::vector<double> px(l), py(m);
        for (std::size_t i = 0; i < l; ++i)
            px[i] = std::inner_product(h.begin(), h.end(), x.points[i].begin(), 0.0);
        for (std::size_t j = 0; j < m; ++j)
            py[j] = std::inner_product(h.begin(), h.end(), y.points[j].begin(), 0.0);
        // Fisher-Holbrook l < m convention: append scalar mean completions,
        // then compare as equal-length majorization.
        if (l < m) {
            double gap = std::accumulate(py.begin(), py.end(), 0.0) -
                         std::accumulate(px.begin(), px.end(), 0.0);
            px.insert(px.end(), m - l, gap / double(m - l));
        }
        if (!hlp_check(px, py, true)) {
            res.ok = false;
            res.failing_direction = h;
            return res;
        }
    }
    return res;
}

}  // namespace normaj
