#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "normaj/linalg.hpp"
#include "normaj/poly.hpp"

namespace testsup {

using normaj::CMatrix;
using normaj::Complex;

inline Complex random_in_box(std::mt19937_64& rng, double half) {
    std::uniform_real_distribution<double> d(-half, half);
    double re = d(rng);
    double im = d(rng);
    return {re, im};
}

/// Distinct complex points in a square box with a minimum pairwise gap.
inline std::vector<Complex> random_separated_points(std::mt19937_64& rng, std::size_t n,
                                                    double half, double min_gap) {
    std::vector<Complex> pts;
    while (pts.size() < n) {
        Complex cand = random_in_box(rng, half);
        bool ok = true;
        for (const Complex& p : pts)
            if (std::abs(cand - p) < min_gap) { ok = false; break; }
        if (ok) pts.push_back(cand);
    }
    return pts;
}

/// Greedy nearest-neighbor multiset match; adequate when separation is much
/// larger than the tolerance.
inline bool match_multisets(std::vector<Complex> a, std::vector<Complex> b, double tol) {
    if (a.size() != b.size()) return false;
    for (const Complex& x : a) {
        double best = 1e300;
        std::size_t pick = b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
            double d = std::abs(x - b[j]);
            if (d < best) { best = d; pick = j; }
        }
        if (pick == b.size() || best > tol) return false;
        b.erase(b.begin() + long(pick));
    }
    return true;
}

/// Random unitary by modified Gram-Schmidt on a random complex matrix.
inline CMatrix random_unitary(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex{d(rng), d(rng)};
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t prev = 0; prev < j; ++prev) {
                Complex proj{0.0, 0.0};
                for (std::size_t i = 0; i < n; ++i) proj += std::conj(m(i, prev)) * m(i, j);
                for (std::size_t i = 0; i < n; ++i) m(i, j) -= proj * m(i, prev);
            }
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm2 += std::norm(m(i, j));
        double norm = std::sqrt(norm2);
        for (std::size_t i = 0; i < n; ++i) m(i, j) /= norm;
    }
    return m;
}

/// Random isometry: the first m columns of a random unitary.
inline CMatrix random_isometry(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    CMatrix u = random_unitary(rng, n);
    CMatrix v(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) v(i, j) = u(i, j);
    return v;
}

/// Random doubly stochastic matrix as a convex mix of permutation matrices.
inline std::vector<std::vector<double>> random_doubly_stochastic(std::mt19937_64& rng,
                                                                 std::size_t m,
                                                                 std::size_t terms = 4) {
    std::uniform_real_distribution<double> d(0.05, 1.0);
    std::vector<double> wts(terms);
    double total = 0.0;
    for (double& w : wts) { w = d(rng); total += w; }
    std::vector<std::vector<double>> s(m, std::vector<double>(m, 0.0));
    std::vector<std::size_t> perm(m);
    for (std::size_t t = 0; t < terms; ++t) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t i = 0; i < m; ++i) s[i][perm[i]] += wts[t] / total;
    }
    return s;
}

}  // namespace testsup
