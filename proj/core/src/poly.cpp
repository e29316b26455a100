#include "normaj/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace normaj {

namespace {

constexpr int kMaxSweeps = 500;

bool lex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

ComplexPoly::ComplexPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == Complex{0.0, 0.0}) coeffs_.pop_back();
    if (coeffs_.empty() || coeffs_.back() == Complex{0.0, 0.0})
        throw Error("ComplexPoly: zero polynomial is not representable");
    for (const Complex& c : coeffs_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw Error("ComplexPoly: non-finite coefficient");
}

ComplexPoly ComplexPoly::from_roots(std::span<const Complex> roots) {
    std::vector<Complex> c{Complex{1.0, 0.0}};
    for (const Complex& r : roots) {
        std::vector<Complex> next(c.size() + 1, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    return ComplexPoly(std::move(c));
}

Complex ComplexPoly::operator()(Complex z) const {
    Complex acc{0.0, 0.0};
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
    return acc;
}

ComplexPoly ComplexPoly::derivative() const {
    if (degree() == 0) throw ConstantPolynomial("derivative of a constant polynomial");
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * double(i);
    return ComplexPoly(std::move(d));
}

ComplexPoly ComplexPoly::monic() const {
    std::vector<Complex> c = coeffs_;
    Complex lead = c.back();
    for (Complex& x : c) x /= lead;
    c.back() = Complex{1.0, 0.0};
    return ComplexPoly(std::move(c));
}

double residual_scale(const ComplexPoly& p, Complex z) {
    double az = std::max(1.0, std::abs(z));
    double scale = 0.0, pw = 1.0;
    for (const Complex& c : p.coeffs()) {
        scale += std::abs(c) * pw;
        pw *= az;
    }
    return scale;
}

namespace {

// Horner evaluation of p and p' in one pass.
std::pair<Complex, Complex> eval_with_derivative(const std::vector<Complex>& c, Complex z) {
    Complex p{0.0, 0.0}, dp{0.0, 0.0};
    for (std::size_t i = c.size(); i-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
    return {p, dp};
}

}  // namespace

std::vector<Complex> roots(const ComplexPoly& p_in, std::uint64_t seed) {
    if (p_in.degree() < 1) throw ConstantPolynomial("roots of a constant polynomial");
    ComplexPoly pm = p_in.monic();

    // Exact zero roots split off directly; Aberth then runs on the cofactor.
    std::vector<Complex> out;
    std::vector<Complex> c = pm.coeffs();
    std::size_t shift = 0;
    while (shift < c.size() - 1 && c[shift] == Complex{0.0, 0.0}) ++shift;
    for (std::size_t i = 0; i < shift; ++i) out.emplace_back(0.0, 0.0);
    c.erase(c.begin(), c.begin() + long(shift));

    std::size_t n = c.size() - 1;
    if (n == 0) {
        std::sort(out.begin(), out.end(), lex_less);
        return out;
    }
    if (n == 1) {
        out.push_back(-c[0]);
        std::sort(out.begin(), out.end(), lex_less);
        return out;
    }

    double cauchy = 0.0;
    for (std::size_t i = 0; i < n; ++i) cauchy = std::max(cauchy, std::abs(c[i]));
    cauchy += 1.0;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Complex> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        double theta = 2.0 * M_PI * (double(i) + 0.25 * unit(rng)) / double(n) + 0.3119;
        double radius = cauchy * (0.55 + 0.35 * unit(rng));
        z[i] = std::polar(radius, theta);
    }

    const double lock_eps = 100.0 * std::numeric_limits<double>::epsilon();
    ComplexPoly reduced{std::vector<Complex>(c)};
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool settled = true;
        for (std::size_t i = 0; i < n; ++i) {
            auto [pv, dv] = eval_with_derivative(c, z[i]);
            if (std::abs(pv) <= lock_eps * residual_scale(reduced, z[i])) continue;
            if (pv == Complex{0.0, 0.0}) continue;
            Complex newton;
            if (dv == Complex{0.0, 0.0}) {
                z[i] += Complex(1e-6 * cauchy, 1e-6 * cauchy);
                settled = false;
                continue;
            }
            newton = pv / dv;
            Complex repulsion{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex d = z[i] - z[j];
                if (d == Complex{0.0, 0.0}) d = Complex(1e-14 * cauchy, 0.0);
                repulsion += 1.0 / d;
            }
            Complex denom = 1.0 - newton * repulsion;
            Complex w = (denom == Complex{0.0, 0.0}) ? newton : newton / denom;
            z[i] -= w;
            if (std::abs(w) > 5e-15 * (1.0 + std::abs(z[i]))) settled = false;
        }
        if (settled) break;
    }

    for (std::size_t i = 0; i < n; ++i) {
        auto [pv, dv] = eval_with_derivative(c, z[i]);
        (void)dv;
        if (std::abs(pv) > 1e-8 * residual_scale(reduced, z[i]))
            throw NoConvergence("Aberth iteration did not reach the residual gate in 500 sweeps");
    }

    out.insert(out.end(), z.begin(), z.end());
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

bool has_multiple_roots(const ComplexPoly& p, std::uint64_t seed) {
    if (p.degree() < 2) return false;
    ComplexPoly pm = p.monic();
    for (const Complex& mu : roots(pm.derivative(), seed))
        if (std::abs(pm(mu)) <= 1e-8 * residual_scale(pm, mu)) return true;
    return false;
}

double log_derivative_residue_check(const ComplexPoly& p,
                                    std::span<const Complex> samples,
                                    std::uint64_t seed) {
    std::vector<Complex> lambda = roots(p, seed);
    ComplexPoly dp = p.derivative();
    double worst = 0.0;
    for (const Complex& s : samples) {
        for (const Complex& r : lambda)
            if (std::abs(s - r) < 1e-3)
                throw SampleTooCloseToRoot("sample within 1e-3 of a root");
        Complex lhs = dp(s) / p(s);
        Complex rhs{0.0, 0.0};
        for (const Complex& r : lambda) rhs += 1.0 / (s - r);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

}  // namespace normaj
