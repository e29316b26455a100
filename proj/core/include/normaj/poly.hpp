#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "normaj/errors.hpp"

namespace normaj {

using Complex = std::complex<double>;

/// Polynomial over the complex plane, stored as coefficients in ascending
/// degree order.  Exact trailing zeros are trimmed on construction; the
/// zero polynomial is rejected.
class ComplexPoly {
public:
    explicit ComplexPoly(std::vector<Complex> coeffs);

    /// Monic polynomial with the given multiset of roots; empty list gives
    /// the constant 1.
    static ComplexPoly from_roots(std::span<const Complex> roots);

    std::size_t degree() const { return coeffs_.size() - 1; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    Complex coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Complex{}; }
    Complex leading() const { return coeffs_.back(); }

    Complex operator()(Complex z) const;

    ComplexPoly derivative() const;
    ComplexPoly monic() const;

private:
    std::vector<Complex> coeffs_;
};

/// All complex roots (with multiplicity) by Aberth-Ehrlich simultaneous
/// iteration, initialized on a seed-perturbed circle at the Cauchy bound.
/// Deterministic for a fixed seed; result sorted by (Re, Im).
/// Throws NoConvergence if the residual gate fails after 500 sweeps.
std::vector<Complex> roots(const ComplexPoly& p, std::uint64_t seed);

/// Evaluation-magnitude scale sum_j |c_j| max(1,|z|)^j used by the residual
/// gates of roots().
double residual_scale(const ComplexPoly& p, Complex z);

/// Max over samples of |p'(z)/p(z) - sum_j 1/(z - lambda_j)| with lambda the
/// roots of p; a cheap quality gate on a computed root set.  Samples closer
/// than 1e-3 to a root are rejected.
double log_derivative_residue_check(const ComplexPoly& p,
                                    std::span<const Complex> samples,
                                    std::uint64_t seed = 0);

/// Numerical multiple-root test: true when some root of p' also annihilates
/// p at the residual gate, i.e. p and p' share a root to working precision.
bool has_multiple_roots(const ComplexPoly& p, std::uint64_t seed = 0);

}  // namespace normaj
