#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "normaj/linalg.hpp"
#include "normaj/poly.hpp"

namespace normaj {

/// Target data of the two-spectra inverse problem: n prescribed eigenvalues
/// for the full matrix and n-1 for its leading principal submatrix.
struct SpectralPair {
    std::vector<Complex> lambda;
    std::vector<Complex> mu;

    SpectralPair(std::vector<Complex> lambda_in, std::vector<Complex> mu_in);
    std::size_t dim() const { return lambda.size(); }
};

/// Normal matrix held as (unitary factor, diagonal spectrum); the realized
/// matrix U diag(d) U* is normal by construction.
class NormalModel {
public:
    NormalModel(UnitaryFactor u, std::vector<Complex> d);
    const UnitaryFactor& unitary() const { return u_; }
    const std::vector<Complex>& spectrum() const { return d_; }
    std::size_t dim() const { return d_.size(); }
    CMatrix realized() const;

private:
    UnitaryFactor u_;
    std::vector<Complex> d_;
};

/// The n residue quotients prod_j (mu_j - lambda_k) / prod_{j != k}
/// (lambda_j - lambda_k); their sum is 1 by partial fractions.
std::vector<Complex> residues(const SpectralPair& pair);

/// True iff every residue is (numerically) nonnegative real:
/// Re(c_k) >= -tol and |Im(c_k)| <= tol.
bool solvable(const SpectralPair& pair, double tol = 1e-9);

/// Explicit construction: weights sqrt(c_k), unitary completion with that
/// last row, A = U diag(lambda) U*.  Verified against the target submatrix
/// spectrum through characteristic-polynomial coefficients.
NormalModel solve_inverse(const SpectralPair& pair, double tol = 1e-9,
                          double verify_tol = 1e-7);

/// Coefficientwise relative gap between char_poly of the leading principal
/// submatrix of the realized matrix and the monic polynomial with roots mu.
double verify_against(const NormalModel& model, const SpectralPair& pair);

/// Discrete Weyl function: poles lambda_k with nonnegative weights x_k^2
/// summing to one.
class WeylFunction {
public:
    WeylFunction(std::vector<Complex> poles, std::vector<double> weights);
    const std::vector<Complex>& poles() const { return poles_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<Complex> poles_;
    std::vector<double> weights_;
};

WeylFunction weyl_from_pair(const SpectralPair& pair);

/// sum_k w_k / (lambda_k - z); z must stay 1e-6 away from every pole.
Complex weyl_eval(const WeylFunction& w, Complex z);

/// Upper Hessenberg matrix with nonnegative-real subdiagonal entries and a
/// normality defect below 1e-8, the canonical form of a cyclic normal model.
struct HessenbergForm {
    CMatrix h;
    explicit HessenbergForm(CMatrix m);
};

/// Canonical Hessenberg form by Arnoldi iteration on the realized matrix
/// started from the distinguished last basis vector; independent of the
/// unitary-completion phases.  Subdiagonal entries below tol with the
/// dimension unexhausted raise BreakdownBeforeCompletion.
HessenbergForm quasi_jacobi(const NormalModel& model, double tol = 1e-10);

/// Compression B = V* A V by an isometry (||V*V - I||_inf <= 1e-10).
CMatrix compress(const NormalModel& model, const CMatrix& v);

struct MultiplicityNote {
    Complex value;                 // cluster representative
    std::size_t lambda_count = 0;  // multiplicity among lambda
    std::size_t mu_count = 0;      // matching mu within the tolerance
};

/// Soft diagnostic for clustered spectra: a k-fold lambda cluster should be
/// matched by mu with multiplicity at least k-1.
std::vector<MultiplicityNote> multiplicity_diagnostic(const SpectralPair& pair,
                                                      double cluster_gap = 1e-3,
                                                      double match_tol = 1e-2);

}  // namespace normaj
