#pragma once

#include <cstdint>
#include <vector>

#include "normaj/inverse_spectral.hpp"
#include "normaj/linalg.hpp"
#include "normaj/majorization.hpp"
#include "normaj/poly.hpp"

namespace normaj {

/// Unitary triangularization by iterated deflation: one eigenvalue at a
/// time by Aberth on the characteristic polynomial, a unit eigenvector by
/// shifted inverse iteration, then a Householder similarity.  Returns
/// (Q, T) with Q*MQ = T upper triangular; stable at desk scale (n <= 12).
struct SchurResult {
    CMatrix q;
    CMatrix t;
};
SchurResult schur_upper_triangularize(const CMatrix& m);

/// Witness matrix behind the doubly stochastic sharpening of Gauss-Lucas:
/// (mu_1..mu_{n-1}, mean(lambda)) = S1 lambda with the last row of S1
/// uniform.  w is the unitary whose squared moduli give S1; its compounds
/// drive the level-k witnesses.
struct GaussLucasWitness {
    std::vector<Complex> lambda;   // roots of p, sorted by (Re, Im)
    std::vector<Complex> mu;       // roots of p', in triangularization order
    Complex mu_mean;               // mean of lambda
    BistochasticWitness s1;
    CMatrix w;
};

GaussLucasWitness gl_witness(const ComplexPoly& p, std::uint64_t seed);

/// Level-k witness: the squared-modulus compound of w, reordered so index
/// sets avoiding n come first.  Verifies the compound identity
/// C_k(mu - a) = P Sk C_k(lambda - a) at seeded random shifts.
struct LevelKWitness {
    std::size_t k = 0;
    std::vector<std::vector<double>> sk;
    double block_row_sum = 0.0;        // per-column sum over rows containing n
    double block_row_sum_spread = 0.0; // max-min of that sum across columns
    double eq_residual = 0.0;          // scaled residual of the compound identity
    double row_tol = 0.0;
    double col_tol = 0.0;
};

LevelKWitness sk_witness(const GaussLucasWitness& w, std::size_t k, std::uint64_t seed = 0);

/// Reports the measured containing-n block sum and its distance from the
/// two closed-form candidates k/n and (n-k)/n.
struct BlockRowSumProbe {
    double measured = 0.0;
    double spread = 0.0;
    double gap_k_over_n = 0.0;
    double gap_complement = 0.0;
};

BlockRowSumProbe block_row_sum_probe(const GaussLucasWitness& w, std::size_t k);

/// Averaged elementary-product identity: mean over k-subsets of
/// prod (mu - alpha) equals mean over k-subsets of prod (lambda - alpha).
struct ProdeqResult {
    Complex left;
    Complex right;
    double deviation = 0.0;
    double scale = 1.0;
};

ProdeqResult prodeq_check(std::span<const Complex> lambda, std::span<const Complex> mu,
                          Complex alpha, std::size_t k);

/// Closed battery of convex test functions on the plane.
struct ConvexDescriptor {
    enum class Kind { AbsPower, HingeRe, ExpRe };
    Kind kind = Kind::AbsPower;
    Complex anchor;     // c for AbsPower, direction h otherwise
    double param = 2.0; // exponent q >= 1 for AbsPower, offset for HingeRe

    static ConvexDescriptor abs_power(Complex c, double q);
    static ConvexDescriptor hinge_re(Complex h, double offset);
    static ConvexDescriptor exp_re(Complex h);
};

double eval_convex(const ConvexDescriptor& d, Complex z);

struct DebruijnEntry {
    ConvexDescriptor descriptor;
    double left = 0.0;
    double right = 0.0;
    double slack = 0.0;             // right - left
    double normalized_slack = 0.0;  // slack / max(1, |right|)
};

/// Averaged convex inequality over k-products of shifted roots of p' vs p.
std::vector<DebruijnEntry> debruijn_check(const ComplexPoly& p, std::size_t k, Complex alpha,
                                          std::span<const ConvexDescriptor> battery,
                                          std::uint64_t seed = 0);

struct SchoenbergReport {
    double lhs = 0.0;     // n sum |mu|^2
    double rhs = 0.0;     // (n-2) sum |lambda|^2
    double slack = 0.0;   // rhs - lhs
    double scale = 1.0;   // max(1, sum |lambda|^2)
    bool collinear = false;
    bool equality = false;  // slack <= 1e-7 * scale
};

/// Quadratic moment inequality for centered root sets, with the
/// collinearity detector that characterizes equality.  Knobs: collinearity
/// rank tolerance 1e-8 on unit directions, equality detection at
/// 1e-7 * max(1, sum |lambda|^2).
SchoenbergReport schoenberg_check(std::span<const Complex> lambda, std::uint64_t seed = 0);

struct DftWitness {
    CMatrix a;
    double identity_slack = 0.0;       // |n ||A_{n-1}||^2 - (n-2) ||A||^2|
    double diagonal_defect = 0.0;      // max |a_jj|
    double charpoly_residual = 0.0;    // submatrix char poly vs p'/n
    double scale = 1.0;                // max(1, sum |lambda|^2)
};

/// Fourier-basis normal witness A = U diag(lambda) U* for centered lambda;
/// its principal submatrix carries the derivative roots and satisfies
/// n ||A_{n-1}||^2 = (n-2) ||A||^2 identically.
DftWitness dft_normal_witness(std::span<const Complex> lambda);

/// Unitary-stochastic witness S = U o conj(U) mapping the spectrum to the
/// diagonal of the realized matrix.
MajorizationReport diagonal_majorization_probe(const NormalModel& model);

}  // namespace normaj
