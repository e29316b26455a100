#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "normaj/errors.hpp"

namespace normaj {

/// Finite family of real n-vectors (complex inputs are embedded in the
/// plane once at the boundary, see family_from_complex).
struct VectorFamily {
    std::size_t dim = 0;
    std::vector<std::vector<double>> points;

    VectorFamily() = default;
    VectorFamily(std::size_t d, std::vector<std::vector<double>> pts);
    std::size_t size() const { return points.size(); }
};

VectorFamily family_from_complex(std::span<const std::complex<double>> zs);

/// Nonnegative matrix with the achieved row/column-sum defects recorded.
struct BistochasticWitness {
    std::vector<std::vector<double>> s;
    double row_tol = 0.0;
    double col_tol = 0.0;
};

BistochasticWitness make_witness(std::vector<std::vector<double>> s);

struct FailureCertificate {
    std::size_t level = 0;                 // k of the failing hull test
    std::vector<std::size_t> subset;       // offending k-subset of x (indices)
    std::vector<double> direction;         // separating direction h
};

struct MajorizationReport {
    std::vector<bool> prec_levels;                 // verdict per level k = 1..l
    std::optional<bool> prec;
    std::optional<bool> prec_ds;
    std::optional<BistochasticWitness> witness;
    std::optional<FailureCertificate> failure;
    std::optional<double> ds_phase1_objective;     // set when prec_ds is infeasible
};

/// Equality-constrained feasibility problem  a x = b, x >= 0.
struct LPProblem {
    std::size_t vars = 0;
    std::vector<std::vector<double>> a;    // rows of length vars
    std::vector<double> b;
};

struct LPOutcome {
    bool feasible = false;
    std::vector<double> solution;          // when feasible
    double residual = 0.0;                 // ||a x - b||_inf of the returned solution
    double phase1_objective = 0.0;
    std::vector<double> farkas;            // when infeasible: y with y'a <= 0, y'b > 0
};

/// Phase-1 simplex with Bland's rule; bounds rows <= 200, vars <= 400
/// (SizeExceeded beyond).  Feasibility is accepted at phase-1 objective
/// <= 1e-7, the numerical notion of "exists" used throughout.
LPOutcome lp_solve(const LPProblem& prob);
std::optional<std::vector<double>> lp_feasible(const LPProblem& prob);

struct HullResult {
    bool inside = false;
    std::vector<double> coefficients;      // convex coefficients when inside
    std::vector<double> direction;         // separating direction when outside
};

HullResult point_in_hull(std::span<const double> p, const VectorFamily& pts);

/// Subset-sum hull-inclusion order: every level-k subset sum of x must lie
/// in the hull of the level-k subset sums of y.  Enumeration bound
/// l <= 12, m <= 14 (CombinatorialBound).
MajorizationReport prec_check(const VectorFamily& x, const VectorFamily& y);

/// Doubly stochastic order: one LP over s_ij >= 0 with unit row/column sums
/// and sum_j s_ij y_j = x_i for i < l; extension rows are unconstrained
/// beyond stochasticity.
MajorizationReport prec_ds_check(const VectorFamily& x, const VectorFamily& y);

/// Scalar Hardy-Littlewood-Polya test by sorted prefix sums (tolerance
/// 1e-10).  strict additionally requires equal lengths and equal totals.
bool hlp_check(std::span<const double> beta, std::span<const double> alpha, bool strict);

/// Constructive scalar witness: product of at most m-1 T-transforms (and
/// sorting permutations) with beta = S alpha.
BistochasticWitness t_transform_witness(std::span<const double> beta,
                                        std::span<const double> alpha);

/// Appends the mean-completion vector (sum y - sum x)/(m - l) once.
VectorFamily petrov_extend(const VectorFamily& x, const VectorFamily& y);

struct ProjectionProbeResult {
    bool ok = true;
    std::optional<std::vector<double>> failing_direction;
};

/// Necessary-condition probe: scalar majorization of projections onto each
/// direction, with mean completions appended when l < m.
ProjectionProbeResult projection_probe(const VectorFamily& x, const VectorFamily& y,
                                       std::span<const std::vector<double>> directions);

}  // namespace normaj
