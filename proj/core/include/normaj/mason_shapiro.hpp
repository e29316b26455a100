#pragma once

#include <cstdint>
#include <vector>

#include "normaj/gauss_lucas.hpp"
#include "normaj/poly.hpp"

namespace normaj {

/// The operator f -> (Q f)^(k) restricted to polynomials of degree <= m,
/// as an (m+1)x(m+1) matrix on monomial coefficient vectors.  Upper
/// triangular with diagonal (j+1)(j+2)...(j+k).
struct TqOperator {
    ComplexPoly q;
    std::size_t m = 0;
    CMatrix matrix;
};

TqOperator tq_matrix(const ComplexPoly& q, std::size_t m);

/// Rising-product eigenvalue (m+1)(m+2)...(m+k); exact in doubles at desk
/// scale.
double tq_eigenvalue(std::size_t m, std::size_t k);

/// The unique monic degree-m eigenpolynomial, by back-substitution on the
/// triangular system; the diagonal gaps are analytically nonzero.
ComplexPoly eigen_poly(const TqOperator& op);

struct MsBatteryEntry {
    ConvexDescriptor descriptor;
    double left = 0.0;   // mean of f over the p_m zeros
    double right = 0.0;  // mean of f over the Q zeros
    double slack = 0.0;
    double normalized_slack = 0.0;
};

struct MsZeroReport {
    ComplexPoly pm;
    double eigen_residual = 0.0;
    std::vector<Complex> w;  // zeros of p_m
    std::vector<Complex> z;  // zeros of Q
    bool multiple_roots_in_q = false;
    bool multiple_roots_in_pm = false;  // degraded mode: clustered zeros limit the checks
    bool hull_ok = true;
    std::vector<bool> hull_per_point;
    std::vector<MsBatteryEntry> battery;
    bool stochastic_feasible = true;
    double lp_phase1_objective = 0.0;
    std::uint64_t seed = 0;

    MsZeroReport() : pm(std::vector<Complex>{Complex{1.0, 0.0}}) {}
};

/// Zero-location report: hull inclusion of the p_m zeros in the Q-zero
/// hull, the averaged convex battery, and LP existence of the row-stochastic
/// matrix with column sums m/k mapping Q zeros onto p_m zeros.
MsZeroReport ms_zero_report(const ComplexPoly& q, std::size_t m, std::uint64_t seed);

}  // namespace normaj
