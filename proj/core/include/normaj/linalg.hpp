#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "normaj/errors.hpp"
#include "normaj/poly.hpp"

namespace normaj {

/// Dense complex matrix in row-major order.  Construction from data
/// validates that every entry is finite; sizes stay at desk scale (the
/// characteristic-polynomial routine caps at n = 16).
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}
    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(std::span<const Complex> d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Complex>& entries() const { return data_; }

    CMatrix adjoint() const;
    CMatrix conjugate() const;
    CMatrix transpose() const;

    std::vector<Complex> row(std::size_t i) const;
    std::vector<Complex> col(std::size_t j) const;
    std::vector<Complex> diag() const;

    /// Leading m-by-m principal block (rows and columns 0..m-1).
    CMatrix principal_block(std::size_t m) const;
    CMatrix submatrix(std::span<const std::size_t> rs, std::span<const std::size_t> cs) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Complex> data_;
};

CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex s, const CMatrix& a);
std::vector<Complex> operator*(const CMatrix& a, std::span<const Complex> v);

/// Entrywise infinity norm max |a_ij|.
double max_abs(const CMatrix& a);
double linf_diff(const CMatrix& a, const CMatrix& b);

/// Square matrix validated unitary at construction: ||U*U - I||_inf <= 1e-10.
class UnitaryFactor {
public:
    explicit UnitaryFactor(CMatrix u);
    const CMatrix& matrix() const { return u_; }
    std::size_t dim() const { return u_.rows(); }

private:
    CMatrix u_;
};

/// Deterministic unitary completion: the unique matrix D*H built from the
/// single Householder reflection H mapping conj(x) to a phase multiple of
/// e_n, phase-corrected so the last row equals x entrywise.
/// Requires | ||x||_2 - 1 | <= 1e-10, else NonUnitVector.
UnitaryFactor unitary_with_last_row(std::span<const Complex> x);

/// k-th compound (exterior power): entry (I, J) is the k-by-k minor of a on
/// rows I and columns J, with index sets enumerated lexicographically.
CMatrix compound(const CMatrix& a, std::size_t k);

/// Monic characteristic polynomial det(zI - a) by the Faddeev-LeVerrier
/// recurrence; hard cap n <= 16 (DimensionTooLarge beyond).
ComplexPoly char_poly(const CMatrix& a);

/// Squared Frobenius norm sum |a_ij|^2.
double frobenius_sq(const CMatrix& a);

/// Entrywise (Schur) product; shapes must match.
CMatrix schur_product(const CMatrix& a, const CMatrix& b);

Complex det(const CMatrix& a);
std::vector<Complex> lu_solve(const CMatrix& a, std::span<const Complex> b);
CMatrix inverse(const CMatrix& a);

/// All k-element subsets of {0,...,n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t k);

std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace normaj
