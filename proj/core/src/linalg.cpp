#include "normaj/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace normaj {

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows_ * cols_ != data_.size()) throw ShapeMismatch("entry count does not match rows*cols");
    for (const Complex& e : data_)
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
            throw Error("CMatrix: non-finite entry");
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex{1.0, 0.0};
    return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

CMatrix CMatrix::conjugate() const {
    CMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_ * cols_; ++i) m.data_[i] = std::conj(data_[i]);
    return m;
}

CMatrix CMatrix::transpose() const {
    CMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

std::vector<Complex> CMatrix::row(std::size_t i) const {
    return {data_.begin() + long(i * cols_), data_.begin() + long((i + 1) * cols_)};
}

std::vector<Complex> CMatrix::col(std::size_t j) const {
    std::vector<Complex> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

std::vector<Complex> CMatrix::diag() const {
    std::size_t n = std::min(rows_, cols_);
    std::vector<Complex> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = (*this)(i, i);
    return d;
}

CMatrix CMatrix::principal_block(std::size_t m) const {
    if (m > rows_ || m > cols_) throw ShapeMismatch("principal block larger than matrix");
    CMatrix b(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) b(i, j) = (*this)(i, j);
    return b;
}

CMatrix CMatrix::submatrix(std::span<const std::size_t> rs, std::span<const std::size_t> cs) const {
    CMatrix b(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j) b(i, j) = (*this)(rs[i], cs[j]);
    return b;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("matrix addition");
    CMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("matrix subtraction");
    CMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeMismatch("matrix product");
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

CMatrix operator*(Complex s, const CMatrix& a) {
    CMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

std::vector<Complex> operator*(const CMatrix& a, std::span<const Complex> v) {
    if (a.cols() != v.size()) throw ShapeMismatch("matrix-vector product");
    std::vector<Complex> r(a.rows(), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
    return r;
}

double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (const Complex& e : a.entries()) m = std::max(m, std::abs(e));
    return m;
}

double linf_diff(const CMatrix& a, const CMatrix& b) { return max_abs(a - b); }

UnitaryFactor::UnitaryFactor(CMatrix u) : u_(std::move(u)) {
    if (u_.rows() != u_.cols()) throw Error("UnitaryFactor: matrix must be square");
    CMatrix gram = u_.adjoint() * u_;
    if (linf_diff(gram, CMatrix::identity(u_.rows())) > 1e-10)
        throw Error("UnitaryFactor: unitarity defect above 1e-10");
}

UnitaryFactor unitary_with_last_row(std::span<const Complex> x) {
    std::size_t n = x.size();
    if (n == 0) throw NonUnitVector("empty vector");
    double norm2 = 0.0;
    for (const Complex& e : x) norm2 += std::norm(e);
    double norm = std::sqrt(norm2);
    if (std::abs(norm - 1.0) > 1e-10) throw NonUnitVector("vector norm differs from 1 beyond 1e-10");

    // v = conj(x); Householder H with H v = alpha e_n, alpha = -sign(v_n).
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::conj(x[i]);
    Complex sigma = v[n - 1];
    Complex alpha = (sigma == Complex{0.0, 0.0}) ? Complex{-1.0, 0.0} : -sigma / std::abs(sigma);

    std::vector<Complex> w = v;
    w[n - 1] -= alpha;
    double ww = 0.0;
    for (const Complex& e : w) ww += std::norm(e);

    CMatrix h = CMatrix::identity(n);
    if (ww > 0.0) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) h(i, j) -= 2.0 * w[i] * std::conj(w[j]) / ww;
    }
    // Row n of H is alpha * x; rescaling that row by conj(alpha) makes the
    // last row equal x, so it can be written directly.
    for (std::size_t j = 0; j < n; ++j) h(n - 1, j) = x[j];
    return UnitaryFactor(std::move(h));
}

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
        out.push_back(cur);
        std::size_t i = k;
        while (i-- > 0) {
            if (cur[i] != i + n - k) {
                ++cur[i];
                for (std::size_t j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
                break;
            }
            if (i == 0) return out;
        }
        if (k == 0) return out;
    }
}

namespace {

// LU with partial pivoting; returns false on (numerical) singularity.
struct Lu {
    CMatrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
    bool ok = false;
};

Lu lu_factor(CMatrix a) {
    std::size_t n = a.rows();
    Lu f{std::move(a), std::vector<std::size_t>(n), 1, true};
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(f.lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            double v = std::abs(f.lu(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best == 0.0) { f.ok = false; return f; }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
            f.sign = -f.sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex m = f.lu(i, k) / f.lu(k, k);
            f.lu(i, k) = m;
            for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
        }
    }
    return f;
}

std::vector<Complex> lu_apply(const Lu& f, std::span<const Complex> b) {
    std::size_t n = f.lu.rows();
    std::vector<Complex> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = b[f.perm[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) y[i] -= f.lu(i, j) * y[j];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) y[i] -= f.lu(i, j) * y[j];
        y[i] /= f.lu(i, i);
    }
    return y;
}

}  // namespace

Complex det(const CMatrix& a) {
    if (a.rows() != a.cols()) throw ShapeMismatch("determinant of a non-square matrix");
    if (a.rows() == 0) return Complex{1.0, 0.0};
    if (a.rows() == 1) return a(0, 0);
    if (a.rows() == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    Lu f = lu_factor(a);
    if (!f.ok) return Complex{0.0, 0.0};
    Complex d{double(f.sign), 0.0};
    for (std::size_t i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
    return d;
}

std::vector<Complex> lu_solve(const CMatrix& a, std::span<const Complex> b) {
    if (a.rows() != a.cols() || a.rows() != b.size()) throw ShapeMismatch("lu_solve shapes");
    Lu f = lu_factor(a);
    if (!f.ok) throw Error("lu_solve: singular matrix");
    return lu_apply(f, b);
}

CMatrix inverse(const CMatrix& a) {
    if (a.rows() != a.cols()) throw ShapeMismatch("inverse of a non-square matrix");
    std::size_t n = a.rows();
    Lu f = lu_factor(a);
    if (!f.ok) throw Error("inverse: singular matrix");
    CMatrix inv(n, n);
    std::vector<Complex> e(n, Complex{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = Complex{1.0, 0.0};
        std::vector<Complex> col = lu_apply(f, e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
        e[j] = Complex{0.0, 0.0};
    }
    return inv;
}

CMatrix compound(const CMatrix& a, std::size_t k) {
    if (a.rows() != a.cols()) throw ShapeMismatch("compound of a non-square matrix");
    std::size_t n = a.rows();
    if (k < 1 || k > n) throw LevelOutOfRange("compound level outside 1..n");
    if (k == 1) return a;
    auto subsets = index_subsets(n, k);
    std::size_t b = subsets.size();
    CMatrix c(b, b);
    for (std::size_t p = 0; p < b; ++p)
        for (std::size_t q = 0; q < b; ++q)
            c(p, q) = det(a.submatrix(subsets[p], subsets[q]));
    return c;
}

ComplexPoly char_poly(const CMatrix& a) {
    if (a.rows() != a.cols()) throw ShapeMismatch("char_poly of a non-square matrix");
    std::size_t n = a.rows();
    if (n > 16) throw DimensionTooLarge("char_poly capped at n <= 16");
    if (n == 0) return ComplexPoly({Complex{1.0, 0.0}});
    // Faddeev-LeVerrier: c[n]=1, M_0=I, c[n-k] = -tr(A M_{k-1})/k,
    // M_k = A M_{k-1} + c[n-k] I.
    std::vector<Complex> coeffs(n + 1, Complex{0.0, 0.0});
    coeffs[n] = Complex{1.0, 0.0};
    CMatrix m = CMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        CMatrix am = a * m;
        Complex tr{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        Complex ck = -tr / double(k);
        coeffs[n - k] = ck;
        if (k < n) {
            m = am;
            for (std::size_t i = 0; i < n; ++i) m(i, i) += ck;
        }
    }
    return ComplexPoly(std::move(coeffs));
}

double frobenius_sq(const CMatrix& a) {
    double s = 0.0;
    for (const Complex& e : a.entries()) s += std::norm(e);
    return s;
}

CMatrix schur_product(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("schur product shapes");
    CMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) * b(i, j);
    return c;
}

}  // namespace normaj
