#include "normaj/inverse_spectral.hpp"

#include <algorithm>
#include <cmath>

namespace normaj {

namespace {

double spectrum_scale(std::span<const Complex> lambda) {
    double s = 1.0;
    for (const Complex& z : lambda) s = std::max(s, std::abs(z));
    return s;
}

}  // namespace

SpectralPair::SpectralPair(std::vector<Complex> lambda_in, std::vector<Complex> mu_in)
    : lambda(std::move(lambda_in)), mu(std::move(mu_in)) {
    if (lambda.size() < 2) throw Error("SpectralPair: need n >= 2");
    if (mu.size() + 1 != lambda.size()) throw ShapeMismatch("SpectralPair: mu must have n-1 entries");
}

NormalModel::NormalModel(UnitaryFactor u, std::vector<Complex> d)
    : u_(std::move(u)), d_(std::move(d)) {
    if (u_.dim() != d_.size()) throw ShapeMismatch("NormalModel: unitary and spectrum sizes differ");
    CMatrix a = realized();
    if (linf_diff(a * a.adjoint(), a.adjoint() * a) > 1e-9)
        throw Error("NormalModel: normality defect above 1e-9");
}

CMatrix NormalModel::realized() const {
    return u_.matrix() * CMatrix::diagonal(d_) * u_.matrix().adjoint();
}

std::vector<Complex> residues(const SpectralPair& pair) {
    std::size_t n = pair.dim();
    double scale = spectrum_scale(pair.lambda);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(pair.lambda[i] - pair.lambda[j]) <= 1e-9 * scale)
                throw DegenerateSpectrum("coincident lambda values");

    std::vector<Complex> c(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex num{1.0, 0.0}, den{1.0, 0.0};
        for (std::size_t j = 0; j + 1 < n; ++j) num *= pair.mu[j] - pair.lambda[k];
        for (std::size_t j = 0; j < n; ++j)
            if (j != k) den *= pair.lambda[j] - pair.lambda[k];
        c[k] = num / den;
    }
    return c;
}

bool solvable(const SpectralPair& pair, double tol) {
    for (const Complex& ck : residues(pair))
        if (ck.real() < -tol || std::abs(ck.imag()) > tol) return false;
    return true;
}

NormalModel solve_inverse(const SpectralPair& pair, double tol, double verify_tol) {
    std::vector<Complex> c = residues(pair);
    for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k].real() < -tol || std::abs(c[k].imag()) > tol)
            throw NotSolvable("negative residue blocks the construction", k + 1);

    std::vector<Complex> x(c.size());
    double norm2 = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        double w = std::sqrt(std::max(c[k].real(), 0.0));
        x[k] = Complex{w, 0.0};
        norm2 += w * w;
    }
    double norm = std::sqrt(norm2);
    for (Complex& e : x) e /= norm;

    NormalModel model(unitary_with_last_row(x), pair.lambda);
    if (verify_against(model, pair) > verify_tol)
        throw Error("solve_inverse: submatrix spectrum verification failed");
    return model;
}

double verify_against(const NormalModel& model, const SpectralPair& pair) {
    std::size_t n = model.dim();
    ComplexPoly got = char_poly(model.realized().principal_block(n - 1));
    ComplexPoly want = ComplexPoly::from_roots(pair.mu);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        Complex g = got.coeff(j), w = want.coeff(j);
        worst = std::max(worst, std::abs(g - w) / (1.0 + std::abs(w)));
    }
    return worst;
}

WeylFunction::WeylFunction(std::vector<Complex> poles, std::vector<double> weights)
    : poles_(std::move(poles)), weights_(std::move(weights)) {
    if (poles_.size() != weights_.size()) throw ShapeMismatch("WeylFunction sizes");
    double total = 0.0;
    for (double w : weights_) {
        if (w < -1e-12) throw Error("WeylFunction: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-10) throw Error("WeylFunction: weights do not sum to 1");
}

WeylFunction weyl_from_pair(const SpectralPair& pair) {
    std::vector<Complex> c = residues(pair);
    std::vector<double> w(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) w[k] = c[k].real();
    return WeylFunction(pair.lambda, std::move(w));
}

Complex weyl_eval(const WeylFunction& w, Complex z) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < w.poles().size(); ++k) {
        if (std::abs(w.poles()[k] - z) < 1e-6) throw PoleHit("evaluation point hits a pole");
        acc += w.weights()[k] / (w.poles()[k] - z);
    }
    return acc;
}

HessenbergForm::HessenbergForm(CMatrix m) : h(std::move(m)) {
    if (h.rows() != h.cols()) throw Error("HessenbergForm: square matrix required");
    std::size_t n = h.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j + 2 <= i; ++j)
            if (h(i, j) != Complex{0.0, 0.0})
                throw Error("HessenbergForm: nonzero entry below the subdiagonal");
    for (std::size_t i = 1; i < n; ++i) {
        Complex s = h(i, i - 1);
        if (s.imag() != 0.0 || s.real() < 0.0)
            throw Error("HessenbergForm: subdiagonal must be nonnegative real");
    }
    if (linf_diff(h * h.adjoint(), h.adjoint() * h) > 1e-8)
        throw Error("HessenbergForm: normality defect above 1e-8");
}

HessenbergForm quasi_jacobi(const NormalModel& model, double tol) {
    std::size_t n = model.dim();
    CMatrix a = model.realized();
    CMatrix h(n, n);

    // Arnoldi from the distinguished vector e_n with one full
    // reorthogonalization pass; real norms give the nonnegative-real
    // subdiagonal normalization.
    std::vector<std::vector<Complex>> q;
    std::vector<Complex> first(n, Complex{0.0, 0.0});
    first[n - 1] = Complex{1.0, 0.0};
    q.push_back(std::move(first));

    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Complex> w = a * std::span<const Complex>(q[k]);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i <= k; ++i) {
                Complex proj{0.0, 0.0};
                for (std::size_t t = 0; t < n; ++t) proj += std::conj(q[i][t]) * w[t];
                h(i, k) += proj;
                for (std::size_t t = 0; t < n; ++t) w[t] -= proj * q[i][t];
            }
        }
        if (k + 1 == n) break;
        double norm2 = 0.0;
        for (const Complex& e : w) norm2 += std::norm(e);
        double norm = std::sqrt(norm2);
        if (norm <= tol)
            throw BreakdownBeforeCompletion(
                "Arnoldi breakdown: non-cyclic distinguished vector or multiple spectrum");
        h(k + 1, k) = Complex{norm, 0.0};
        std::vector<Complex> next(n);
        for (std::size_t t = 0; t < n; ++t) next[t] = w[t] / norm;
        q.push_back(std::move(next));
    }
    return HessenbergForm(std::move(h));
}

CMatrix compress(const NormalModel& model, const CMatrix& v) {
    if (v.rows() != model.dim()) throw ShapeMismatch("isometry row count");
    CMatrix gram = v.adjoint() * v;
    if (linf_diff(gram, CMatrix::identity(v.cols())) > 1e-10)
        throw NotIsometry("columns are not orthonormal to 1e-10");
    return v.adjoint() * model.realized() * v;
}

std::vector<MultiplicityNote> multiplicity_diagnostic(const SpectralPair& pair,
                                                      double cluster_gap, double match_tol) {
    std::size_t n = pair.dim();
    std::vector<bool> used(n, false);
    std::vector<MultiplicityNote> notes;
    for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> cluster{i};
        for (std::size_t j = i + 1; j < n; ++j)
            if (!used[j] && std::abs(pair.lambda[j] - pair.lambda[i]) <= cluster_gap) {
                cluster.push_back(j);
                used[j] = true;
            }
        if (cluster.size() < 2) continue;
        Complex rep{0.0, 0.0};
        for (std::size_t j : cluster) rep += pair.lambda[j];
        rep /= double(cluster.size());
        MultiplicityNote note;
        note.value = rep;
        note.lambda_count = cluster.size();
        for (const Complex& m : pair.mu)
            if (std::abs(m - rep) <= match_tol) ++note.mu_count;
        notes.push_back(note);
    }
    return notes;
}

}  // namespace normaj
