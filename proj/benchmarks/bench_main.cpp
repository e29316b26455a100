#include <benchmark/benchmark.h>

#include <random>

#include "normaj/gauss_lucas.hpp"
#include "normaj/inverse_spectral.hpp"
#include "normaj/majorization.hpp"
#include "normaj/poly.hpp"

using namespace normaj;

namespace {

std::vector<Complex> sample_roots(std::size_t n) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    std::vector<Complex> pts;
    while (pts.size() < n) {
        Complex cand{d(rng), d(rng)};
        bool ok = true;
        for (const Complex& p : pts)
            if (std::abs(cand - p) < 0.3) ok = false;
        if (ok) pts.push_back(cand);
    }
    return pts;
}

void BM_aberth_roots(benchmark::State& state) {
    ComplexPoly p = ComplexPoly::from_roots(sample_roots(std::size_t(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(roots(p, 7));
}
BENCHMARK(BM_aberth_roots)->Arg(4)->Arg(8)->Arg(12);

void BM_compound(benchmark::State& state) {
    auto lam = sample_roots(8);
    UnitaryFactor u = unitary_with_last_row(
        std::vector<Complex>(8, Complex{1.0 / std::sqrt(8.0), 0.0}));
    CMatrix a = u.matrix() * CMatrix::diagonal(lam) * u.matrix().adjoint();
    for (auto _ : state) benchmark::DoNotOptimize(compound(a, std::size_t(state.range(0))));
}
BENCHMARK(BM_compound)->Arg(2)->Arg(4);

void BM_solve_inverse(benchmark::State& state) {
    auto lam = sample_roots(std::size_t(state.range(0)));
    ComplexPoly p = ComplexPoly::from_roots(lam);
    auto mu = roots(p.derivative(), 11);
    SpectralPair pair(lam, mu);
    for (auto _ : state) benchmark::DoNotOptimize(solve_inverse(pair).realized());
}
BENCHMARK(BM_solve_inverse)->Arg(4)->Arg(8);

void BM_gl_witness(benchmark::State& state) {
    ComplexPoly p = ComplexPoly::from_roots(sample_roots(std::size_t(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(gl_witness(p, 7));
}
BENCHMARK(BM_gl_witness)->Arg(4)->Arg(6)->Arg(8);

void BM_prec_ds(benchmark::State& state) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    std::size_t m = std::size_t(state.range(0));
    std::vector<std::vector<double>> ypts(m, std::vector<double>(2));
    for (auto& q : ypts) { q[0] = d(rng); q[1] = d(rng); }
    VectorFamily y(2, ypts);
    std::vector<std::vector<double>> xpts(m, std::vector<double>(2, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (int c = 0; c < 2; ++c) xpts[i][c] += ypts[j][c] / double(m);
    VectorFamily x(2, xpts);
    for (auto _ : state) benchmark::DoNotOptimize(prec_ds_check(x, y));
}
BENCHMARK(BM_prec_ds)->Arg(4)->Arg(8)->Arg(12);

void BM_quasi_jacobi(benchmark::State& state) {
    auto lam = sample_roots(std::size_t(state.range(0)));
    ComplexPoly p = ComplexPoly::from_roots(lam);
    auto mu = roots(p.derivative(), 11);
    NormalModel model = solve_inverse(SpectralPair(lam, mu));
    for (auto _ : state) benchmark::DoNotOptimize(quasi_jacobi(model));
}
BENCHMARK(BM_quasi_jacobi)->Arg(6)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
