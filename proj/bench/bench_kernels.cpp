// Serial reference kernels against their OpenMP counterparts.
//   ./mcdqc_bench --benchmark_filter=twirl

#include <array>
#include <numeric>
#include <vector>

#include <benchmark/benchmark.h>

#include "mcdqc/qsim/kernels.hpp"
#include "mcdqc/qsim/pauli.hpp"
#include "mcdqc/qsim/coins.hpp"

namespace {

using namespace mcdqc::qsim;

Matrix random_rho(std::size_t n) {
  SeededCoins coins(n);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Matrix a(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) a(i, j) = {coins.unit() - 0.5, coins.unit() - 0.5};
  Matrix rho = a * a.adjoint();
  return rho / rho.trace();
}

Matrix two_qubit_gate() {
  Matrix u = Matrix::Zero(4, 4);
  u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1;
  return u;
}

template <bool Parallel>
void BM_conjugate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix rho = random_rho(n);
  const Matrix u = two_qubit_gate();
  const std::array<std::size_t, 2> t{0, n - 1};
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::apply_left(rho, n, u, t);
      kernels::parallel::apply_right_adjoint(rho, n, u, t);
    } else {
      kernels::serial::apply_left(rho, n, u, t);
      kernels::serial::apply_right_adjoint(rho, n, u, t);
    }
    benchmark::DoNotOptimize(rho.data());
  }
}

template <bool Parallel>
void BM_partial_trace(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix rho = random_rho(n);
  std::vector<std::size_t> keep(n / 2);
  std::iota(keep.begin(), keep.end(), 0);
  for (auto _ : state) {
    Matrix r = Parallel ? kernels::parallel::partial_trace(rho, n, keep) : kernels::serial::partial_trace(rho, n, keep);
    benchmark::DoNotOptimize(r.data());
  }
}

template <bool Parallel>
void BM_twirl(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix rho = random_rho(n);
  std::vector<Matrix> paulis;
  for (const char* p : {"I", "X", "Y", "Z"}) paulis.push_back(PauliString::parse(p).matrix());
  const std::array<std::size_t, 1> t{n / 2};
  for (auto _ : state) {
    Matrix r = Parallel ? kernels::parallel::twirl(rho, n, paulis, t) : kernels::serial::twirl(rho, n, paulis, t);
    benchmark::DoNotOptimize(r.data());
  }
}

}  // namespace

BENCHMARK(BM_conjugate<false>)->Name("conjugate/serial")->DenseRange(4, 10, 2);
BENCHMARK(BM_conjugate<true>)->Name("conjugate/parallel")->DenseRange(4, 10, 2)->UseRealTime();
BENCHMARK(BM_partial_trace<false>)->Name("partial_trace/serial")->DenseRange(4, 10, 2);
BENCHMARK(BM_partial_trace<true>)->Name("partial_trace/parallel")->DenseRange(4, 10, 2)->UseRealTime();
BENCHMARK(BM_twirl<false>)->Name("twirl/serial")->DenseRange(4, 10, 2);
BENCHMARK(BM_twirl<true>)->Name("twirl/parallel")->DenseRange(4, 10, 2)->UseRealTime();

BENCHMARK_MAIN();
