#include "mcdqc/qsim/kernels.hpp"

#include <algorithm>

#include <omp.h>

namespace mcdqc::qsim::kernels::parallel {

void apply_left(Matrix& rho, std::size_t num_qubits, const Matrix& u,
                std::span<const std::size_t> targets) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  const auto off = detail::local_offsets(num_qubits, targets);
  const auto bases = detail::base_indices(num_qubits, targets);
  const std::size_t local = off.size();
  Complex* data = rho.data();
  const auto ncols = static_cast<std::int64_t>(dim);

#pragma omp parallel
  {
    std::vector<Complex> in(local), out(local);
#pragma omp for schedule(static)
    for (std::int64_t c = 0; c < ncols; ++c) {
      Complex* col = data + static_cast<std::size_t>(c) * dim;
      for (std::size_t b : bases) {
        for (std::size_t a = 0; a < local; ++a) in[a] = col[b + off[a]];
        for (std::size_t a = 0; a < local; ++a) {
          Complex acc{0.0, 0.0};
          for (std::size_t x = 0; x < local; ++x)
            acc += u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(x)) * in[x];
          out[a] = acc;
        }
        for (std::size_t a = 0; a < local; ++a) col[b + off[a]] = out[a];
      }
    }
  }
}

void apply_right_adjoint(Matrix& rho, std::size_t num_qubits, const Matrix& u,
                         std::span<const std::size_t> targets) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  const auto off = detail::local_offsets(num_qubits, targets);
  const auto bases = detail::base_indices(num_qubits, targets);
  const std::size_t local = off.size();
  const Matrix uc = u.conjugate();
  Complex* data = rho.data();
  const auto nbases = static_cast<std::int64_t>(bases.size());

  // Distinct bases touch disjoint column groups, so they can run concurrently.
#pragma omp parallel
  {
    std::vector<Complex> buf(local * dim);
#pragma omp for schedule(static)
    for (std::int64_t bi = 0; bi < nbases; ++bi) {
      const std::size_t b = bases[static_cast<std::size_t>(bi)];
      std::fill(buf.begin(), buf.end(), Complex{0.0, 0.0});
      for (std::size_t a = 0; a < local; ++a) {
        Complex* dst = buf.data() + a * dim;
        for (std::size_t x = 0; x < local; ++x) {
          const Complex w = uc(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(x));
          if (w == Complex{0.0, 0.0}) continue;
          const Complex* src = data + (b + off[x]) * dim;
          for (std::size_t r = 0; r < dim; ++r) dst[r] += w * src[r];
        }
      }
      for (std::size_t a = 0; a < local; ++a)
        std::copy_n(buf.data() + a * dim, dim, data + (b + off[a]) * dim);
    }
  }
}

Matrix partial_trace(const Matrix& rho, std::size_t num_qubits,
                     std::span<const std::size_t> keep) {
  std::vector<std::size_t> traced;
  for (std::size_t q = 0; q < num_qubits; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  const auto koff = detail::local_offsets(num_qubits, keep);
  const auto toff = detail::local_offsets(num_qubits, traced);
  const auto kd = static_cast<Eigen::Index>(koff.size());
  Matrix out = Matrix::Zero(kd, kd);
  const auto n = static_cast<std::int64_t>(kd);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < n; ++b)
    for (Eigen::Index a = 0; a < kd; ++a) {
      Complex acc{0.0, 0.0};
      for (std::size_t e : toff)
        acc += rho(static_cast<Eigen::Index>(koff[static_cast<std::size_t>(a)] + e),
                   static_cast<Eigen::Index>(koff[static_cast<std::size_t>(b)] + e));
      out(a, static_cast<Eigen::Index>(b)) = acc;
    }
  return out;
}

Matrix twirl(const Matrix& rho, std::size_t num_qubits, std::span<const Matrix> us,
             std::span<const std::size_t> targets) {
  const int threads = omp_get_max_threads();
  std::vector<Matrix> partial(static_cast<std::size_t>(threads),
                              Matrix::Zero(rho.rows(), rho.cols()));
  const auto n = static_cast<std::int64_t>(us.size());
#pragma omp parallel
  {
    Matrix& acc = partial[static_cast<std::size_t>(omp_get_thread_num())];
    Matrix tmp(rho.rows(), rho.cols());
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      tmp = rho;
      serial::apply_left(tmp, num_qubits, us[static_cast<std::size_t>(i)], targets);
      serial::apply_right_adjoint(tmp, num_qubits, us[static_cast<std::size_t>(i)], targets);
      acc += tmp;
    }
  }
  Matrix total = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& p : partial) total += p;
  if (!us.empty()) total /= static_cast<double>(us.size());
  return total;
}

}  // namespace mcdqc::qsim::kernels::parallel
