#include "mcdqc/qsim/kernels.hpp"

#include <algorithm>

namespace mcdqc::qsim::kernels {

namespace detail {

std::vector<std::size_t> local_offsets(std::size_t num_qubits,
                                       std::span<const std::size_t> targets) {
  const std::size_t k = targets.size();
  std::vector<std::size_t> off(std::size_t{1} << k, 0);
  for (std::size_t a = 0; a < off.size(); ++a) {
    std::size_t o = 0;
    for (std::size_t j = 0; j < k; ++j) {
      // local index bit (k-1-j) belongs to targets[j]
      if ((a >> (k - 1 - j)) & 1U) o |= std::size_t{1} << (num_qubits - 1 - targets[j]);
    }
    off[a] = o;
  }
  return off;
}

std::size_t target_mask(std::size_t num_qubits, std::span<const std::size_t> targets) {
  std::size_t mask = 0;
  for (auto t : targets) mask |= std::size_t{1} << (num_qubits - 1 - t);
  return mask;
}

std::vector<std::size_t> base_indices(std::size_t num_qubits,
                                      std::span<const std::size_t> targets) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  const std::size_t mask = target_mask(num_qubits, targets);
  std::vector<std::size_t> bases;
  bases.reserve(dim >> targets.size());
  for (std::size_t i = 0; i < dim; ++i)
    if ((i & mask) == 0) bases.push_back(i);
  return bases;
}

}  // namespace detail

namespace serial {

void apply_left(Matrix& rho, std::size_t num_qubits, const Matrix& u,
                std::span<const std::size_t> targets) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  const auto off = detail::local_offsets(num_qubits, targets);
  const auto bases = detail::base_indices(num_qubits, targets);
  const std::size_t local = off.size();
  std::vector<Complex> in(local), out(local);
  Complex* data = rho.data();
  for (std::size_t c = 0; c < dim; ++c) {
    Complex* col = data + c * dim;
    for (std::size_t b : bases) {
      for (std::size_t a = 0; a < local; ++a) in[a] = col[b + off[a]];
      for (std::size_t a = 0; a < local; ++a) {
        Complex acc{0.0, 0.0};
        for (std::size_t x = 0; x < local; ++x) acc += u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(x)) * in[x];
        out[a] = acc;
      }
      for (std::size_t a = 0; a < local; ++a) col[b + off[a]] = out[a];
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
  std::vector<Complex> buf(local * dim);
  Complex* data = rho.data();
  for (std::size_t b : bases) {
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

Matrix partial_trace(const Matrix& rho, std::size_t num_qubits,
                     std::span<const std::size_t> keep) {
  std::vector<std::size_t> traced;
  for (std::size_t q = 0; q < num_qubits; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  const auto koff = detail::local_offsets(num_qubits, keep);
  const auto toff = detail::local_offsets(num_qubits, traced);
  const auto kd = static_cast<Eigen::Index>(koff.size());
  Matrix out = Matrix::Zero(kd, kd);
  for (Eigen::Index b = 0; b < kd; ++b)
    for (Eigen::Index a = 0; a < kd; ++a) {
      Complex acc{0.0, 0.0};
      for (std::size_t e : toff)
        acc += rho(static_cast<Eigen::Index>(koff[static_cast<std::size_t>(a)] + e),
                   static_cast<Eigen::Index>(koff[static_cast<std::size_t>(b)] + e));
      out(a, b) = acc;
    }
  return out;
}

Matrix twirl(const Matrix& rho, std::size_t num_qubits, std::span<const Matrix> us,
             std::span<const std::size_t> targets) {
  Matrix acc = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& u : us) {
    Matrix tmp = rho;
    apply_left(tmp, num_qubits, u, targets);
    apply_right_adjoint(tmp, num_qubits, u, targets);
    acc += tmp;
  }
  if (!us.empty()) acc /= static_cast<double>(us.size());
  return acc;
}

}  // namespace serial

void conjugate(Matrix& rho, std::size_t num_qubits, const Matrix& u,
               std::span<const std::size_t> targets) {
  if (num_qubits >= kParallelThresholdQubits) {
    parallel::apply_left(rho, num_qubits, u, targets);
    parallel::apply_right_adjoint(rho, num_qubits, u, targets);
  } else {
    serial::apply_left(rho, num_qubits, u, targets);
    serial::apply_right_adjoint(rho, num_qubits, u, targets);
  }
}

Matrix partial_trace(const Matrix& rho, std::size_t num_qubits,
                     std::span<const std::size_t> keep) {
  return num_qubits >= kParallelThresholdQubits
             ? parallel::partial_trace(rho, num_qubits, keep)
             : serial::partial_trace(rho, num_qubits, keep);
}

Matrix twirl(const Matrix& rho, std::size_t num_qubits, std::span<const Matrix> us,
             std::span<const std::size_t> targets) {
  return us.size() >= 64 ? parallel::twirl(rho, num_qubits, us, targets)
                         : serial::twirl(rho, num_qubits, us, targets);
}

}  // namespace mcdqc::qsim::kernels
