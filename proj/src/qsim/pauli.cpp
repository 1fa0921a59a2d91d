#include "mcdqc/qsim/pauli.hpp"

#include <cmath>

#include "mcdqc/qsim/gates.hpp"
#include "mcdqc/qsim/linalg.hpp"

namespace mcdqc::qsim {

namespace {

// (a * b) = i^phase_table[a][b] * product_table[a][b]
constexpr std::uint8_t kProduct[4][4] = {
    {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
constexpr std::uint8_t kPhase[4][4] = {
    {0, 0, 0, 0}, {0, 0, 1, 3}, {0, 3, 0, 1}, {0, 1, 3, 0}};

const Matrix& letter_matrix(PauliLetter l) {
  switch (l) {
    case PauliLetter::I: return gate_matrix(GateKind::I);
    case PauliLetter::X: return gate_matrix(GateKind::X);
    case PauliLetter::Y: return gate_matrix(GateKind::Y);
    case PauliLetter::Z: return gate_matrix(GateKind::Z);
  }
  return gate_matrix(GateKind::I);
}

Complex i_pow(std::uint8_t k) {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[k % 4];
}

}  // namespace

PauliString::PauliString(std::vector<PauliLetter> letters, std::uint8_t phase)
    : letters_(std::move(letters)), phase_(static_cast<std::uint8_t>(phase % 4)) {}

PauliString PauliString::parse(std::string_view text) {
  std::uint8_t phase = 0;
  if (text.starts_with("-i")) {
    phase = 3;
    text.remove_prefix(2);
  } else if (text.starts_with("+i")) {
    phase = 1;
    text.remove_prefix(2);
  } else if (text.starts_with("i")) {
    phase = 1;
    text.remove_prefix(1);
  } else if (text.starts_with("-")) {
    phase = 2;
    text.remove_prefix(1);
  } else if (text.starts_with("+")) {
    text.remove_prefix(1);
  }
  std::vector<PauliLetter> letters;
  for (char c : text) {
    switch (c) {
      case 'I': letters.push_back(PauliLetter::I); break;
      case 'X': letters.push_back(PauliLetter::X); break;
      case 'Y': letters.push_back(PauliLetter::Y); break;
      case 'Z': letters.push_back(PauliLetter::Z); break;
      default: throw Error("bad Pauli letter '" + std::string(1, c) + "'");
    }
  }
  if (letters.empty()) throw Error("empty Pauli string");
  return PauliString(std::move(letters), phase);
}

PauliString PauliString::identity(std::size_t length) {
  return PauliString(std::vector<PauliLetter>(length, PauliLetter::I));
}

PauliString PauliString::from_index(std::size_t index, std::size_t length) {
  std::vector<PauliLetter> letters(length);
  for (std::size_t j = 0; j < length; ++j) {
    letters[length - 1 - j] = static_cast<PauliLetter>(index & 3U);
    index >>= 2;
  }
  return PauliString(std::move(letters));
}

PauliString PauliString::random_nonidentity(std::size_t length, Coins& coins) {
  const std::size_t total = std::size_t{1} << (2 * length);
  return from_index(1 + coins.uniform(total - 1), length);
}

std::vector<PauliString> PauliString::all_nonidentity(std::size_t length) {
  std::vector<PauliString> out;
  const std::size_t total = std::size_t{1} << (2 * length);
  for (std::size_t k = 1; k < total; ++k) out.push_back(from_index(k, length));
  return out;
}

bool PauliString::is_identity() const {
  for (auto l : letters_)
    if (l != PauliLetter::I) return false;
  return true;
}

std::size_t PauliString::index() const {
  std::size_t idx = 0;
  for (auto l : letters_) idx = (idx << 2) | static_cast<std::size_t>(l);
  return idx;
}

Matrix PauliString::matrix() const {
  Matrix m = Matrix::Identity(1, 1);
  for (auto l : letters_) m = kron(m, letter_matrix(l));
  return i_pow(phase_) * m;
}

std::string PauliString::str() const {
  static const char* prefix[4] = {"", "i", "-", "-i"};
  std::string s = prefix[phase_];
  for (auto l : letters_) s.push_back("IXYZ"[static_cast<std::size_t>(l)]);
  return s;
}

PauliString PauliString::operator*(const PauliString& rhs) const {
  if (rhs.length() != length()) throw Error("Pauli length mismatch in product");
  std::vector<PauliLetter> letters(length());
  std::uint32_t phase = phase_ + rhs.phase_;
  for (std::size_t j = 0; j < length(); ++j) {
    const auto a = static_cast<std::size_t>(letters_[j]);
    const auto b = static_cast<std::size_t>(rhs.letters_[j]);
    letters[j] = static_cast<PauliLetter>(kProduct[a][b]);
    phase += kPhase[a][b];
  }
  return PauliString(std::move(letters), static_cast<std::uint8_t>(phase % 4));
}

std::vector<Complex> pauli_coefficients(const Matrix& m) {
  const auto dim = static_cast<std::size_t>(m.rows());
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim || m.cols() != m.rows())
    throw Error("pauli_coefficients: matrix is not 2^n x 2^n");
  std::vector<Complex> out(std::size_t{1} << (2 * n));
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Matrix p = PauliString::from_index(k, n).matrix();
    out[k] = (p.adjoint() * m).trace() / static_cast<double>(dim);
  }
  return out;
}

PauliString as_signed_pauli(const Matrix& m, double tolerance) {
  const auto coeffs = pauli_coefficients(m);
  std::size_t n = 0;
  while ((std::size_t{1} << n) < static_cast<std::size_t>(m.rows())) ++n;
  std::size_t hit = coeffs.size();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (std::abs(coeffs[k]) <= tolerance) continue;
    if (hit != coeffs.size()) throw Error("matrix is not a single Pauli operator");
    hit = k;
  }
  if (hit == coeffs.size() || std::abs(std::abs(coeffs[hit]) - 1.0) > tolerance)
    throw Error("matrix is not a single Pauli operator");
  const Complex c = coeffs[hit];
  for (std::uint8_t k = 0; k < 4; ++k)
    if (std::abs(c - i_pow(k)) <= 1e-6) {
      auto p = PauliString::from_index(hit, n);
      return PauliString(p.letters(), k);
    }
  throw Error("Pauli coefficient is not a power of i");
}

}  // namespace mcdqc::qsim
