#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mcdqc/qsim/coins.hpp"
#include "mcdqc/qsim/types.hpp"

namespace mcdqc::qsim {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Signed Pauli operator i^phase * P_0 (x) ... (x) P_{n-1}.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<PauliLetter> letters, std::uint8_t phase = 0);

  /// "XZI", optionally prefixed by "+", "-", "i", "-i".
  static PauliString parse(std::string_view text);
  static PauliString identity(std::size_t length);
  /// Index in [0, 4^n): base-4 digits with letter 0 most significant.
  static PauliString from_index(std::size_t index, std::size_t length);
  /// Uniform non-identity Pauli (phase +1).
  static PauliString random_nonidentity(std::size_t length, Coins& coins);
  /// All 4^n - 1 non-identity strings in index order.
  static std::vector<PauliString> all_nonidentity(std::size_t length);

  std::size_t length() const { return letters_.size(); }
  const std::vector<PauliLetter>& letters() const { return letters_; }
  std::uint8_t phase() const { return phase_; }
  bool is_identity() const;
  std::size_t index() const;

  Matrix matrix() const;
  /// Letters only, e.g. "XZ"; phase prefix included when not +1.
  std::string str() const;

  PauliString operator*(const PauliString& rhs) const;
  bool operator==(const PauliString&) const = default;

 private:
  std::vector<PauliLetter> letters_;
  std::uint8_t phase_ = 0;  // exponent of i, mod 4
};

/// Pauli-basis expansion coefficients Tr(P^dagger M) / 2^n indexed like PauliString::index().
std::vector<Complex> pauli_coefficients(const Matrix& m);

/// If m equals c * P for a single Pauli P with |c| = 1, returns that signed Pauli
/// (phase chosen among {+1,+i,-1,-i}; throws Error otherwise).
PauliString as_signed_pauli(const Matrix& m, double tolerance = tol::kStructural);

}  // namespace mcdqc::qsim
