#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <Eigen/Dense>

namespace mcdqc::qsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Tolerances shared by every module.
namespace tol {
inline constexpr double kStructural = 1e-10;  // hermiticity, trace, unitarity
inline constexpr double kComparison = 1e-9;   // state equality checks
inline constexpr double kPsd = 1e-9;          // minimum eigenvalue slack
inline constexpr double kBranch = 1e-12;      // zero-probability measurement guard
}  // namespace tol

inline constexpr std::size_t kMaxQubits = 12;

/// Base for all recoverable errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested operation would exceed the qubit budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed; indicates a bug rather than bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Stable identity of a qubit inside a substrate, independent of its position.
struct QubitId {
  std::uint32_t value = 0;
  auto operator<=>(const QubitId&) const = default;
};

/// Distinguished out-of-band error marker (|err><err| orthogonal to every valid output).
struct ErrMarker {
  bool operator==(const ErrMarker&) const = default;
};

/// Either a density matrix or ERR.
using MaybeState = std::variant<ErrMarker, Matrix>;

inline bool is_err(const MaybeState& s) { return std::holds_alternative<ErrMarker>(s); }

enum class BasisState { Zero, One, Plus, Minus };

std::string to_string(BasisState s);
BasisState parse_basis_state(const std::string& text);

}  // namespace mcdqc::qsim
