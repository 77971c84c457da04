#ifndef HCNOT_QSTATE_HPP
#define HCNOT_QSTATE_HPP

// Two-qubit states in the product basis |00>,|01>,|10>,|11>. The first
// (left) qubit is the CNOT control and the Hadamard target.

#include <optional>
#include <string>

#include "hcnot/linalg.hpp"

namespace hcnot {

/// Unit vector of four amplitudes (a, b, c, d) over |00>,|01>,|10>,|11>.
template <typename Scalar = double>
class PureState {
public:
  using Amplitudes = Vector4<Scalar>;

  /// Throws UsageError unless the 2-norm is 1 within 1e-10.
  explicit PureState(const Amplitudes& amplitudes) : amplitudes_(amplitudes) {
    if (!amplitudes.allFinite()) throw UsageError("PureState: non-finite amplitude");
    const Scalar norm = amplitudes.norm();
    if (std::abs(norm - Scalar(1)) > Scalar(tolerance::kStructural))
      throw UsageError("PureState: amplitudes are not normalized (norm " +
                       std::to_string(static_cast<double>(norm)) + ")");
  }

  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(const Amplitudes& v) {
    const Scalar norm = v.norm();
    if (!(norm > Scalar(0)) || !std::isfinite(norm))
      throw UsageError("PureState: cannot normalize a zero or non-finite vector");
    return PureState(v / norm);
  }

  /// Computational basis state |index>, index in [0, 4).
  static PureState basis(int index) {
    if (index < 0 || index > 3) throw UsageError("PureState::basis: index out of range");
    return PureState(Amplitudes::Unit(index));
  }

  const Amplitudes& amplitudes() const { return amplitudes_; }
  const Complex<Scalar>& operator[](int i) const { return amplitudes_(i); }

private:
  Amplitudes amplitudes_;
};

/// Validated two-qubit density matrix. The spectral decomposition is
/// computed once at construction (it is needed for the positivity check)
/// and kept for the consumers that want it.
template <typename Scalar = double>
class DensityMatrix {
public:
  using Matrix = Matrix4<Scalar>;

  /// Throws UsageError unless the matrix is Hermitian, has unit trace and is
  /// positive semidefinite, each within 1e-10.
  explicit DensityMatrix(const Matrix& m) : DensityMatrix(m, Source::kCaller) {}

  /// Same checks as the constructor but failure is reported as NumericError:
  /// use this for matrices produced by a computation that should have
  /// preserved the invariants.
  static DensityMatrix from_computed(const Matrix& m) {
    return DensityMatrix(m, Source::kComputation);
  }

  static DensityMatrix maximally_mixed() {
    return DensityMatrix(Matrix::Identity() * Complex<Scalar>(Scalar(0.25)));
  }

  /// Returns a description of the first violated invariant, if any.
  static std::optional<std::string> violation(const Matrix& m) {
    if (!m.allFinite()) return "non-finite entry";
    const Scalar herm = hermiticity_error<Scalar, 4>(m);
    if (herm > Scalar(tolerance::kStructural))
      return "not Hermitian (deviation " + std::to_string(static_cast<double>(herm)) + ")";
    const Scalar tr = m.trace().real();
    if (std::abs(tr - Scalar(1)) > Scalar(tolerance::kStructural))
      return "trace is " + std::to_string(static_cast<double>(tr));
    return std::nullopt;
  }

  const Matrix& matrix() const { return matrix_; }
  const EigenSystem<Scalar, 4>& spectrum() const { return spectrum_; }
  Scalar min_eigenvalue() const { return spectrum_.values(3); }

private:
  enum class Source { kCaller, kComputation };

  DensityMatrix(const Matrix& m, Source source) {
    auto fail = [source](const std::string& why) {
      if (source == Source::kCaller) throw UsageError("DensityMatrix: " + why);
      throw NumericError("DensityMatrix: " + why);
    };
    if (auto why = violation(m)) fail(*why);
    matrix_ = hermitian_part<Scalar, 4>(m);
    spectrum_ = hermitian_eigensystem<Scalar, 4>(matrix_);
    if (spectrum_.values(3) < -Scalar(tolerance::kClamp))
      fail("not positive semidefinite (min eigenvalue " +
           std::to_string(static_cast<double>(spectrum_.values(3))) + ")");
  }

  Matrix matrix_;
  EigenSystem<Scalar, 4> spectrum_;
};

/// |psi><psi|.
template <typename Scalar>
DensityMatrix<Scalar> densify(const PureState<Scalar>& psi) {
  const auto& v = psi.amplitudes();
  return DensityMatrix<Scalar>(v * v.adjoint());
}

/// Tr(rho^2), in [1/4, 1].
template <typename Scalar>
Scalar purity(const DensityMatrix<Scalar>& rho) {
  // For Hermitian rho, Tr(rho^2) = sum |rho_ij|^2.
  return rho.matrix().squaredNorm();
}

/// Transpose on the second qubit: entry (ij),(kl) moves to (il),(kj).
template <typename Scalar>
Matrix4<Scalar> partial_transpose(const Matrix4<Scalar>& m) {
  Matrix4<Scalar> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + l, 2 * k + j) = m(2 * i + j, 2 * k + l);
  return out;
}

template <typename Scalar>
Matrix4<Scalar> partial_transpose(const DensityMatrix<Scalar>& rho) {
  return partial_transpose<Scalar>(rho.matrix());
}

/// Smallest eigenvalue of the partial transpose; negative iff entangled.
template <typename Scalar>
Scalar min_partial_transpose_eigenvalue(const DensityMatrix<Scalar>& rho) {
  return hermitian_eigensystem<Scalar, 4>(partial_transpose(rho)).values(3);
}

/// Peres-Horodecki verdict, exact for two qubits.
template <typename Scalar>
bool is_entangled_ppt(const DensityMatrix<Scalar>& rho) {
  return min_partial_transpose_eigenvalue(rho) < -Scalar(1e-9);
}

}  // namespace hcnot

#endif  // HCNOT_QSTATE_HPP
