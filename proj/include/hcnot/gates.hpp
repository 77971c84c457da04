#ifndef HCNOT_GATES_HPP
#define HCNOT_GATES_HPP

#include <cmath>

#include "hcnot/qstate.hpp"

namespace hcnot {

/// A unitary matrix, checked at construction: max |U^H U - I| <= 1e-12.
template <typename Scalar, int N>
class UnitaryGate {
public:
  using Matrix = SquareMatrix<Scalar, N>;

  explicit UnitaryGate(const Matrix& m) : matrix_(m) {
    detail::check_dim<N>();
    if (!m.allFinite()) throw UsageError("UnitaryGate: non-finite entry");
    const Scalar err = max_abs(m.adjoint() * m - Matrix::Identity());
    if (err > Scalar(1e-12))
      throw UsageError("UnitaryGate: matrix is not unitary (deviation " +
                       std::to_string(static_cast<double>(err)) + ")");
  }

  const Matrix& matrix() const { return matrix_; }

  UnitaryGate inverse() const { return UnitaryGate(matrix_.adjoint()); }

  friend UnitaryGate operator*(const UnitaryGate& lhs, const UnitaryGate& rhs) {
    return UnitaryGate(lhs.matrix_ * rhs.matrix_);
  }

private:
  Matrix matrix_;
};

template <typename Scalar = double>
using Gate2 = UnitaryGate<Scalar, 2>;
template <typename Scalar = double>
using Gate4 = UnitaryGate<Scalar, 4>;

/// Hadamard with T|0> = (|1> - |0>)/sqrt2 and T|1> = (|0> + |1>)/sqrt2,
/// i.e. rows (-1, 1; 1, 1)/sqrt2. This is the convention under which the
/// circuit maps the product basis onto the Bell basis as written out by hand.
template <typename Scalar = double>
Gate2<Scalar> hadamard() {
  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  Matrix2<Scalar> m;
  m << -r, r, r, r;
  return Gate2<Scalar>(m);
}

/// The textbook (sigma_x + sigma_z)/sqrt2 Hadamard. It equals
/// sigma_x * hadamard() * sigma_x, so it differs from hadamard() only by a
/// local unitary.
template <typename Scalar = double>
Gate2<Scalar> hadamard_pauli_sum() {
  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  return Gate2<Scalar>((pauli_x<Scalar>() + pauli_z<Scalar>()) * Complex<Scalar>(r));
}

/// C_12: flips the second qubit when the first is |1>. Block form diag(I, NOT).
template <typename Scalar = double>
Gate4<Scalar> cnot() {
  Matrix4<Scalar> m = Matrix4<Scalar>::Zero();
  m.template block<2, 2>(0, 0) = Matrix2<Scalar>::Identity();
  m.template block<2, 2>(2, 2) = pauli_x<Scalar>();
  return Gate4<Scalar>(m);
}

/// Hadamard on the first qubit followed by CNOT.
template <typename Scalar = double>
Gate4<Scalar> circuit() {
  static const Gate4<Scalar> u(cnot<Scalar>().matrix() *
                               kron<Scalar>(hadamard<Scalar>().matrix(),
                                            Matrix2<Scalar>::Identity()));
  return u;
}

/// Same circuit built from hadamard_pauli_sum().
template <typename Scalar = double>
Gate4<Scalar> circuit_pauli_sum() {
  return Gate4<Scalar>(cnot<Scalar>().matrix() *
                       kron<Scalar>(hadamard_pauli_sum<Scalar>().matrix(),
                                    Matrix2<Scalar>::Identity()));
}

template <typename Scalar>
PureState<Scalar> apply(const Gate4<Scalar>& u, const PureState<Scalar>& psi) {
  return PureState<Scalar>::normalized(u.matrix() * psi.amplitudes());
}

/// U rho U^H, re-symmetrized and trace-renormalized to absorb roundoff.
/// Throws NumericError if the result is not a valid state or its spectrum
/// drifted from the input's by more than 1e-9.
template <typename Scalar>
DensityMatrix<Scalar> apply(const Gate4<Scalar>& u, const DensityMatrix<Scalar>& rho) {
  Matrix4<Scalar> out = u.matrix() * rho.matrix() * u.matrix().adjoint();
  out = hermitian_part<Scalar, 4>(out);
  out /= out.trace().real();
  auto result = DensityMatrix<Scalar>::from_computed(out);
  const Scalar drift = (result.spectrum().values - rho.spectrum().values).cwiseAbs().maxCoeff();
  if (drift > Scalar(1e-9))
    throw NumericError("apply: spectrum changed under unitary conjugation by " +
                       std::to_string(static_cast<double>(drift)));
  return result;
}

}  // namespace hcnot

#endif  // HCNOT_GATES_HPP
