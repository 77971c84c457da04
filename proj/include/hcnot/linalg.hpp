#ifndef HCNOT_LINALG_HPP
#define HCNOT_LINALG_HPP

// Small dense complex kernel for the 2x2 and 4x4 problems of two-qubit
// physics. Everything is fixed-size Eigen so shape errors surface at compile
// time and nothing touches the heap.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "hcnot/errors.hpp"

namespace hcnot {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar, int N>
using SquareMatrix = Eigen::Matrix<Complex<Scalar>, N, N>;

template <typename Scalar>
using Matrix2 = SquareMatrix<Scalar, 2>;

template <typename Scalar>
using Matrix4 = SquareMatrix<Scalar, 4>;

template <typename Scalar>
using Vector4 = Eigen::Matrix<Complex<Scalar>, 4, 1>;

using Matrix2cd = Matrix2<double>;
using Matrix4cd = Matrix4<double>;
using Vector4cd = Vector4<double>;

namespace tolerance {
/// Structural checks: Hermiticity, orthonormality, reconstruction.
inline constexpr double kStructural = 1e-10;
/// Composed operations such as sqrt-then-square.
inline constexpr double kComposed = 1e-8;
/// Eigenvalues in [-kClamp, 0) are roundoff and get clamped to zero.
inline constexpr double kClamp = 1e-10;
/// Anything more negative than this is not PSD.
inline constexpr double kNotPsd = 1e-6;
}  // namespace tolerance

namespace detail {
template <int N>
constexpr void check_dim() {
  static_assert(N == 2 || N == 4, "only 2x2 and 4x4 matrices are supported");
}
}  // namespace detail

/// Largest absolute entry, the norm every tolerance in this project uses.
template <typename Derived>
auto max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

template <typename Scalar, int N>
bool all_finite(const SquareMatrix<Scalar, N>& a) {
  return a.allFinite();
}

template <typename Scalar, int N>
SquareMatrix<Scalar, N> matmul(const SquareMatrix<Scalar, N>& a,
                               const SquareMatrix<Scalar, N>& b) {
  detail::check_dim<N>();
  return a * b;
}

template <typename Scalar, int N>
SquareMatrix<Scalar, N> adjoint(const SquareMatrix<Scalar, N>& a) {
  detail::check_dim<N>();
  return a.adjoint();
}

/// Kronecker product a (x) b. The first factor acts on the first qubit, so
/// with basis order |00>,|01>,|10>,|11> entry (2i+k, 2j+l) is a(i,j) b(k,l).
template <typename Scalar>
Matrix4<Scalar> kron(const Matrix2<Scalar>& a, const Matrix2<Scalar>& b) {
  Matrix4<Scalar> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.template block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// Max-entry deviation of a from its adjoint.
template <typename Scalar, int N>
Scalar hermiticity_error(const SquareMatrix<Scalar, N>& a) {
  return max_abs(a - a.adjoint());
}

template <typename Scalar, int N>
SquareMatrix<Scalar, N> hermitian_part(const SquareMatrix<Scalar, N>& a) {
  return (a + a.adjoint()) * Scalar(0.5);
}

template <typename Scalar, int N>
struct EigenSystem {
  /// Non-increasing.
  Eigen::Matrix<Scalar, N, 1> values;
  /// Column i is the unit eigenvector for values[i].
  SquareMatrix<Scalar, N> vectors;

  SquareMatrix<Scalar, N> reconstruct() const {
    return vectors * values.template cast<Complex<Scalar>>().asDiagonal() *
           vectors.adjoint();
  }
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot a(p,q) with a diagonal
/// unitary and then applies the classical real Jacobi rotation, so the
/// accumulated transform stays exactly unitary up to roundoff. Sweeps stop
/// once the off-diagonal mass falls below machine precision relative to the
/// Frobenius norm.
///
/// Throws UsageError for non-finite or non-Hermitian input (tolerance 1e-10)
/// and NumericError if the sweep budget is exhausted.
template <typename Scalar, int N>
EigenSystem<Scalar, N> hermitian_eigensystem(const SquareMatrix<Scalar, N>& input) {
  detail::check_dim<N>();
  using C = Complex<Scalar>;
  if (!input.allFinite()) throw UsageError("hermitian_eigensystem: non-finite entry");
  if (hermiticity_error(input) > Scalar(tolerance::kStructural))
    throw UsageError("hermitian_eigensystem: input is not Hermitian");

  SquareMatrix<Scalar, N> a = hermitian_part(input);
  SquareMatrix<Scalar, N> v = SquareMatrix<Scalar, N>::Identity();

  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar scale2 = a.squaredNorm();
  constexpr int kMaxSweeps = 64;

  auto off_diagonal2 = [&a]() {
    Scalar s = 0;
    for (int p = 0; p < N; ++p)
      for (int q = p + 1; q < N; ++q) s += std::norm(a(p, q));
    return s;
  };

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const Scalar off2 = off_diagonal2();
    if (off2 <= eps * eps * scale2 || off2 == Scalar(0)) {
      converged = true;
      break;
    }
    for (int p = 0; p < N - 1; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const Scalar mag = std::abs(a(p, q));
        if (mag == Scalar(0)) continue;
        const C phase = a(p, q) / mag;  // e^{i phi}
        const Scalar app = a(p, p).real();
        const Scalar aqq = a(q, q).real();
        const Scalar theta = (aqq - app) / (Scalar(2) * mag);
        Scalar t = Scalar(1) / (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
        if (theta < Scalar(0)) t = -t;
        const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
        const Scalar s = t * c;

        // G acts on the (p,q) plane: [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
        const C gpp = c;
        const C gpq = s;
        const C gqp = -s * std::conj(phase);
        const C gqq = c * std::conj(phase);

        for (int k = 0; k < N; ++k) {  // a <- a G
          const C akp = a(k, p);
          const C akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (int k = 0; k < N; ++k) {  // a <- G^H a
          const C apk = a(p, k);
          const C aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        for (int k = 0; k < N; ++k) {  // v <- v G
          const C vkp = v(k, p);
          const C vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
        a(p, q) = C(0);
        a(q, p) = C(0);
        a(p, p) = C(app - t * mag);
        a(q, q) = C(aqq + t * mag);
      }
    }
  }
  if (!converged) throw NumericError("hermitian_eigensystem: Jacobi sweeps did not converge");

  std::array<int, N> order;
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&a](int i, int j) { return a(i, i).real() > a(j, j).real(); });

  EigenSystem<Scalar, N> out;
  for (int i = 0; i < N; ++i) {
    out.values(i) = a(order[i], order[i]).real();
    out.vectors.col(i) = v.col(order[i]);
  }
  return out;
}

/// Principal square root of a Hermitian positive semidefinite matrix.
/// Eigenvalues down to -1e-10 are treated as zero; below -1e-6 the input is
/// rejected as not PSD.
template <typename Scalar, int N>
SquareMatrix<Scalar, N> psd_sqrt(const SquareMatrix<Scalar, N>& a) {
  const auto es = hermitian_eigensystem(a);
  Eigen::Matrix<Complex<Scalar>, N, 1> roots;
  for (int i = 0; i < N; ++i) {
    Scalar lam = es.values(i);
    if (lam < -Scalar(tolerance::kNotPsd))
      throw UsageError("psd_sqrt: input is not positive semidefinite (eigenvalue " +
                       std::to_string(static_cast<double>(lam)) + ")");
    roots(i) = std::sqrt(std::max(lam, Scalar(0)));
  }
  return es.vectors * roots.asDiagonal() * es.vectors.adjoint();
}

/// Pauli matrices sigma_x, sigma_y, sigma_z.
template <typename Scalar = double>
Matrix2<Scalar> pauli_x() {
  Matrix2<Scalar> m;
  m << 0, 1, 1, 0;
  return m;
}

template <typename Scalar = double>
Matrix2<Scalar> pauli_y() {
  using C = Complex<Scalar>;
  Matrix2<Scalar> m;
  m << C(0), C(0, -1), C(0, 1), C(0);
  return m;
}

template <typename Scalar = double>
Matrix2<Scalar> pauli_z() {
  Matrix2<Scalar> m;
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace hcnot

#endif  // HCNOT_LINALG_HPP
