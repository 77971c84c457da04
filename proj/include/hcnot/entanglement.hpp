#ifndef HCNOT_ENTANGLEMENT_HPP
#define HCNOT_ENTANGLEMENT_HPP

// Wootters concurrence and entanglement of formation for two qubits.

#include <array>
#include <cmath>

#include "hcnot/qstate.hpp"

namespace hcnot {

template <typename Scalar = double>
struct ConcurrenceReport {
  /// Square roots of the eigenvalues of rho * rho_tilde, non-increasing.
  std::array<Scalar, 4> lambdas{};
  Scalar concurrence = 0;
  Scalar eof = 0;
};

/// sigma_y (x) sigma_y, the real anti-diagonal matrix (-1, 1, 1, -1).
template <typename Scalar = double>
Matrix4<Scalar> spin_flip() {
  return kron<Scalar>(pauli_y<Scalar>(), pauli_y<Scalar>());
}

/// Spin-flipped state (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y),
/// taken in the product basis.
template <typename Scalar>
Matrix4<Scalar> rho_tilde(const Matrix4<Scalar>& rho) {
  const Matrix4<Scalar> yy = spin_flip<Scalar>();
  return yy * rho.conjugate() * yy;
}

template <typename Scalar>
Matrix4<Scalar> rho_tilde(const DensityMatrix<Scalar>& rho) {
  return rho_tilde<Scalar>(rho.matrix());
}

namespace detail {
// -x log2 x - y log2 y with y = 1 - x supplied separately so callers can pass
// an accurately computed complement.
template <typename Scalar>
Scalar entropy_pair(Scalar x, Scalar y) {
  auto term = [](Scalar p) { return p > Scalar(0) ? -p * std::log2(p) : Scalar(0); };
  return term(x) + term(y);
}
}  // namespace detail

/// h(x) = -x log2 x - (1-x) log2 (1-x) with 0 log 0 = 0.
/// Throws UsageError when x lies outside [0, 1] by more than 1e-12.
template <typename Scalar>
Scalar binary_entropy(Scalar x) {
  if (!(x >= Scalar(-1e-12) && x <= Scalar(1) + Scalar(1e-12)))
    throw UsageError("binary_entropy: argument outside [0, 1]");
  x = std::clamp(x, Scalar(0), Scalar(1));
  return std::min(Scalar(1), detail::entropy_pair(x, Scalar(1) - x));
}

/// E = h((1 + sqrt(1 - C^2)) / 2).
template <typename Scalar>
Scalar eof_from_concurrence(Scalar c) {
  if (!(c >= Scalar(-1e-12) && c <= Scalar(1) + Scalar(1e-12)))
    throw UsageError("eof_from_concurrence: concurrence outside [0, 1]");
  c = std::clamp(c, Scalar(0), Scalar(1));
  const Scalar root = std::sqrt((Scalar(1) - c) * (Scalar(1) + c));
  // 1 - x = C^2 / (2 (1 + sqrt(1 - C^2))) stays accurate for small C.
  const Scalar upper = (Scalar(1) + root) / Scalar(2);
  const Scalar lower = c * c / (Scalar(2) * (Scalar(1) + root));
  return std::min(Scalar(1), detail::entropy_pair(upper, lower));
}

/// Eigenvalues of rho below this are roundoff on a rank-deficient state and
/// are treated as exact zeros before taking square roots.
inline constexpr double kRankCutoff = 1e-14;

/// Concurrence report for a two-qubit state.
///
/// With S = sqrt(rho) and Y = sigma_y (x) sigma_y, rho_tilde = (Y S^* Y)^2,
/// so rho * rho_tilde is similar to S rho_tilde S = B B^H for B = S Y S^* Y.
/// The lambdas are therefore the singular values of S Y S^*, obtained without
/// a non-Hermitian eigenproblem and without squaring them first: square roots
/// of tiny eigenvalues of S rho_tilde S would turn 1e-17 roundoff into 3e-9.
template <typename Scalar>
ConcurrenceReport<Scalar> concurrence(const DensityMatrix<Scalar>& rho) {
  const auto& es = rho.spectrum();
  Eigen::Matrix<Complex<Scalar>, 4, 1> roots;
  for (int i = 0; i < 4; ++i) {
    const Scalar v = es.values(i);
    roots(i) = v > Scalar(kRankCutoff) ? std::sqrt(v) : Scalar(0);
  }
  const Matrix4<Scalar> sqrt_rho = es.vectors * roots.asDiagonal() * es.vectors.adjoint();
  const Matrix4<Scalar> b = sqrt_rho * spin_flip<Scalar>() * sqrt_rho.conjugate();

  const Eigen::JacobiSVD<Matrix4<Scalar>> svd(b);
  if (!svd.singularValues().allFinite())
    throw NumericError("concurrence: singular value decomposition failed");

  ConcurrenceReport<Scalar> report;
  for (int i = 0; i < 4; ++i) report.lambdas[i] = svd.singularValues()(i);  // non-increasing
  const Scalar c = report.lambdas[0] - report.lambdas[1] - report.lambdas[2] - report.lambdas[3];
  report.concurrence = std::clamp(c, Scalar(0), Scalar(1));
  report.eof = eof_from_concurrence(report.concurrence);
  return report;
}

/// Entanglement of formation, in [0, 1].
template <typename Scalar>
Scalar eof(const DensityMatrix<Scalar>& rho) {
  return concurrence(rho).eof;
}

/// Closed form for pure states a|00> + b|01> + c|10> + d|11>: C = 2|ad - bc|.
template <typename Scalar>
Scalar pure_concurrence_oracle(const PureState<Scalar>& psi) {
  const Scalar c = Scalar(2) * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
  return std::min(c, Scalar(1));
}

}  // namespace hcnot

#endif  // HCNOT_ENTANGLEMENT_HPP
