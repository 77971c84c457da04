#include "hcnot/sampling.hpp"

#include <algorithm>

namespace hcnot {

Gate4<double> haar_unitary(RandomStream& rng) {
  for (;;) {
    Matrix4cd z;
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) z(i, j) = rng.complex_normal();

    const Eigen::HouseholderQR<Matrix4cd> qr(z);
    const auto r_diag = qr.matrixQR().diagonal();
    bool degenerate = false;
    Vector4cd phases;
    for (int i = 0; i < 4; ++i) {
      const double mag = std::abs(r_diag(i));
      if (mag == 0.0) {
        degenerate = true;
        break;
      }
      phases(i) = r_diag(i) / mag;
    }
    if (degenerate) continue;
    const Matrix4cd q = qr.householderQ();
    return Gate4<double>(q * phases.asDiagonal());
  }
}

SimplexPoint simplex_point(RandomStream& rng) {
  std::array<double, 3> cuts{rng.uniform(), rng.uniform(), rng.uniform()};
  std::sort(cuts.begin(), cuts.end());
  SimplexPoint p;
  p.lambdas = {cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], 1.0 - cuts[2]};
  return p;
}

DensityMatrix<double> random_mixed_state(RandomStream& rng) {
  const Gate4<double> u = haar_unitary(rng);
  const SimplexPoint weights = simplex_point(rng);
  Vector4cd diag;
  for (int i = 0; i < 4; ++i) diag(i) = weights.lambdas[i];
  const Matrix4cd rho = u.matrix() * diag.asDiagonal() * u.matrix().adjoint();
  return DensityMatrix<double>::from_computed(hermitian_part<double, 4>(rho));
}

PureState<double> random_pure_state(RandomStream& rng) {
  for (;;) {
    Vector4cd v;
    for (int i = 0; i < 4; ++i) v(i) = rng.complex_normal();
    if (v.norm() > 0.0) return PureState<double>::normalized(v);
  }
}

}  // namespace hcnot
