#ifndef HCNOT_SAMPLING_HPP
#define HCNOT_SAMPLING_HPP

// Random two-qubit states. Mixed states follow the product measure
// Haar(U(4)) x Lebesgue(simplex): rho = sum_i lambda_i |u_i><u_i| with the
// u_i the columns of a Haar unitary and lambda uniform on the 3-simplex.
// Pure states are Haar-uniform on the unit sphere of C^4.

#include <array>

#include "hcnot/gates.hpp"
#include "hcnot/random_stream.hpp"

namespace hcnot {

struct SimplexPoint {
  std::array<double, 4> lambdas{};
};

/// Haar-distributed U(4) element: Ginibre matrix, Householder QR, then the
/// columns of Q rephased by r_ii / |r_ii| so the law does not depend on the
/// QR sign convention.
Gate4<double> haar_unitary(RandomStream& rng);

/// Uniform point of the 3-simplex: spacings of three sorted uniforms.
SimplexPoint simplex_point(RandomStream& rng);

DensityMatrix<double> random_mixed_state(RandomStream& rng);

/// Four i.i.d. complex Gaussians, normalized.
PureState<double> random_pure_state(RandomStream& rng);

}  // namespace hcnot

#endif  // HCNOT_SAMPLING_HPP
