#ifndef HCNOT_RANDOM_STREAM_HPP
#define HCNOT_RANDOM_STREAM_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <utility>

namespace hcnot {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3"). Maps a 128-bit counter and 64-bit key to 128 bits.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based random stream. The key is the 64-bit seed; the counter
/// holds (block, lane, stream_index lo, stream_index hi), so every
/// (seed, stream_index, lane) triple names an independent sequence that can
/// be generated without touching any other. Monte Carlo trial t uses
/// stream_index t; the lane distinguishes resampling attempts of a trial.
///
/// Single-owner: copy it to fork a replay, never share one across threads.
class RandomStream {
public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_index, std::uint32_t lane = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_index_; }
  std::uint32_t lane() const { return lane_; }

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();

  /// Two independent standard normals via Box-Muller on two uniform() draws.
  std::pair<double, double> normal_pair();

  /// Standard complex Gaussian, E|z|^2 = 1: one normal_pair() scaled by 1/sqrt2.
  std::complex<double> complex_normal();

private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::uint32_t lane_;
  std::uint32_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

}  // namespace hcnot

#endif  // HCNOT_RANDOM_STREAM_HPP
