#include <doctest.h>

#include <cmath>
#include <set>

#include "hcnot/random_stream.hpp"

using hcnot::RandomStream;

TEST_CASE("philox4x32-10 known-answer vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(hcnot::philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
        A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(hcnot::philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                             {0xffffffffu, 0xffffffffu}) ==
        A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(hcnot::philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                             {0xa4093822u, 0x299f31d0u}) ==
        A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("identical keys reproduce identical sequences") {
  RandomStream a(42, 7);
  RandomStream b(42, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

  RandomStream c(42, 7);
  RandomStream copy = c;
  c.uniform();
  copy.uniform();
  CHECK(c.next_u64() == copy.next_u64());
}

TEST_CASE("distinct seeds, streams and lanes give distinct sequences") {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t seed : {0ull, 1ull, 42ull})
    for (std::uint64_t stream : {0ull, 1ull, 1ull << 33})
      for (std::uint32_t lane : {0u, 1u}) firsts.insert(RandomStream(seed, stream, lane).next_u64());
  CHECK(firsts.size() == 18);
}

TEST_CASE("uniform and normal moments") {
  double sum = 0, sum2 = 0, min = 1, max = 0;
  double nsum = 0, nsum2 = 0, cross = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    RandomStream rng(5, static_cast<std::uint64_t>(i));
    const double u = rng.uniform();
    sum += u;
    sum2 += u * u;
    min = std::min(min, u);
    max = std::max(max, u);
    const auto [x, y] = rng.normal_pair();
    nsum += x;
    nsum2 += x * x;
    cross += x * y;
  }
  CHECK(min > 0.0);
  CHECK(max < 1.0);
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sum2 / n - (sum / n) * (sum / n) == doctest::Approx(1.0 / 12.0).epsilon(0.02));
  CHECK(std::abs(nsum / n) < 0.01);
  CHECK(nsum2 / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::abs(cross / n) < 0.01);

  RandomStream rng(6, 0);
  double z2 = 0;
  for (int i = 0; i < 100000; ++i) z2 += std::norm(rng.complex_normal());
  CHECK(z2 / 100000 == doctest::Approx(1.0).epsilon(0.02));
}
