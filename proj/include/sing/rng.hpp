#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace sing {

// All randomness in the project flows through the two fixed 64-bit
// algorithms below. The reproducibility contract is bit-identical output
// for identical seeds on every platform, so no <random> distributions are
// used anywhere (their streams are implementation-defined), and sampling
// avoids transcendental functions whose last-ulp behaviour varies between
// libm implementations. Only IEEE-exact operations (+,-,*,/,sqrt,
// comparisons) touch the sampled values.

// splitmix64 (Steele, Lea, Flood). Used for seeding and sub-seed derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from a root seed, a purpose tag and an
// index. Documented in the README; every CLI run derives all of its entropy
// from one root seed through this function.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag,
                                 std::uint64_t index = 0) {
  std::uint64_t s = root;
  (void)splitmix64(s);
  s ^= 0x6a09e667f3bcc909ull * (tag + 1);
  (void)splitmix64(s);
  s ^= 0xbb67ae8584caa73bull * (index + 1);
  return splitmix64(s);
}

// xoshiro256** 1.0 (Blackman, Vigna), seeded via splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0,1) with 53-bit resolution.
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [-1,1).
  double uniform_sym() { return 2.0 * uniform01() - 1.0; }

  // Uniform on the annulus r_lo <= |c| <= r_hi by rejection from the
  // enclosing square. The draw order (re, im per attempt) is part of the
  // reproducibility contract.
  std::complex<double> annulus(double r_lo, double r_hi) {
    for (;;) {
      const double a = r_hi * uniform_sym();
      const double b = r_hi * uniform_sym();
      const double m2 = a * a + b * b;
      if (m2 >= r_lo * r_lo && m2 <= r_hi * r_hi) return {a, b};
    }
  }

  // Uniform phase on the unit circle, as an annulus draw pushed to radius 1.
  std::complex<double> unit_complex() {
    const std::complex<double> c = annulus(0.5, 1.5);
    return c / std::abs(c);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t state_[4];
};

// Purpose tags for derive_seed. Fixed constants; never reorder.
namespace seed_tag {
inline constexpr std::uint64_t kMapComponent = 1;  // index = component
inline constexpr std::uint64_t kGamma = 2;         // index = class/probe id
inline constexpr std::uint64_t kSlice = 3;         // index = slice ordinal
inline constexpr std::uint64_t kPatch = 4;         // index = patch ordinal
inline constexpr std::uint64_t kMinor = 5;         // index = probe id
inline constexpr std::uint64_t kGermMap = 6;
inline constexpr std::uint64_t kCensusClass = 7;   // index = class id
inline constexpr std::uint64_t kProbe = 8;         // index = probe*2+patch
}  // namespace seed_tag

}  // namespace sing
