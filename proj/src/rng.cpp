#include "ctgauss/rng.hpp"

#include <cmath>

namespace ctgauss {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

// Gaussian blocks use counters < 2^62; uniforms are tagged into their own
// quarter of the counter space.
constexpr std::uint64_t kUniformTag = 1ull << 62;

constexpr double kTwoPi = 6.283185307179586476925286766559005768;

inline std::uint32_t lo32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
inline std::uint32_t hi32(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

struct Block {
  std::uint32_t v[4];
};

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b);
  lo = static_cast<std::uint32_t>(p);
  hi = static_cast<std::uint32_t>(p >> 32);
}

Block philox_4x32_10(Block c, std::uint32_t k0, std::uint32_t k1) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kMul0, c.v[0], lo0, hi0);
    mulhilo(kMul1, c.v[2], lo1, hi1);
    c = Block{{hi1 ^ c.v[1] ^ k0, lo1, hi0 ^ c.v[3] ^ k1, lo0}};
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return c;
}

// Two 64-bit words out of one Philox block.
inline void block_u64(std::uint64_t counter, std::uint64_t stream, std::uint64_t seed,
                      std::uint64_t& a, std::uint64_t& b) {
  Block in{{lo32(counter), hi32(counter), lo32(stream), hi32(stream)}};
  const Block out = philox_4x32_10(in, lo32(seed), hi32(seed));
  a = (static_cast<std::uint64_t>(out.v[0]) << 32) | out.v[1];
  b = (static_cast<std::uint64_t>(out.v[2]) << 32) | out.v[3];
}

}  // namespace

std::array<std::uint32_t, 4> philox_block(std::uint64_t counter, std::uint64_t stream,
                                          std::uint64_t seed) {
  Block in{{lo32(counter), hi32(counter), lo32(stream), hi32(stream)}};
  const Block out = philox_4x32_10(in, lo32(seed), hi32(seed));
  return {out.v[0], out.v[1], out.v[2], out.v[3]};
}

namespace {

inline double unit_interval(std::uint64_t bits) {  // [0,1), 53 bits
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

double RngStream::gaussian_at(std::uint64_t draw) const noexcept {
  // Box-Muller on the two words of block draw/2; no rejection, so the draw
  // index alone pins the variate.
  std::uint64_t a, b;
  block_u64(draw >> 1, stream_, seed_, a, b);
  const double u1 = static_cast<double>((a >> 11) + 1) * 0x1.0p-53;  // (0,1]
  const double u2 = unit_interval(b);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = kTwoPi * u2;
  return (draw & 1) ? r * std::sin(angle) : r * std::cos(angle);
}

double RngStream::uniform_at(std::uint64_t draw) const noexcept {
  std::uint64_t a, b;
  block_u64(kUniformTag | draw, stream_, seed_, a, b);
  (void)b;
  return unit_interval(a);
}

}  // namespace ctgauss
