#pragma once

#include <array>
#include <cstdint>

namespace ctgauss {

// Raw Philox4x32-10 block: counter words {lo(counter), hi(counter),
// lo(stream), hi(stream)}, key {lo(seed), hi(seed)}. Exposed so the
// generator can be pinned against the published test vectors.
std::array<std::uint32_t, 4> philox_block(std::uint64_t counter, std::uint64_t stream,
                                          std::uint64_t seed);

// Counter-based random stream built on Philox4x32-10
// (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC'11).
//
// Every variate is a pure function of (seed, stream, draw index), so draws
// can be addressed randomly, replayed, and fanned out across workers without
// changing a single bit. Distinct stream indices give independent streams.
// Gaussians and uniforms live in separate counter domains of one stream.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : seed_(seed), stream_(stream) {}

  // Standard normal variate number `draw` of this stream (random access).
  double gaussian_at(std::uint64_t draw) const noexcept;

  // Uniform [0,1) variate number `draw` of this stream (random access).
  double uniform_at(std::uint64_t draw) const noexcept;

  // Sequential convenience over gaussian_at.
  double next_gaussian() noexcept { return gaussian_at(next_++); }
  void skip_gaussians(std::uint64_t n) noexcept { next_ += n; }
  std::uint64_t cursor() const noexcept { return next_; }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t next_ = 0;
};

// Stream-index layout used by the Monte Carlo drivers: trial t owns the
// stream block [base + kStreamStride*t, base + kStreamStride*(t+1)).
inline constexpr std::uint64_t kStreamStride = 8;
inline constexpr std::uint64_t kMessageStreamOffset = 0;
inline constexpr std::uint64_t kNoiseStreamOffset = 1;
inline constexpr std::uint64_t kAuxStreamOffset = 2;

}  // namespace ctgauss
