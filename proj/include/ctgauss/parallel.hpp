#pragma once

#include <cstddef>
#include <functional>

namespace ctgauss {

unsigned default_worker_count();

// Runs fn(block, first, last) over fixed-size blocks of [0, total) on up to
// `workers` threads. Block boundaries do not depend on the worker count, so
// per-block partial results can be reduced sequentially afterwards and every
// reduction stays bit-identical whatever the pool size. workers == 0 means
// default_worker_count().
void parallel_blocks(std::size_t total, std::size_t block_size, unsigned workers,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

std::size_t block_count(std::size_t total, std::size_t block_size);

inline constexpr std::size_t kTrialBlock = 256;

}  // namespace ctgauss
