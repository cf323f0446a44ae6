#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace bmforge {

/// Worker count: BMFORGE_THREADS if set, else hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [0, count). Tasks must write only to their own slots;
/// the result is then independent of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Independent stream for (root seed, stream index).
std::mt19937_64 make_stream(std::uint64_t root, std::uint64_t stream);

}  // namespace bmforge
