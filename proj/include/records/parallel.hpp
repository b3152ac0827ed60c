#ifndef RECORDS_PARALLEL_HPP
#define RECORDS_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace records {

// Worker count: explicit `requested` if > 0, else the RECORDS_THREADS
// environment variable, else hardware concurrency.
int resolve_thread_count(int requested = 0);

// Number of contiguous chunks parallel_chunks will use for n items on the
// given worker count.
std::uint64_t chunk_count(std::uint64_t n, int threads);

// Static partition of [0, n) into chunk_count(n, threads) contiguous chunks,
// one worker per chunk; body(begin, end, chunk) runs once per chunk. The
// first worker exception is rethrown after all workers join. Per-item work
// must derive its own RNG stream from the item index so results do not
// depend on the partition.
void parallel_chunks(
    std::uint64_t n, int threads,
    const std::function<void(std::uint64_t begin, std::uint64_t end, std::uint64_t chunk)>& body);

}  // namespace records

#endif
