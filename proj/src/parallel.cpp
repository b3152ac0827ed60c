#include "records/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace records {

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RECORDS_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::uint64_t chunk_count(std::uint64_t n, int threads) {
    return std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(threads, 1)), n);
}

void parallel_chunks(
    std::uint64_t n, int threads,
    const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& body) {
    if (n == 0) return;
    const std::uint64_t workers = chunk_count(n, threads);
    if (workers == 1) {
        body(0, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const std::uint64_t base = n / workers, extra = n % workers;
    std::uint64_t begin = 0;
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t end = begin + base + (w < extra ? 1 : 0);
        pool.emplace_back([&, begin, end, w] {
            try {
                body(begin, end, w);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace records
