#ifndef QNULL_SRC_PARALLEL_HPP
#define QNULL_SRC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qnull::detail {

/*
 * Runs hit(root) for roots 0..count-1 on `threads` workers and returns the
 * smallest root for which it returned true (count if none). Roots above the
 * best hit so far are skipped, so the result matches a sequential scan.
 */
template <typename Fn>
std::size_t first_hit(std::size_t count, unsigned threads, Fn&& hit) {
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{count};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        try {
            while (true) {
                const std::size_t root = next.fetch_add(1);
                if (root >= count || root > best.load()) return;
                if (hit(root)) {
                    std::size_t cur = best.load();
                    while (root < cur && !best.compare_exchange_weak(cur, root)) {
                    }
                }
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            best.store(0);
        }
    };

    const unsigned n = std::max(1u, threads);
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    return best.load();
}

}  // namespace qnull::detail

#endif
