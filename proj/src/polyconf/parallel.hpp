#ifndef POLYCONF_PARALLEL_HPP
#define POLYCONF_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace polyconf {

// Runs fn(i) for i in [0, n). With threads <= 1 the loop is sequential; the
// work items must be independent. The first exception is rethrown after all
// workers join.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    if (n <= 0)
        return;
    if (threads <= 1 || n == 1) {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    int workers = std::min(threads, n);
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n)
                    return;
                try {
                    fn(i);
                } catch (...) {
                    std::scoped_lock lock(error_mu);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (std::thread& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace polyconf

#endif
