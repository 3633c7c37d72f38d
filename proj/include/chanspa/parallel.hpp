#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace chanspa
{
/*!
 * Run body(j) for j in [0, n) on up to `threads` workers. Work is claimed
 * by index, so results written to slot j are independent of scheduling.
 * The first exception thrown by any worker is rethrown on the caller.
 */
template<class F>
void parallel_for(std::size_t n, int threads, F&& body)
{
    const std::size_t nt = std::min<std::size_t>(std::max(threads, 1), n);
    if (nt <= 1)
    {
        for (std::size_t j = 0; j < n; ++j)
            body(j);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t j; !failed && (j = next++) < n;)
        {
            try
            {
                body(j);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                failed = true;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}
} // namespace chanspa
