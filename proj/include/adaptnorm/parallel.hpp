#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace adaptnorm {

/*!
 * Worker count: \c requested if positive, else the THREADS environment
 * variable if set, else the hardware concurrency.
 */
int resolve_thread_count(int requested);

/*!
 * Call fn(i) for every i in [0, count) on up to \c threads workers.
 *
 * Work is split into contiguous blocks; callers write results by index so
 * output never depends on the worker count. The first exception thrown by
 * any worker is rethrown on the calling thread.
 */
template<class F>
void parallel_for(std::size_t count, int threads, F&& fn)
{
    std::size_t const workers
        = std::min<std::size_t>(threads > 0 ? threads : 1, count);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }

    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
    {
        std::size_t begin = count * w / workers;
        std::size_t end = count * (w + 1) / workers;
        pool.emplace_back([&, begin, end] {
            try
            {
                for (std::size_t i = begin; i < end; ++i)
                    fn(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

}  // namespace adaptnorm
