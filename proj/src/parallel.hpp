// Ordered-commit worker pool: tasks run on any thread, results are handed to
// the committer strictly in index order, so output is deterministic for any
// worker count. Internal to the search module.
#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace cuboid::detail {

// fn(i) produces the result of task i; commit(i, result) is called in order
// i = 0,1,2,... on the calling thread and returns false to stop early.
// Worker exceptions are rethrown on the calling thread. Look-ahead is
// bounded so workers cannot run arbitrarily far past the committer.
template <typename T>
void parallel_ordered(std::size_t n, unsigned workers, const std::function<T(std::size_t)>& fn,
                      const std::function<bool(std::size_t, T&&)>& commit) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!commit(i, fn(i))) {
                return;
            }
        }
        return;
    }

    std::mutex mu;
    std::condition_variable cv_ready;
    std::condition_variable cv_space;
    std::map<std::size_t, T> ready;
    std::size_t next_claim = 0;
    std::size_t next_commit = 0;
    bool stop = false;
    std::exception_ptr error;
    const std::size_t window = 4 * static_cast<std::size_t>(workers);

    auto work = [&] {
        for (;;) {
            std::size_t idx;
            {
                std::unique_lock lock(mu);
                cv_space.wait(lock, [&] {
                    return stop || next_claim >= n || next_claim < next_commit + window;
                });
                if (stop || next_claim >= n) {
                    return;
                }
                idx = next_claim++;
            }
            try {
                T result = fn(idx);
                std::lock_guard lock(mu);
                ready.emplace(idx, std::move(result));
                cv_ready.notify_all();
            } catch (...) {
                std::lock_guard lock(mu);
                if (!error) {
                    error = std::current_exception();
                }
                stop = true;
                cv_ready.notify_all();
                cv_space.notify_all();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) {
        pool.emplace_back(work);
    }

    bool stopped_early = false;
    for (std::size_t k = 0; k < n && !stopped_early; ++k) {
        T item = [&] {
            std::unique_lock lock(mu);
            cv_ready.wait(lock, [&] { return stop || ready.count(k) != 0; });
            if (ready.count(k) == 0) {
                stopped_early = true;  // a worker errored before producing k
                return T{};
            }
            auto node = ready.extract(k);
            ++next_commit;
            cv_space.notify_all();
            return std::move(node.mapped());
        }();
        if (stopped_early) {
            break;
        }
        if (!commit(k, std::move(item))) {
            std::lock_guard lock(mu);
            stop = true;
            cv_ready.notify_all();
            cv_space.notify_all();
            break;
        }
    }
    {
        std::lock_guard lock(mu);
        stop = true;
        cv_space.notify_all();
        cv_ready.notify_all();
    }
    for (std::thread& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace cuboid::detail
