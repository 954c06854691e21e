#include "tripwell/sweep.hpp"

#include <atomic>
#include <thread>

namespace tripwell {

void parallel_map(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    std::size_t nw = threads > 0 ? std::size_t(threads) : std::thread::hardware_concurrency();
    nw = std::max<std::size_t>(1, std::min(nw, n));
    if (nw == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(nw);
    for (std::size_t w = 0; w < nw; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : workers) t.join();
}

}  // namespace tripwell
