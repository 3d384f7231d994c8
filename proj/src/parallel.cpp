#include "ardn/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace ardn {

std::size_t worker_count() {
    static const std::size_t n = [] {
        if (const char* env = std::getenv("ARDN_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v >= 1) return std::size_t(v);
        }
        const unsigned hc = std::thread::hardware_concurrency();
        return std::size_t(hc > 0 ? hc : 1);
    }();
    return n;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        const std::size_t lo = count * t / workers;
        const std::size_t hi = count * (t + 1) / workers;
        pool.emplace_back([&, lo, hi, t] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace ardn
