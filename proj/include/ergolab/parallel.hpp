#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ergolab {

/// Calls body(begin, end) over contiguous blocks of [0, count) on up to
/// `workers` threads. Bodies must write only to per-index output slots so
/// results do not depend on the split. The first exception (in block order)
/// is rethrown after all threads join.
template <class Body>
void parallel_blocks(std::size_t count, unsigned workers, Body&& body) {
    if (count == 0) return;
    const std::size_t nthreads = std::clamp<std::size_t>(workers, 1, count);
    if (nthreads == 1) {
        body(std::size_t{0}, count);
        return;
    }

    std::vector<std::exception_ptr> errors(nthreads);
    std::vector<std::thread> threads;
    threads.reserve(nthreads);
    const std::size_t per = count / nthreads;
    const std::size_t extra = count % nthreads;
    std::size_t begin = 0;
    for (std::size_t t = 0; t < nthreads; ++t) {
        const std::size_t end = begin + per + (t < extra ? 1 : 0);
        threads.emplace_back([&, t, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& th : threads) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace ergolab
