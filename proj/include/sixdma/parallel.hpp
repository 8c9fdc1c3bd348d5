// SPDX-License-Identifier: Apache-2.0
//
// sixdma-cf: uplink simulator and rotation optimizer for cell-free massive
// MIMO networks with rotatable antenna surfaces
// Copyright (C) 2026 the sixdma-cf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace sixdma {

inline int effective_workers(int workers)
{
    if (workers > 0)
        return workers;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run fn(i) for i in [0, n) on `workers` threads with a static contiguous
/// partition. Each index is processed exactly once, so writing results into
/// per-index slots and reducing them afterwards in index order yields results
/// that are bit-identical for any worker count.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn)
{
    workers = effective_workers(workers);
    if (n == 0)
        return;
    if (workers <= 1 || n == 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }

    std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    std::vector<std::exception_ptr> errors(nthreads);

    std::size_t chunk = n / nthreads;
    std::size_t rem = n % nthreads;
    std::size_t begin = 0;
    for (std::size_t t = 0; t < nthreads; ++t)
    {
        std::size_t end = begin + chunk + (t < rem ? 1 : 0);
        pool.emplace_back([&, t, begin, end]() {
            try
            {
                for (std::size_t i = begin; i < end; ++i)
                    fn(i);
            }
            catch (...)
            {
                errors[t] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& th : pool)
        th.join();
    for (auto& err : errors)
        if (err)
            std::rethrow_exception(err);
}

} // namespace sixdma
