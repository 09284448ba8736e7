// SPDX-License-Identifier: Apache-2.0
//
// losq - achievable rates of 1-bit quantized line-of-sight MIMO links
// Copyright (C) 2026 The losq authors
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

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace losq
{
    // Runs fn(i) for i in [0, n_tasks) on up to n_threads workers. Tasks are
    // handed out dynamically; callers that need reproducible output must write
    // results into per-task slots and reduce them in task order afterwards.
    template <typename Fn>
    void parallel_for(std::size_t n_tasks, int n_threads, Fn &&fn)
    {
        const std::size_t workers = std::min<std::size_t>(n_tasks, static_cast<std::size_t>(std::max(1, n_threads)));
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < n_tasks; ++i)
                fn(i);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_lock;
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back([&]
                                  {
                    for (std::size_t i = next++; i < n_tasks; i = next++)
                    {
                        try
                        {
                            fn(i);
                        }
                        catch (...)
                        {
                            std::lock_guard lock(failure_lock);
                            if (!failure)
                                failure = std::current_exception();
                            next = n_tasks;
                        }
                    } });
        }
        if (failure)
            std::rethrow_exception(failure);
    }
} // namespace losq
