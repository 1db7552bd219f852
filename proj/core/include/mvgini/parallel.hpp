// Copyright 2026 The mvgini Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MVGINI__PARALLEL_HPP_
#define MVGINI__PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mvgini
{

/// 0 means "one worker per hardware thread".
inline unsigned resolve_threads(unsigned requested)
{
  if (requested != 0) {
    return requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(chunk) for every chunk in [0, chunk_count) on up to `threads`
/// workers. Chunks are claimed dynamically, so callers that need
/// deterministic results must write per-chunk outputs and reduce them in
/// chunk order afterwards. The first exception thrown by fn is rethrown.
template <typename Fn>
void for_each_chunk(std::size_t chunk_count, unsigned threads, Fn && fn)
{
  const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), chunk_count);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunk_count; ++c) {
      fn(c);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunk_count) {
        return;
      }
      try {
        fn(c);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        next.store(chunk_count, std::memory_order_relaxed);
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) {
      pool.emplace_back(body);
    }
    body();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

}  // namespace mvgini

#endif  // MVGINI__PARALLEL_HPP_
