// SPDX-License-Identifier: Apache-2.0

#ifndef ANISOPT_PARALLEL_HPP
#define ANISOPT_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace anisopt
{

// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware concurrency).
// Work items must write to disjoint outputs. The first exception is rethrown.
template <class Fn>
void parallel_for(int count, int threads, Fn &&fn)
{
  if (threads <= 0)
  {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = std::min(threads, std::max(count, 1));
  if (threads == 1)
  {
    for (int i = 0; i < count; i++)
    {
      fn(i);
    }
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; t++)
  {
    pool.emplace_back(
        [&]
        {
          for (int i = next++; i < count; i = next++)
          {
            try
            {
              fn(i);
            }
            catch (...)
            {
              std::lock_guard lock(error_mutex);
              if (!error)
              {
                error = std::current_exception();
              }
            }
          }
        });
  }
  for (auto &th : pool)
  {
    th.join();
  }
  if (error)
  {
    std::rethrow_exception(error);
  }
}

}  // namespace anisopt

#endif  // ANISOPT_PARALLEL_HPP
