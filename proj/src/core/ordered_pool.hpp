#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace synccensus {

/// Runs work(i) for i in [first, last) on `workers` threads and hands the
/// results to consume(i, result) on the calling thread in index order.
/// consume returns false to stop early. Workers stay within a bounded window
/// ahead of the consumer. The first exception thrown anywhere is rethrown.
template <class Result>
void run_ordered(std::size_t first, std::size_t last, int workers, const std::function<Result(std::size_t)>& work,
                 const std::function<bool(std::size_t, Result&&)>& consume) {
  if (workers <= 1) {
    for (std::size_t i = first; i < last; ++i) {
      if (!consume(i, work(i))) return;
    }
    return;
  }
  const std::size_t window = static_cast<std::size_t>(workers) * 4;
  std::mutex mu;
  std::condition_variable cv;
  std::map<std::size_t, Result> ready;
  std::size_t next_task = first;
  std::size_t next_consume = first;
  bool stop = false;
  std::exception_ptr failure;

  auto worker = [&] {
    while (true) {
      std::size_t task;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return stop || next_task >= last || next_task < next_consume + window; });
        if (stop || next_task >= last) return;
        task = next_task++;
      }
      try {
        Result r = work(task);
        std::lock_guard lock(mu);
        ready.emplace(task, std::move(r));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        stop = true;
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);

  try {
    while (next_consume < last) {
      Result r;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return failure || ready.count(next_consume) != 0; });
        if (failure) break;
        auto it = ready.find(next_consume);
        r = std::move(it->second);
        ready.erase(it);
      }
      bool keep_going = consume(next_consume, std::move(r));
      {
        std::lock_guard lock(mu);
        ++next_consume;
        if (!keep_going) stop = true;
      }
      cv.notify_all();
      if (!keep_going) break;
    }
  } catch (...) {
    std::lock_guard lock(mu);
    if (!failure) failure = std::current_exception();
    stop = true;
  }
  {
    std::lock_guard lock(mu);
    stop = true;
  }
  cv.notify_all();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace synccensus
