#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kbw {

// KBW_THREADS when set and positive, else hardware concurrency (at least 1).
unsigned default_threads();
void set_default_threads(unsigned n);

// out[i] = fn(in[i]); workers pull indices from a shared counter, so the
// result order never depends on scheduling. The first exception is rethrown.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& in, Fn fn, unsigned threads = 0)
    -> std::vector<decltype(fn(in[0]))> {
  using R = decltype(fn(in[0]));
  std::vector<R> out(in.size());
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, in.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = fn(in[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= in.size()) return;
      try {
        out[i] = fn(in[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(in.size());
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace kbw
