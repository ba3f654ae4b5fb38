#include "kbw/parallel.hpp"

#include <cstdlib>
#include <string>

namespace kbw {

namespace {
std::atomic<unsigned> g_threads{0};
}

unsigned default_threads() {
  unsigned n = g_threads.load();
  if (n > 0) return n;
  if (const char* env = std::getenv("KBW_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void set_default_threads(unsigned n) { g_threads.store(n); }

}  // namespace kbw
