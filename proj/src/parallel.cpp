#include "gkl/parallel.hpp"

#include <cstdlib>
#include <string>

namespace gkl {

namespace {
std::atomic<std::size_t> g_requested{0};
}

std::size_t thread_count() {
  if (const char* env = std::getenv("GKL_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  if (const std::size_t r = g_requested.load()) return r;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void set_thread_count(std::size_t n) { g_requested.store(n); }

}  // namespace gkl
