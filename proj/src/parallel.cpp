#include "kuostab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace kuostab {

namespace {

std::atomic<int> g_default_threads{0};

}  // namespace

int resolve_threads(int requested) {
  if (const char* env = std::getenv("KUO_STAB_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) {
        return v;
      }
    } catch (const std::exception&) {
      // malformed values fall through to the requested count
    }
  }
  if (requested <= 0) {
    requested = g_default_threads.load();
  }
  if (requested <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
  return requested;
}

void set_default_threads(int threads) { g_default_threads.store(threads); }

int default_threads() { return g_default_threads.load(); }

}  // namespace kuostab
