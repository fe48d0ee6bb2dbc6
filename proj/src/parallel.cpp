#include "tauber/parallel.hpp"

#include <cstdlib>
#include <string>

namespace tauber {

namespace {

int initial_threads() {
  if (const char* env = std::getenv("TAUBER_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  return 0;
}

std::atomic<int> g_threads{initial_threads()};

}  // namespace

void set_max_threads(int n) { g_threads = n > 0 ? n : 0; }

int max_threads() {
  const int n = g_threads.load();
  if (n > 0) return n;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace tauber
