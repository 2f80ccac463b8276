#include "kinfluid/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace kinfluid {

namespace {

std::atomic<bool> g_deterministic{false};

int read_thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  int cap = static_cast<int>(hw);
  if (const char* env = std::getenv("KINFLUID_THREADS")) {
    try {
      cap = std::min(cap, std::max(1, std::stoi(env)));
    } catch (...) {
      cap = 1;
    }
  }
  return cap;
}

}  // namespace

int max_threads() {
  static const int cap = read_thread_cap();
  return cap;
}

void set_deterministic_execution(bool on) { g_deterministic.store(on); }
bool deterministic_execution() { return g_deterministic.load(); }

}  // namespace kinfluid
