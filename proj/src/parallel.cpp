#include "qht/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

namespace qht::par {

namespace {
std::atomic<int> g_cap{0};

int env_cap() {
  const char* s = std::getenv("QHT_THREADS");
  if (!s) return 0;
  try {
    return std::max(1, std::stoi(s));
  } catch (...) {
    return 0;
  }
}
}  // namespace

int max_threads() {
  int cap = g_cap.load();
  if (cap <= 0) cap = env_cap();
#ifdef _OPENMP
  const int omp = omp_get_max_threads();
  return cap > 0 ? std::min(cap, omp) : omp;
#else
  return 1;
#endif
}

void set_max_threads(int n) { g_cap.store(n); }

}  // namespace qht::par
