#ifndef FLUXREG_PARALLEL_HPP
#define FLUXREG_PARALLEL_HPP

#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace fluxreg {

// Worker count, capped by the FLUXREG_THREADS environment variable.
inline int thread_budget() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("FLUXREG_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
}

// Index-parallel loop with deterministic result placement: body(i) runs for
// every i in [0, n); results must be written to pre-sized slots by index.
template <typename Body>
void parallel_for(int n, Body&& body) {
  const int workers = std::min(thread_budget(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace fluxreg

#endif
