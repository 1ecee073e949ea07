#include "selchow/reduce.hpp"

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace selchow {

std::size_t thread_count() {
  if (const char* env = std::getenv("SELCHOW_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<std::size_t>(std::min(v, 256L));
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

cx parallel_sum(std::size_t count,
                const std::function<cx(std::size_t)>& term) {
  constexpr std::size_t block = 512;
  auto sum_block = [&](std::size_t b) {
    std::size_t lo = b * block;
    std::size_t hi = std::min(lo + block, count);
    neumaier_cx acc;
    for (std::size_t i = lo; i < hi; ++i) acc.add(term(i));
    return acc.value();
  };

  std::size_t blocks = (count + block - 1) / block;
  std::size_t workers = std::min(thread_count(), blocks);
  if (workers <= 1 || count < 2 * block) {
    neumaier_cx acc;
    for (std::size_t i = 0; i < count; ++i) acc.add(term(i));
    return acc.value();
  }

  std::vector<cx> partial(blocks);
  std::exception_ptr eptr;
  std::mutex eptr_mtx;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t b = w; b < blocks; b += workers)
          partial[b] = sum_block(b);
      } catch (...) {
        std::lock_guard<std::mutex> lk(eptr_mtx);
        if (!eptr) eptr = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (eptr) std::rethrow_exception(eptr);

  // Partials combined in block order: the result does not depend on the
  // number of workers.
  neumaier_cx acc;
  for (cx p : partial) acc.add(p);
  return acc.value();
}

}  // namespace selchow
