#pragma once

#include <complex>
#include <cstddef>
#include <functional>

#include "selchow/errors.hpp"

namespace selchow {

// Neumaier compensated accumulator: running sum plus low-order correction.
struct neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct neumaier_cx {
  neumaier re, im;
  void add(cx z) {
    re.add(z.real());
    im.add(z.imag());
  }
  cx value() const { return {re.value(), im.value()}; }
};

// Worker count: SELCHOW_THREADS env override, else hardware concurrency.
std::size_t thread_count();

// Deterministic parallel reduction of term(0) + ... + term(count-1).
// Terms are grouped into fixed-size blocks; each block is summed
// sequentially (compensated) and block partials are combined in index
// order, so the result is independent of the number of workers.
cx parallel_sum(std::size_t count, const std::function<cx(std::size_t)>& term);

}  // namespace selchow
