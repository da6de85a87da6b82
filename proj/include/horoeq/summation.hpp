#pragma once

// Compensated, fixed-order summation with deterministic chunked parallelism.
//
// Work over an index range [0, n) is split into chunks of a fixed size that
// does not depend on the thread count. Each chunk is summed in ascending
// order, and chunk partials are combined in chunk order, so results are
// bit-identical for any number of threads.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace horoeq {

struct Exec {
  unsigned threads = 1;
};

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(std::complex<double> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  void add(const ComplexCompensatedSum& o) {
    re_.add(o.re_);
    im_.add(o.im_);
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

inline constexpr std::size_t kChunkSize = 4096;

/// Runs body(begin, end) -> Partial over fixed-size chunks of [0, n) and
/// folds the partials in chunk order with Partial::add.
template <class Partial, class Body>
Partial chunked_reduce(std::size_t n, const Exec& exec, Body body) {
  const std::size_t n_chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<Partial> partials(n_chunks);
  auto run_chunk = [&](std::size_t c) {
    const std::size_t b = c * kChunkSize;
    partials[c] = body(b, std::min(n, b + kChunkSize));
  };
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, exec.threads), n_chunks));
  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t c = w; c < n_chunks; c += workers) run_chunk(c);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  Partial total{};
  for (const auto& p : partials) total.add(p);
  return total;
}

}  // namespace horoeq
