#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace densecomb {

/// Neumaier-compensated accumulator.  Unlike plain Kahan summation it stays
/// accurate when an addend is larger than the running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  /// Folds another accumulator in; used when combining per-chunk partials.
  void merge(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  void merge(const ComplexSum& other) {
    re_.merge(other.re_);
    im_.merge(other.im_);
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_, im_;
};

/// Process-wide worker cap (set from the CLI --threads flag or the
/// DENSECOMB_THREADS environment variable; defaults to the hardware count).
void set_max_threads(unsigned n);
unsigned max_threads();

/// Number of fixed chunks used by deterministic reductions.  Chunk boundaries
/// depend only on the item count, never on the worker count, so reduction
/// results are bit-identical for any --threads value.
inline constexpr std::size_t kReductionChunks = 64;

/// Runs body(begin, end, chunk_index) over kReductionChunks fixed ranges of
/// [0, n), possibly on several workers.  body must only write to state owned
/// by its chunk index.
void for_each_chunk(std::size_t n,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

/// Deterministic parallel sum of term(i) for i in [0, n).
std::complex<double> chunked_sum(
    std::size_t n, const std::function<std::complex<double>(std::size_t)>& term);

}  // namespace densecomb
