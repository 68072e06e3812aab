#include "densecomb/accum.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace densecomb {

namespace {

unsigned default_threads() {
  if (const char* env = std::getenv("DENSECOMB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

std::atomic<unsigned> g_max_threads{0};  // 0: not set yet, use default

}  // namespace

void set_max_threads(unsigned n) { g_max_threads.store(n == 0 ? 1u : n); }

unsigned max_threads() {
  unsigned n = g_max_threads.load();
  if (n == 0) {
    n = default_threads();
    g_max_threads.store(n);
  }
  return n;
}

void for_each_chunk(std::size_t n,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t chunks = kReductionChunks;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(max_threads(), chunks));

  auto chunk_range = [n, chunks](std::size_t c) {
    const std::size_t begin = c * n / chunks;
    const std::size_t end = (c + 1) * n / chunks;
    return std::pair<std::size_t, std::size_t>(begin, end);
  };

  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      auto [b, e] = chunk_range(c);
      if (b < e) body(b, e, c);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        if (c >= chunks) return;
        auto [b, e] = chunk_range(c);
        if (b < e) body(b, e, c);
      }
    });
  }
  for (auto& t : pool) t.join();
}

std::complex<double> chunked_sum(
    std::size_t n, const std::function<std::complex<double>(std::size_t)>& term) {
  std::vector<ComplexSum> partial(kReductionChunks);
  for_each_chunk(n, [&](std::size_t b, std::size_t e, std::size_t c) {
    ComplexSum acc;
    for (std::size_t i = b; i < e; ++i) acc.add(term(i));
    partial[c] = acc;
  });
  ComplexSum total;
  for (const auto& p : partial) total.merge(p);
  return total.value();
}

}  // namespace densecomb
