#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace bellsim {

// Splits [0, n) into contiguous chunks across `workers` threads and runs
// body(begin, end) on each. Bodies must write disjoint state only; results
// must not depend on the split.
template <typename Body>
void run_partitioned(std::uint64_t n, int workers, const Body& body) {
  if (workers < 1) {
    throw std::invalid_argument("workers must be >= 1");
  }
  const std::uint64_t w =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), n);
  if (w <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(w);
  const std::uint64_t chunk = n / w;
  const std::uint64_t rem = n % w;
  std::uint64_t begin = 0;
  for (std::uint64_t t = 0; t < w; ++t) {
    const std::uint64_t size = chunk + (t < rem ? 1 : 0);
    threads.emplace_back([&body, begin, size] { body(begin, begin + size); });
    begin += size;
  }
  for (auto& th : threads) th.join();
}

}  // namespace bellsim
