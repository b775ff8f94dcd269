#pragma once

#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

namespace cnslab {

// Splits [0, total) into at most `workers` contiguous chunks and runs
// `fn(begin, end)` on each, returning the partial results in chunk order.
// Merging in chunk order keeps every aggregate independent of the worker
// count, which is what makes reruns byte-identical.
template <typename Partial, typename Fn>
std::vector<Partial> run_chunked(std::uint64_t total, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = 1;
  std::uint64_t nchunks = std::min<std::uint64_t>(workers, total ? total : 1);
  std::vector<Partial> partials(nchunks);
  if (nchunks <= 1) {
    if (total > 0 || nchunks == 1) partials[0] = fn(std::uint64_t(0), total);
    return partials;
  }
  std::vector<std::thread> threads;
  threads.reserve(nchunks);
  const std::uint64_t step = total / nchunks;
  const std::uint64_t rem = total % nchunks;
  std::uint64_t begin = 0;
  for (std::uint64_t c = 0; c < nchunks; ++c) {
    const std::uint64_t len = step + (c < rem ? 1 : 0);
    const std::uint64_t end = begin + len;
    threads.emplace_back([&partials, &fn, c, begin, end] { partials[c] = fn(begin, end); });
    begin = end;
  }
  for (auto& t : threads) t.join();
  return partials;
}

}  // namespace cnslab
