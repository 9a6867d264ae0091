#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace medianlab {

/// Worker count used by every sweep. Defaults to 1.
void set_thread_count(unsigned k);
unsigned thread_count();

/// Splits [0, count) into a fixed number of contiguous chunks (independent of
/// the thread count) and returns one result per chunk, in chunk order. Callers
/// reduce the results left to right, so outputs do not depend on scheduling.
/// If bodies throw, the exception of the lowest-numbered chunk is rethrown.
template <class Result, class Body>
std::vector<Result> map_chunks(std::size_t count, Body body, std::size_t max_chunks = 64) {
  const std::size_t chunks = std::max<std::size_t>(1, std::min(count, max_chunks));
  std::vector<Result> results(chunks);
  auto run = [&](std::size_t c) {
    const std::size_t begin = count * c / chunks;
    const std::size_t end = count * (c + 1) / chunks;
    results[c] = body(begin, end);
  };
  const unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(chunks));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run(c);
    return results;
  }
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < chunks; c += workers) {
          try {
            run(c);
          } catch (...) {
            errors[c] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace medianlab
