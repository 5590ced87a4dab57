#include "vcflow/engine.hpp"

namespace vcflow {

std::string_view to_string(Algorithm a) { return a == Algorithm::Classic ? "classic" : "opt"; }

std::size_t partition_of(VertexId v, std::size_t workers) {
  // splitmix64 finalizer
  std::uint64_t z = value_of(v) + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<std::size_t>(z % workers);
}

namespace detail {

void for_each_partition(std::size_t workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 1) {
    fn(0);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (std::size_t p = 1; p < workers; ++p)
    threads.emplace_back([&, p] {
      try {
        fn(p);
      } catch (...) {
        errors[p] = std::current_exception();
      }
    });
  try {
    fn(0);
  } catch (...) {
    errors[0] = std::current_exception();
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail
}  // namespace vcflow
