#include "rrlab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace rrlab {

std::size_t worker_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RRLAB_THREADS")) {
    try {
      long cap = std::stol(env);
      if (cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
    } catch (const std::exception&) {
    }
  }
  return n;
}

}  // namespace rrlab
