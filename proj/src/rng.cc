#include "carpool/rng.h"

#include <cmath>
#include <limits>

namespace carpool {

std::uint64_t rng::uniform_int(std::uint64_t const lo, std::uint64_t const hi) {
  auto const range = hi - lo;
  if (range == std::numeric_limits<std::uint64_t>::max()) {
    return engine_();
  }
  auto const n = range + 1U;
  auto const limit = std::numeric_limits<std::uint64_t>::max() -
                     std::numeric_limits<std::uint64_t>::max() % n;
  auto x = engine_();
  while (x >= limit) {
    x = engine_();
  }
  return lo + x % n;
}

std::uint64_t rng::poisson(double const mean) {
  if (!(mean > 0.0)) {
    return 0U;
  }
  auto count = std::uint64_t{0U};
  auto t = 0.0;
  while (true) {
    t += -std::log1p(-uniform());
    if (t >= mean) {
      return count;
    }
    ++count;
  }
}

}  // namespace carpool
