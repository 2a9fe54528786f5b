// P1 x P1 and P2 blown up at a point have the same number of points over
// every finite field, yet their intersection forms differ in parity.

#include <array>
#include <cstdint>
#include <iostream>

#include "unimod/surfaces.hpp"
#include "unimod/zeta.hpp"

int main() {
  using namespace unimod;
  const std::array<std::uint32_t, 4> primes{2, 3, 5, 7};
  const CounterexampleReport r = counterexample_report(primes, 2);
  for (const auto& row : r.rows)
    std::cout << "q = " << row.q << ": " << row.count_p1xp1 << " vs " << row.count_blowup << '\n';
  std::cout << r.first.name << ": " << describe(r.first_class) << '\n'
            << r.second.name << ": " << describe(r.second_class) << '\n'
            << r.conclusion << '\n';
  return r.counts_equal && !r.homeomorphic ? 0 : 1;
}
