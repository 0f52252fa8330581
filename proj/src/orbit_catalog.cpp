#include <algorithm>
#include <bit>
#include <string>
#include <vector>

#include "addcount/errors.hpp"
#include "addcount/zp.hpp"

namespace addcount {

namespace {

// Colex rank of an a-subset among all a-subsets; Gosper order is colex order,
// so ranks run 0 .. C(p,a)-1 in the order for_each_subset visits them.
std::uint64_t colex_rank(Word w) {
  std::uint64_t rank = 0;
  int i = 1;
  for (; w != 0; w &= w - 1, ++i) rank += binomial(std::countr_zero(w), i);
  return rank;
}

}  // namespace

std::uint64_t OrbitCatalog::stabilizer_order(std::size_t i) const {
  return static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p - 1) / orbit_sizes.at(i);
}

std::size_t OrbitCatalog::orbit_index(const PrimeContext& ctx, Subset A) const {
  if (A.size() != a) throw std::invalid_argument("subset size does not match catalog");
  return index.at(canonical_form(ctx, A).word());
}

OrbitCatalog build_orbit_catalog(const PrimeContext& ctx, int a) {
  const int p = ctx.p();
  if (a < 0 || a > p) throw std::invalid_argument("subset size out of range");
  const std::uint64_t total = binomial(p, a);
  if (total > kMaxCatalogSubsets) {
    throw SizeLimitError("C(" + std::to_string(p) + "," + std::to_string(a) + ") = " + std::to_string(total) +
                         " exceeds the catalog guard of " + std::to_string(kMaxCatalogSubsets));
  }

  OrbitCatalog cat;
  cat.p = p;
  cat.a = a;
  std::vector<bool> visited(total, false);

  for_each_subset(ctx, a, [&](Subset A) {
    if (visited[colex_rank(A.word())]) return;
    // First unvisited word in increasing order is the orbit minimum.
    std::uint64_t orbit_size = 0;
    for (int xi = 1; xi < p; ++xi) {
      Subset d = dilate(ctx, A, xi);
      for (int t = 0; t < p; ++t) {
        const std::uint64_t r = colex_rank(translate(ctx, d, t).word());
        if (!visited[r]) {
          visited[r] = true;
          ++orbit_size;
        }
      }
    }
    cat.index.emplace(A.word(), cat.reps.size());
    cat.reps.push_back(A);
    cat.orbit_sizes.push_back(orbit_size);
  });
  return cat;
}

}  // namespace addcount
