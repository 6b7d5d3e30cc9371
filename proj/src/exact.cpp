#include "docval/exact.hpp"

#include <algorithm>
#include <bit>

namespace docval {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

std::vector<double> exact_shapley_from_dense(const std::vector<double>& values, int n) {
  if (n < 1 || values.size() != (1ULL << n))
    raise(Errc::invalid_argument, "dense table must hold exactly 2^n values");

  // Subset-size weights: w[s] = 1 / (n * C(n-1, s)).
  std::vector<double> weight(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) weight[static_cast<std::size_t>(s)] = 1.0 / (n * binomial(n - 1, s));

  std::vector<double> phi(static_cast<std::size_t>(n), 0.0);
  std::uint64_t count = 1ULL << n;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    int s = std::popcount(mask);
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1ULL) continue;
      double marginal = values[mask | (1ULL << i)] - values[mask];
      phi[static_cast<std::size_t>(i)] += weight[static_cast<std::size_t>(s)] * marginal;
    }
  }
  return phi;
}

Attribution exact_shapley(const ValuationGame& game, const ExactConfig& config) {
  int n = game.size();
  if (n > config.max_members)
    raise(Errc::game_too_large, std::to_string(n) + " members exceeds the exact enumeration cap of " + std::to_string(config.max_members));

  std::vector<double> values(1ULL << n);
  values[0] = game.v_empty();
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask)
    values[mask] = game.evaluate(Coalition{mask, n});

  Attribution out;
  out.method = Method::exact;
  out.doc_ids = game.members();
  out.values = exact_shapley_from_dense(values, n);
  out.unique_subsets = game.unique_subsets();
  return out;
}

}  // namespace docval
