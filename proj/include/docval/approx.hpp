#pragma once

#include "docval/game.hpp"

namespace docval {

struct McConfig {
  std::int64_t permutations = 1000;
  std::uint64_t seed = 0;
  // Average over every permutation of the members instead of sampling.
  bool exhaustive = false;
};

struct TmcConfig {
  std::int64_t permutations = 1000;
  std::uint64_t seed = 0;
  // Once the running prefix score is within `tolerance` of v_max, the rest of
  // the permutation contributes zero marginals and is not evaluated.
  double tolerance = 0.5;
  bool exhaustive = false;
};

struct KernelShapConfig {
  std::int64_t samples = 2048;
  std::uint64_t seed = 0;
  double ridge_lambda = 1e-6;
  // Enumerate all singleton and all-but-one coalitions before sampling.
  bool include_all_pairs_first = true;
};

// Permutation-sampling Shapley estimate: phi_i averages the marginal
// contribution of i over sampled member orderings. Permutation k is derived
// from (seed, k), so results are reproducible and independent of scheduling.
Attribution monte_carlo(const ValuationGame& game, const McConfig& config);

// Monte Carlo with early truncation. Shares the permutation stream with
// monte_carlo: at tolerance 0 (and scores within v_max) the two agree bit for
// bit, and the coalitions it evaluates are always a subset of plain MC's.
Attribution truncated_monte_carlo(const ValuationGame& game, const TmcConfig& config);

// Weighted-least-squares Shapley estimate. Coalitions are drawn by the
// Shapley kernel w(s) = (n-1) / (C(n,s) * s * (n-s)); the empty and full sets
// enter as constraints, never as rows, and efficiency is enforced by
// substituting the last member's coefficient. When `samples` covers all
// 2^n - 2 interior coalitions the sampler switches to full enumeration with
// exact kernel weights, which recovers exact Shapley values.
Attribution kernel_shap(const ValuationGame& game, const KernelShapConfig& config);

}  // namespace docval
