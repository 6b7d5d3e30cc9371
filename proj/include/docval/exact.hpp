#pragma once

#include "docval/game.hpp"

namespace docval {

struct ExactConfig {
  // Exhaustive enumeration touches 2^n coalitions; refuse beyond this size.
  int max_members = 20;
};

// Exact Shapley attribution by full subset enumeration. For each member i,
// phi_i averages the marginal contribution v(S + i) - v(S) over all subsets S
// of the other members, weighting each subset size equally:
//
//   phi_i = (1/n) * sum_S [v(S + i) - v(S)] / C(n-1, |S|)
//
// Every nonempty coalition is evaluated exactly once, so unique_subsets lands
// at 2^n - 1. Throws GameTooLarge past config.max_members.
Attribution exact_shapley(const ValuationGame& game, const ExactConfig& config = {});

// Same combine over a caller-supplied dense value table, where values[mask]
// holds v of the coalition with that bitmask (values[0] = v of the empty
// set). Shared by the cluster-level meta game.
std::vector<double> exact_shapley_from_dense(const std::vector<double>& values, int n);

double binomial(int n, int k);

}  // namespace docval
