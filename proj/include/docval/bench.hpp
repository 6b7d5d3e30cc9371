#pragma once

#include <optional>

#include "docval/cluster.hpp"
#include "docval/game.hpp"
#include "docval/valuefn.hpp"

namespace docval {

struct ErrorMetrics {
  double mae = 0.0;
  double mse = 0.0;
  double mape = 0.0;  // percent, with a stabilizing constant in the denominator
};

// Compares an estimate against the truth over the same members. The mape
// denominator adds `mape_constant` to |truth| so near-zero values do not blow
// up the percentage. Throws MemberMismatch when doc sets differ.
ErrorMetrics error_metrics(const Attribution& estimate, const Attribution& truth,
                           double mape_constant = 0.1);

// One game in a benchmark suite: a frozen score table plus whatever side data
// the methods under test need.
struct FrontierGame {
  std::string id;
  GamePtr game;  // table-backed so every method sees the same sample path
  std::vector<EmbeddingVector> embeddings;      // member order, for cluster methods
  std::vector<double> query_embedding;          // for the relevance baseline
  std::optional<Attribution> truth;             // external truth; exact Shapley otherwise
};

struct FrontierMethodSpec {
  Method method = Method::exact;
  // One grid point per entry; keys depend on the method ("epsilon",
  // "permutations", "tolerance", "samples", "ridge_lambda"). A deterministic
  // method takes a single empty entry.
  std::vector<std::map<std::string, std::string>> grid;
};

struct FrontierPoint {
  Method method = Method::exact;
  std::map<std::string, std::string> params;
  double mean_unique_subsets = 0.0;
  double mae = 0.0;
  double mse = 0.0;
  double mape = 0.0;
  double ci_low = 0.0;   // 95% normal-approximation interval on mae
  double ci_high = 0.0;
  int replications = 0;
};

struct FrontierConfig {
  int replications = 10;
  std::uint64_t seed = 0;
  int concurrency = 1;
  double mape_constant = 0.1;
  int exact_cap = 20;
};

// Cost-accuracy sweep: every (method, grid point) runs `replications` times
// over every game on a fresh cache, and the point reports mean cost and mean
// error against the truth. All points are emitted, dominated or not. Throws
// TruthUnavailable when a game has no external truth and is too large for
// exact enumeration.
std::vector<FrontierPoint> run_frontier(const std::vector<FrontierGame>& games,
                                        const std::vector<FrontierMethodSpec>& methods,
                                        const FrontierConfig& config);

// The default epsilon sweep: 0.01 to 1.00 in steps of 0.025.
std::vector<double> default_epsilon_grid();

struct LipschitzConfig {
  double quantile = 0.95;
  double distance_cap = 0.4;
};

struct LipschitzScan {
  // One point per (member pair, conditioning coalition): embedding distance
  // against the absolute difference of marginal contributions.
  std::vector<std::pair<double, double>> points;
  double fitted_l = 0.0;
  double quantile = 0.95;
  double distance_cap = 0.4;
};

// Scans every pair (i, j) and every coalition S avoiding both, recording
// (d(e_i, e_j), |marginal_i(S) - marginal_j(S)|). fitted_l is the smallest L
// such that the configured fraction of points with d <= distance_cap satisfy
// delta <= L * d. The game must answer every coalition (IncompleteTable).
LipschitzScan lipschitz_scan(const ValuationGame& game, const DistanceMatrix& distances,
                             const LipschitzConfig& config = {});

// Replicated scoring of one coalition: scores[s][e] is evaluation e of
// summarization s.
struct ReplicatedScores {
  std::string coalition_key;
  std::vector<std::vector<double>> scores;
};

struct VarianceDecomposition {
  double total_var = 0.0;
  double summarization_var = 0.0;
  double evaluation_var = 0.0;
};

// Splits score variance into a summarization component (variance of
// per-summarization mean scores) and an evaluation component (mean
// within-summarization variance), averaged across subsets. Sample variances
// throughout, so total ~ summarization + evaluation up to sampling error.
// Requires at least 2 summarizations and 2 evaluations per subset.
VarianceDecomposition variance_decomposition(const std::vector<ReplicatedScores>& records);

// Two-stage noise simulator: summarization s of subset r draws a mean
// base_means[r] + N(0, sigma_sum); each evaluation adds N(0, sigma_eval).
std::vector<ReplicatedScores> simulate_two_stage(const std::vector<double>& base_means,
                                                 int summarizations, int evaluations,
                                                 double sigma_sum, double sigma_eval,
                                                 std::uint64_t seed);

}  // namespace docval
