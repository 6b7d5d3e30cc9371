#pragma once

#include <functional>

#include "docval/cluster.hpp"
#include "docval/exact.hpp"
#include "docval/game.hpp"

namespace docval {

// A base game viewed through a certified cluster partition. Meta-coalitions
// over the m clusters map to the union of their members; values and caching
// flow through the base game, so cost accounting stays in base-game subsets.
class ClusterGame {
 public:
  ClusterGame(GamePtr base, ClusterAssignment assignment);

  const GamePtr& base() const { return base_; }
  const ClusterAssignment& assignment() const { return assignment_; }
  int cluster_count() const { return assignment_.cluster_count(); }

  Coalition union_of(const Coalition& meta) const;
  double meta_value(const Coalition& meta) const;

  // The meta game as a ValuationGame over pseudo-members "cluster:k", for
  // running any attribution method at the cluster level. Scores delegate to
  // the base game, presenting each cluster as one concatenated unit.
  GamePtr meta_game() const;

 private:
  GamePtr base_;
  ClusterAssignment assignment_;
  std::vector<std::uint64_t> cluster_masks_;
};

// Attribution over clusters; phi of a cluster is split equally among its
// members. With every cluster a singleton this reproduces exact_shapley
// bit for bit. The reported unique_subsets counts distinct base coalitions,
// 2^m - 1 for m clusters.
Attribution cluster_shapley(const ClusterGame& game, const ExactConfig& config = {});

// Convenience: cluster the embeddings, then attribute.
Attribution cluster_shapley(const GamePtr& base, const DistanceMatrix& distances,
                            const ClusteringConfig& clustering, const ExactConfig& config = {});

// A cluster-level approximator: runs on the meta game and returns a
// meta-level attribution (one value per cluster).
struct ClusterApproximator {
  std::string name;
  std::function<Attribution(const GamePtr& meta_game)> run;
};

// Generalized variant: any attribution method at the cluster level, its
// per-cluster estimates split equally among members.
Attribution cluster_shapley_approx(const ClusterGame& game, const ClusterApproximator& approximator);

// Worst-case attribution error of cluster-level exact Shapley under a
// marginal-contribution Lipschitz constant L and certified diameter epsilon.
double theorem1_bound(double lipschitz, double epsilon);

// Adds the cluster-level approximation error, diluted by cluster size.
double theorem2_bound(double lipschitz, double epsilon, double approx_error, int cluster_size);

// Permutations needed so that cluster-level Monte Carlo keeps the total
// per-document error within eps_total with probability 1 - eta, given scores
// bounded by v_max. Throws InfeasibleTarget when eps_total <= L * epsilon.
std::int64_t corollary2_sample_size(double v_max, double eta, int cluster_size, double eps_total,
                                    double lipschitz, double epsilon);

// Hoeffding half-width of the cluster-level Monte Carlo estimate after
// n_permutations draws, at confidence 1 - eta.
double hoeffding_half_width(double v_max, double eta, std::int64_t n_permutations);

}  // namespace docval
