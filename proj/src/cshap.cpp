#include "docval/cshap.hpp"

#include <cmath>

namespace docval {

namespace {

// ValueSource for the meta game: maps a cluster coalition to the base game,
// presenting each cluster as one concatenated document unit.
class MetaSource : public ValueSource {
 public:
  MetaSource(GamePtr base, Partition clusters, std::vector<std::uint64_t> masks)
      : base_(std::move(base)), clusters_(std::move(clusters)), masks_(std::move(masks)) {}

  double evaluate(const CoalitionRequest& request) override {
    std::uint64_t mask = 0;
    std::vector<std::vector<int>> groups;
    for (int k : request.coalition.indices()) {
      mask |= masks_[static_cast<std::size_t>(k)];
      groups.push_back(clusters_[static_cast<std::size_t>(k)]);
    }
    return base_->evaluate_grouped(Coalition{mask, base_->size()}, groups);
  }

 private:
  GamePtr base_;
  Partition clusters_;
  std::vector<std::uint64_t> masks_;
};

Attribution redistribute(const ClusterGame& game, const std::vector<double>& cluster_phi,
                         Method method) {
  const auto& clusters = game.assignment().clusters;
  const auto& members = game.base()->members();
  Attribution out;
  out.method = method;
  out.doc_ids = members;
  out.values.assign(members.size(), 0.0);
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    double share = cluster_phi[k] / static_cast<double>(clusters[k].size());
    for (int i : clusters[k]) out.values[static_cast<std::size_t>(i)] = share;
  }
  out.unique_subsets = game.base()->unique_subsets();
  return out;
}

}  // namespace

ClusterGame::ClusterGame(GamePtr base, ClusterAssignment assignment)
    : base_(std::move(base)), assignment_(std::move(assignment)) {
  if (!base_) raise(Errc::invalid_argument, "cluster game needs a base game");
  check_partition(assignment_.clusters, base_->size());
  cluster_masks_.reserve(assignment_.clusters.size());
  for (const auto& cluster : assignment_.clusters) {
    std::uint64_t mask = 0;
    for (int i : cluster) mask |= 1ULL << i;
    cluster_masks_.push_back(mask);
  }
}

Coalition ClusterGame::union_of(const Coalition& meta) const {
  if (meta.n != cluster_count())
    raise(Errc::member_mismatch, "meta coalition sized for " + std::to_string(meta.n) + " clusters, game has " + std::to_string(cluster_count()));
  std::uint64_t mask = 0;
  for (int k : meta.indices()) mask |= cluster_masks_[static_cast<std::size_t>(k)];
  return Coalition{mask, base_->size()};
}

double ClusterGame::meta_value(const Coalition& meta) const {
  if (meta.is_empty()) return base_->v_empty();
  std::vector<std::vector<int>> groups;
  for (int k : meta.indices()) groups.push_back(assignment_.clusters[static_cast<std::size_t>(k)]);
  return base_->evaluate_grouped(union_of(meta), groups);
}

GamePtr ClusterGame::meta_game() const {
  std::vector<std::string> meta_members;
  meta_members.reserve(assignment_.clusters.size());
  for (std::size_t k = 0; k < assignment_.clusters.size(); ++k)
    meta_members.push_back("cluster:" + std::to_string(k));
  auto source = std::make_shared<MetaSource>(base_, assignment_.clusters, cluster_masks_);
  return make_game(base_->query(), std::move(meta_members), std::move(source), base_->v_max(),
                   base_->v_empty());
}

Attribution cluster_shapley(const ClusterGame& game, const ExactConfig& config) {
  int m = game.cluster_count();
  if (m > config.max_members)
    raise(Errc::game_too_large, std::to_string(m) + " clusters exceeds the exact enumeration cap of " + std::to_string(config.max_members));

  std::vector<double> values(1ULL << m);
  values[0] = game.base()->v_empty();
  for (std::uint64_t mask = 1; mask < (1ULL << m); ++mask)
    values[mask] = game.meta_value(Coalition{mask, m});

  std::vector<double> cluster_phi = exact_shapley_from_dense(values, m);
  Attribution out = redistribute(game, cluster_phi, Method::cluster);
  out.params["epsilon"] = std::to_string(game.assignment().epsilon);
  out.params["clusters"] = std::to_string(m);
  return out;
}

Attribution cluster_shapley(const GamePtr& base, const DistanceMatrix& distances,
                            const ClusteringConfig& clustering, const ExactConfig& config) {
  if (distances.size() != base->size())
    raise(Errc::member_mismatch, "distance matrix covers " + std::to_string(distances.size()) + " members, game has " + std::to_string(base->size()));
  ClusterGame cg(base, adaptive_dbscan(distances, clustering));
  return cluster_shapley(cg, config);
}

Attribution cluster_shapley_approx(const ClusterGame& game, const ClusterApproximator& approximator) {
  if (!approximator.run) raise(Errc::invalid_argument, "cluster approximator has no run function");
  Attribution meta = approximator.run(game.meta_game());
  if (static_cast<int>(meta.values.size()) != game.cluster_count())
    raise(Errc::member_mismatch, "approximator returned " + std::to_string(meta.values.size()) + " values for " + std::to_string(game.cluster_count()) + " clusters");

  Attribution out = redistribute(game, meta.values, Method::cluster_mc);
  out.params = meta.params;
  out.params["epsilon"] = std::to_string(game.assignment().epsilon);
  out.params["clusters"] = std::to_string(game.cluster_count());
  out.params["approximator"] = approximator.name;
  return out;
}

double theorem1_bound(double lipschitz, double epsilon) {
  if (lipschitz < 0 || epsilon < 0) raise(Errc::invalid_argument, "bound inputs must be nonnegative");
  return lipschitz * epsilon;
}

double theorem2_bound(double lipschitz, double epsilon, double approx_error, int cluster_size) {
  if (approx_error < 0) raise(Errc::invalid_argument, "approximation error must be nonnegative");
  if (cluster_size < 1) raise(Errc::invalid_argument, "cluster size must be at least 1");
  return theorem1_bound(lipschitz, epsilon) + approx_error / static_cast<double>(cluster_size);
}

std::int64_t corollary2_sample_size(double v_max, double eta, int cluster_size, double eps_total,
                                    double lipschitz, double epsilon) {
  if (v_max <= 0) raise(Errc::invalid_argument, "v_max must be positive");
  if (eta <= 0 || eta >= 1) raise(Errc::invalid_argument, "eta must lie in (0,1)");
  if (cluster_size < 1) raise(Errc::invalid_argument, "cluster size must be at least 1");
  double clustering_error = theorem1_bound(lipschitz, epsilon);
  double budget = eps_total - clustering_error;
  if (budget <= 0)
    raise(Errc::infeasible_target, "eps_total must exceed the clustering error " + std::to_string(clustering_error));
  double g = static_cast<double>(cluster_size);
  double n = v_max * v_max * std::log(2.0 / eta) / (2.0 * g * g * budget * budget);
  return static_cast<std::int64_t>(std::ceil(n));
}

double hoeffding_half_width(double v_max, double eta, std::int64_t n_permutations) {
  if (v_max <= 0) raise(Errc::invalid_argument, "v_max must be positive");
  if (eta <= 0 || eta >= 1) raise(Errc::invalid_argument, "eta must lie in (0,1)");
  if (n_permutations < 1) raise(Errc::invalid_argument, "need at least one permutation");
  return v_max * std::sqrt(std::log(2.0 / eta) / (2.0 * static_cast<double>(n_permutations)));
}

}  // namespace docval
