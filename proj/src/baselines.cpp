#include "docval/baselines.hpp"

#include <cmath>

#include "docval/cluster.hpp"

namespace docval {

Attribution equal_attribution(const ValuationGame& game) {
  int n = game.size();
  double pool = game.evaluate(game.full_coalition()) - game.v_empty();
  Attribution out;
  out.method = Method::equal;
  out.doc_ids = game.members();
  out.values.assign(static_cast<std::size_t>(n), pool / static_cast<double>(n));
  out.unique_subsets = game.unique_subsets();
  return out;
}

Attribution relevance_weighted(const ValuationGame& game,
                               const std::vector<double>& query_embedding,
                               const std::vector<EmbeddingVector>& member_embeddings,
                               const RelevanceConfig& config) {
  int n = game.size();
  if (static_cast<int>(member_embeddings.size()) != n)
    raise(Errc::member_mismatch, std::to_string(member_embeddings.size()) + " embeddings for " + std::to_string(n) + " members");
  for (int i = 0; i < n; ++i)
    if (member_embeddings[static_cast<std::size_t>(i)].id != game.members()[static_cast<std::size_t>(i)])
      raise(Errc::member_mismatch, "embedding order does not match game members at slot " + std::to_string(i));

  std::vector<double> sims(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    sims[static_cast<std::size_t>(i)] = cosine_similarity(member_embeddings[static_cast<std::size_t>(i)].values, query_embedding);

  if (config.shift_nonnegative) {
    double low = *std::min_element(sims.begin(), sims.end());
    if (low < 0)
      for (auto& s : sims) s -= low;
  }

  double total = 0.0;
  for (double s : sims) total += s;
  if (std::abs(total) < 1e-12)
    raise(Errc::zero_weight_sum, "similarities sum to zero; relevance weights are undefined");

  double pool = game.evaluate(game.full_coalition()) - game.v_empty();
  Attribution out;
  out.method = Method::relevance;
  out.doc_ids = game.members();
  out.values.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.values[static_cast<std::size_t>(i)] = pool * sims[static_cast<std::size_t>(i)] / total;
  out.unique_subsets = game.unique_subsets();
  return out;
}

}  // namespace docval
