#include "docval/valuefn.hpp"

#include <algorithm>
#include <cmath>

#include "docval/cluster.hpp"
#include "docval/parallel.hpp"
#include "docval/rng.hpp"

namespace docval {

SyntheticSource::SyntheticSource(std::vector<double> true_values, double sigma, std::uint64_t seed)
    : true_values_(std::move(true_values)), sigma_(sigma), seed_(seed) {
  if (true_values_.empty()) raise(Errc::empty_members, "synthetic backend needs at least one true value");
  if (sigma_ < 0) raise(Errc::invalid_argument, "sigma must be nonnegative");
}

double SyntheticSource::evaluate(const CoalitionRequest& request) {
  const Coalition& c = request.coalition;
  if (c.n != static_cast<int>(true_values_.size()))
    raise(Errc::member_mismatch, "coalition sized for " + std::to_string(c.n) + " members, backend has " + std::to_string(true_values_.size()));
  double v = 0.0;
  for (int i : c.indices()) v += true_values_[static_cast<std::size_t>(i)];
  if (sigma_ > 0) {
    SplitMix64 g(mix64(seed_, c.mask));
    v += sigma_ * next_normal(g);
  }
  return v;
}

TableSource::TableSource(std::map<std::string, double> scores) : scores_(std::move(scores)) {}

double TableSource::evaluate(const CoalitionRequest& request) {
  auto it = scores_.find(request.coalition.key());
  if (it == scores_.end())
    raise(Errc::missing_table_entry, "no recorded score for coalition {" + request.coalition.key() + "}");
  return it->second;
}

bool TableSource::complete_for(int n) const {
  if (n < 1 || n > 25) return false;
  std::uint64_t expected = (1ULL << n) - 1;
  if (scores_.size() < expected) return false;
  for (std::uint64_t mask = 1; mask <= expected; ++mask)
    if (!scores_.count(Coalition{mask, n}.key())) return false;
  return true;
}

Attribution SyntheticGame::truth() const {
  Attribution a;
  a.method = Method::exact;
  a.doc_ids = game->members();
  a.values = true_values;
  a.unique_subsets = 0;
  a.params["source"] = "synthetic-truth";
  return a;
}

SyntheticGame synth_game(const Query& query, const std::vector<EmbeddingVector>& doc_embeddings,
                         const std::vector<double>& query_embedding, const SynthesisConfig& config) {
  if (doc_embeddings.empty()) raise(Errc::empty_members, "synthetic game needs at least one document embedding");

  std::vector<double> sims;
  sims.reserve(doc_embeddings.size());
  for (const auto& e : doc_embeddings) sims.push_back(cosine_similarity(e.values, query_embedding));

  // Shift so the least similar document contributes zero when any similarity
  // is negative, then scale the values to sum to v_max.
  double low = *std::min_element(sims.begin(), sims.end());
  double shift = std::min(0.0, low);
  double total = 0.0;
  for (auto& s : sims) {
    s -= shift;
    total += s;
  }
  if (total <= 1e-12) raise(Errc::all_zero_similarity, "shifted similarities sum to zero; true values are undefined");

  std::vector<double> truth(sims.size());
  for (std::size_t i = 0; i < sims.size(); ++i) truth[i] = config.v_max * sims[i] / total;

  std::vector<std::string> members;
  members.reserve(doc_embeddings.size());
  for (const auto& e : doc_embeddings) members.push_back(e.id);

  auto source = std::make_shared<SyntheticSource>(truth, config.sigma, config.seed);
  SyntheticGame out;
  out.game = make_game(query, std::move(members), std::move(source), config.v_max, 0.0);
  out.true_values = std::move(truth);
  return out;
}

SynthEmbeddings synth_embeddings(int n, int dim, std::uint64_t seed) {
  if (n < 1) raise(Errc::empty_members, "need at least one document embedding");
  if (dim < 2) raise(Errc::invalid_argument, "embedding dimension must be at least 2");
  SynthEmbeddings out;
  out.docs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    SplitMix64 g(mix64(seed, 0x0d0cULL, static_cast<std::uint64_t>(i)));
    out.docs.push_back(EmbeddingVector{"d" + std::to_string(i), random_unit_vector(dim, g)});
  }
  SplitMix64 gq(mix64(seed, 0x9ce4ULL));
  out.query = random_unit_vector(dim, gq);
  return out;
}

SyntheticGame random_synth_game(int n, int dim, const SynthesisConfig& config) {
  SynthEmbeddings e = synth_embeddings(n, dim, config.seed);
  Query q;
  q.id = "synth-" + std::to_string(config.seed);
  q.text = "";
  q.weight = 1.0;
  return synth_game(q, e.docs, e.query, config);
}

std::shared_ptr<TableSource> materialize_table(const ValuationGame& game, int concurrency) {
  int n = game.size();
  if (n > 25) raise(Errc::game_too_large, "cannot materialize 2^" + std::to_string(n) + " scores");
  std::uint64_t count = (1ULL << n) - 1;
  std::vector<double> values(count);
  parallel_for(static_cast<std::int64_t>(count), concurrency, [&](std::int64_t i) {
    Coalition c{static_cast<std::uint64_t>(i) + 1, n};
    values[static_cast<std::size_t>(i)] = game.evaluate(c);
  });
  std::map<std::string, double> scores;
  for (std::uint64_t mask = 1; mask <= count; ++mask)
    scores[Coalition{mask, n}.key()] = values[mask - 1];
  return std::make_shared<TableSource>(std::move(scores));
}

}  // namespace docval
