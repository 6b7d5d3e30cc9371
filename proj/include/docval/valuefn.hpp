#pragma once

#include <map>
#include <optional>
#include <string>

#include "docval/game.hpp"

namespace docval {

// Raw outcome of scoring one coalition's summary: the per-replicate scores and
// their mean, which is the coalition's value.
struct EvaluationRecord {
  std::string coalition_key;
  std::vector<double> replicate_scores;
  double mean_score = 0.0;
};

// Additive synthetic backend: v(S) = sum of member true values plus an
// optional Gaussian term. The noise for a coalition is a pure function of
// (seed, coalition), so replays and concurrent runs see identical scores.
class SyntheticSource : public ValueSource {
 public:
  SyntheticSource(std::vector<double> true_values, double sigma, std::uint64_t seed);

  double evaluate(const CoalitionRequest& request) override;

  const std::vector<double>& true_values() const { return true_values_; }

 private:
  std::vector<double> true_values_;
  double sigma_;
  std::uint64_t seed_;
};

// Replays recorded scores keyed by canonical coalition key ("0,2,5"). Backs
// offline experiments and frozen benchmark tables.
class TableSource : public ValueSource {
 public:
  explicit TableSource(std::map<std::string, double> scores);

  double evaluate(const CoalitionRequest& request) override;

  const std::map<std::string, double>& scores() const { return scores_; }
  bool complete_for(int n) const;  // has all 2^n - 1 nonempty keys

 private:
  std::map<std::string, double> scores_;
};

// A synthetic game bundled with the ground truth it was built from.
struct SyntheticGame {
  GamePtr game;
  std::vector<double> true_values;  // aligned with game members

  Attribution truth() const;
};

struct SynthesisConfig {
  double sigma = 0.0;
  std::uint64_t seed = 0;
  double v_max = 10.0;
};

// Builds a game whose true values are proportional to each document's cosine
// similarity to the query embedding, shifted to be nonnegative and scaled to
// sum to v_max. Throws AllZeroSimilarity when the shifted similarities all
// vanish, DimensionMismatch on ragged embeddings.
SyntheticGame synth_game(const Query& query, const std::vector<EmbeddingVector>& doc_embeddings,
                         const std::vector<double>& query_embedding, const SynthesisConfig& config);

// Random unit document embeddings plus a random unit query embedding, all
// derived from the seed. Callers that cluster or rank need these alongside
// the game, so they are exposed rather than buried in random_synth_game.
struct SynthEmbeddings {
  std::vector<EmbeddingVector> docs;
  std::vector<double> query;
};

SynthEmbeddings synth_embeddings(int n, int dim, std::uint64_t seed);

// Convenience: synth_embeddings plus synth_game on top.
SyntheticGame random_synth_game(int n, int dim, const SynthesisConfig& config);

// Evaluates every nonempty coalition of `game` and returns a table backend
// with the frozen scores. Benchmark runs share one frozen table so every
// method sees the same sample path.
std::shared_ptr<TableSource> materialize_table(const ValuationGame& game, int concurrency = 1);

}  // namespace docval
