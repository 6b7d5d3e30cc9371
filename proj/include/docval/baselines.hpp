#pragma once

#include "docval/game.hpp"

namespace docval {

// Splits the grand coalition's value evenly. Costs a single evaluation.
Attribution equal_attribution(const ValuationGame& game);

struct RelevanceConfig {
  // Shift similarities so the minimum is zero before weighting, mirroring the
  // synthetic-game construction. Off by default: weights follow the raw
  // similarities, negative values included.
  bool shift_nonnegative = false;
};

// Splits the grand coalition's value proportionally to each member's cosine
// similarity to the query embedding. Costs a single evaluation. Throws
// ZeroWeightSum when the similarities sum to zero.
Attribution relevance_weighted(const ValuationGame& game,
                               const std::vector<double>& query_embedding,
                               const std::vector<EmbeddingVector>& member_embeddings,
                               const RelevanceConfig& config = {});

}  // namespace docval
