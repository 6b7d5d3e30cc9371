#pragma once

#include "docval/core.hpp"

namespace docval {

struct ScoredDoc {
  std::string id;
  double similarity = 0.0;
};

// The k most similar documents to the query embedding, sorted by similarity
// descending with ties broken by id ascending. Returns fewer than k when the
// corpus is small; throws EmptyCorpus when it is empty. min_similarity drops
// candidates below the threshold before ranking.
std::vector<ScoredDoc> top_k(const std::vector<double>& query_embedding,
                             const std::vector<EmbeddingVector>& corpus, int k,
                             double min_similarity = -2.0);

// Keeps documents whose title plus body holds at least min_words
// whitespace-separated tokens.
std::vector<Document> min_word_filter(const std::vector<Document>& docs, int min_words);

}  // namespace docval
