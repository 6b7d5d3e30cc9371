#include "docval/retrieval.hpp"

#include <algorithm>
#include <sstream>

#include "docval/cluster.hpp"

namespace docval {

std::vector<ScoredDoc> top_k(const std::vector<double>& query_embedding,
                             const std::vector<EmbeddingVector>& corpus, int k,
                             double min_similarity) {
  if (corpus.empty()) raise(Errc::empty_corpus, "cannot retrieve from an empty corpus");
  if (k < 1) raise(Errc::invalid_argument, "k must be at least 1");

  std::vector<ScoredDoc> scored;
  scored.reserve(corpus.size());
  for (const auto& e : corpus) {
    double s = cosine_similarity(e.values, query_embedding);
    if (s >= min_similarity) scored.push_back(ScoredDoc{e.id, s});
  }
  std::sort(scored.begin(), scored.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.id < b.id;
  });
  if (static_cast<int>(scored.size()) > k) scored.resize(static_cast<std::size_t>(k));
  return scored;
}

std::vector<Document> min_word_filter(const std::vector<Document>& docs, int min_words) {
  if (min_words < 0) raise(Errc::invalid_argument, "min_words must be nonnegative");
  std::vector<Document> kept;
  for (const auto& doc : docs) {
    std::istringstream words(doc.title + " " + doc.body);
    int count = 0;
    std::string token;
    while (count < min_words && words >> token) ++count;
    if (count >= min_words) kept.push_back(doc);
  }
  return kept;
}

}  // namespace docval
