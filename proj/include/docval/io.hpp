#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "docval/bench.hpp"
#include "docval/core.hpp"
#include "docval/revenue.hpp"

namespace docval {

// Fixed-width round-trip formatting shared by every writer, so identical runs
// produce identical bytes and loaders recover the exact double.
std::string format_double(double v);

std::vector<Document> load_documents_jsonl(const std::string& path);
std::vector<EmbeddingVector> load_embeddings_jsonl(const std::string& path);

// A single embedding, from a file holding either one JSON object or JSONL
// whose first line is the object.
EmbeddingVector load_single_embedding(const std::string& path);

std::vector<Query> load_queries_json(const std::string& path);

// On-disk form of a replayable game.
struct GameFile {
  std::string query_id;
  std::vector<std::string> members;
  double v_max = 10.0;
  double v_empty = 0.0;
  std::map<std::string, double> scores;
  std::map<std::string, double> true_phi;  // optional ground truth
};

GameFile load_game_json(const std::string& path);
void save_game_json(const std::string& path, const GameFile& game);

GamePtr game_from_file(const GameFile& file);

void write_attributions_csv(std::ostream& out, const std::vector<Attribution>& attributions);
void save_attributions_csv(const std::string& path, const std::vector<Attribution>& attributions);
std::vector<Attribution> load_attributions_csv(const std::string& path);

void save_clusters_json(const std::string& path, const ClusterAssignment& assignment);
ClusterAssignment load_clusters_json(const std::string& path);

void write_frontier_csv(std::ostream& out, const std::vector<FrontierPoint>& points);
void save_frontier_csv(const std::string& path, const std::vector<FrontierPoint>& points);

void write_scatter_csv(std::ostream& out, const std::vector<std::pair<double, double>>& points);
void save_scatter_csv(const std::string& path, const std::vector<std::pair<double, double>>& points);

void write_payouts_csv(std::ostream& out, const RevenueReport& report);
void save_payouts_csv(const std::string& path, const RevenueReport& report);

// query_id,revenue pairs for per-query revenue splitting.
std::vector<std::pair<std::string, double>> load_rq_csv(const std::string& path);
void save_rq_csv(const std::string& path, const std::vector<std::pair<std::string, double>>& rows);

}  // namespace docval
