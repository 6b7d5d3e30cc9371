#pragma once

#include "docval/game.hpp"
#include "docval/valuefn.hpp"

namespace docval {

struct RemotePipelineConfig {
  // Full chat-completion URL, e.g. http://127.0.0.1:8080/v1/chat/completions.
  std::string endpoint_url;
  std::string model;
  double temperature = 0.1;
  int replicates = 4;
  double score_max = 10.0;
  // Environment variable naming the bearer token; unset means no auth header.
  std::string api_key_env = "DOCVAL_API_KEY";
  int max_retries = 3;
  double initial_backoff_seconds = 0.5;
  int timeout_seconds = 60;
  // Prompt templates with an {original_query} placeholder. The scored
  // documents are appended beneath the template text.
  std::string summarize_template;
  std::string evaluate_template;
};

// Reads summarize.txt and evaluate.txt from `dir` into the config.
void load_prompt_templates(RemotePipelineConfig& config, const std::string& dir);

struct SummaryResponse {
  std::string key;
  std::string summary;
};

// Thin client for a chat-completion-style HTTP JSON endpoint. Transport
// failures and 5xx responses retry with exponential backoff before surfacing
// BackendUnavailable; unparseable payloads surface MalformedResponse and bad
// scores ScoreParseError.
class RemoteClient {
 public:
  explicit RemoteClient(RemotePipelineConfig config);
  virtual ~RemoteClient() = default;

  const RemotePipelineConfig& config() const { return config_; }

  // One chat completion: sends the prompt as a single user message and
  // returns the assistant message content.
  virtual std::string complete(const std::string& prompt);

  // Summarize the given document units (one unit per comment index).
  SummaryResponse summarize(const std::string& query_text, const std::vector<std::string>& units);

  // Score one summary `replicates` times and average.
  EvaluationRecord score(const std::string& query_text, const std::string& summary,
                         const std::string& coalition_key, int replicates);

 private:
  RemotePipelineConfig config_;
  std::string scheme_host_;
  std::string path_;
  std::string api_key_;
};

// Value backend that drives the remote summarize-and-score pipeline. Each
// presentation unit in a request becomes one comment: a singleton group is
// the document itself, a cluster group concatenates its members in index
// order separated by blank lines.
class RemoteSource : public ValueSource {
 public:
  RemoteSource(std::shared_ptr<RemoteClient> client, Query query, std::vector<Document> docs);

  double evaluate(const CoalitionRequest& request) override;

  // The record of the last evaluate call, for callers that keep replicate
  // detail. Not synchronized across threads.
  const EvaluationRecord& last_record() const { return last_record_; }

 private:
  std::shared_ptr<RemoteClient> client_;
  Query query_;
  std::vector<Document> docs_;
  EvaluationRecord last_record_;
};

}  // namespace docval
