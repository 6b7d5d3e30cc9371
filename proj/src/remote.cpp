#include "docval/remote.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace docval {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open " + path + " for reading");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string substitute_query(std::string text, const std::string& query_text) {
  const std::string placeholder = "{original_query}";
  std::size_t pos = 0;
  while ((pos = text.find(placeholder, pos)) != std::string::npos) {
    text.replace(pos, placeholder.size(), query_text);
    pos += query_text.size();
  }
  return text;
}

// Content may arrive wrapped in markdown fences; find the outermost JSON
// payload before giving up.
json parse_content_json(const std::string& content, char open, char close) {
  json j = json::parse(content, nullptr, false);
  if (!j.is_discarded()) return j;
  std::size_t start = content.find(open);
  std::size_t end = content.rfind(close);
  if (start == std::string::npos || end == std::string::npos || end <= start)
    raise(Errc::malformed_response, "backend content is not JSON");
  j = json::parse(content.substr(start, end - start + 1), nullptr, false);
  if (j.is_discarded()) raise(Errc::malformed_response, "backend content is not JSON");
  return j;
}

}  // namespace

void load_prompt_templates(RemotePipelineConfig& config, const std::string& dir) {
  config.summarize_template = read_file(dir + "/summarize.txt");
  config.evaluate_template = read_file(dir + "/evaluate.txt");
}

RemoteClient::RemoteClient(RemotePipelineConfig config) : config_(std::move(config)) {
  const std::string& url = config_.endpoint_url;
  std::size_t scheme = url.find("://");
  if (scheme == std::string::npos)
    raise(Errc::invalid_argument, "endpoint URL '" + url + "' has no scheme");
  std::size_t path = url.find('/', scheme + 3);
  if (path == std::string::npos) {
    scheme_host_ = url;
    path_ = "/";
  } else {
    scheme_host_ = url.substr(0, path);
    path_ = url.substr(path);
  }
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key) api_key_ = key;
  }
  if (config_.summarize_template.empty() || config_.evaluate_template.empty())
    raise(Errc::invalid_argument, "prompt templates are not loaded");
}

std::string RemoteClient::complete(const std::string& prompt) {
  json body;
  body["model"] = config_.model;
  body["temperature"] = config_.temperature;
  body["messages"] = json::array({json{{"role", "user"}, {"content", prompt}}});
  std::string payload = body.dump();

  httplib::Client client(scheme_host_);
  client.set_connection_timeout(config_.timeout_seconds);
  client.set_read_timeout(config_.timeout_seconds);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      double seconds = config_.initial_backoff_seconds * std::pow(2.0, attempt - 1);
      std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
    }
    auto res = client.Post(path_, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error (" + httplib::to_string(res.error()) + ")";
      continue;
    }
    if (res->status >= 500) {
      last_error = "server returned status " + std::to_string(res->status);
      continue;
    }
    if (res->status < 200 || res->status >= 300)
      raise(Errc::backend_unavailable, "server returned status " + std::to_string(res->status) + ": " + res->body);

    json j = json::parse(res->body, nullptr, false);
    if (j.is_discarded()) raise(Errc::malformed_response, "response body is not JSON");
    if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty())
      raise(Errc::malformed_response, "response has no choices");
    const json& message = j["choices"][0];
    if (!message.contains("message") || !message["message"].contains("content") ||
        !message["message"]["content"].is_string())
      raise(Errc::malformed_response, "response choice has no message content");
    return message["message"]["content"].get<std::string>();
  }
  raise(Errc::backend_unavailable,
        "no response after " + std::to_string(config_.max_retries + 1) + " attempts: " + last_error);
}

SummaryResponse RemoteClient::summarize(const std::string& query_text,
                                        const std::vector<std::string>& units) {
  if (units.empty()) raise(Errc::empty_members, "nothing to summarize");
  std::string prompt = substitute_query(config_.summarize_template, query_text);
  prompt += "\n\nComments:\n";
  for (std::size_t i = 0; i < units.size(); ++i)
    prompt += "[" + std::to_string(i) + "] " + units[i] + "\n\n";

  json j = parse_content_json(complete(prompt), '{', '}');
  if (!j.is_object() || !j.contains("summary") || !j["summary"].is_string())
    raise(Errc::malformed_response, "summarizer content has no \"summary\" string");
  SummaryResponse out;
  out.summary = j["summary"].get<std::string>();
  if (j.contains("key") && j["key"].is_string()) out.key = j["key"].get<std::string>();
  return out;
}

EvaluationRecord RemoteClient::score(const std::string& query_text, const std::string& summary,
                                     const std::string& coalition_key, int replicates) {
  if (replicates < 1) raise(Errc::insufficient_replicates, "need at least one scoring replicate");
  std::string prompt = substitute_query(config_.evaluate_template, query_text);
  prompt += "\n\nSummaries:\nSummary \"0\":\n" + summary + "\n";

  EvaluationRecord record;
  record.coalition_key = coalition_key;
  double total = 0.0;
  for (int r = 0; r < replicates; ++r) {
    json j = parse_content_json(complete(prompt), '[', ']');
    const json* entry = nullptr;
    if (j.is_array() && !j.empty())
      entry = &j[0];
    else if (j.is_object())
      entry = &j;
    if (!entry || !entry->contains("score"))
      raise(Errc::malformed_response, "evaluator content has no score entry");
    const json& score = (*entry)["score"];
    if (!score.is_number()) raise(Errc::score_parse_error, "score is not numeric");
    double s = score.get<double>();
    if (s < 0 || s > config_.score_max)
      raise(Errc::score_parse_error, "score " + std::to_string(s) + " outside 0.." + std::to_string(config_.score_max));
    record.replicate_scores.push_back(s);
    total += s;
  }
  record.mean_score = total / static_cast<double>(replicates);
  return record;
}

RemoteSource::RemoteSource(std::shared_ptr<RemoteClient> client, Query query,
                           std::vector<Document> docs)
    : client_(std::move(client)), query_(std::move(query)), docs_(std::move(docs)) {
  if (!client_) raise(Errc::invalid_argument, "remote source needs a client");
}

double RemoteSource::evaluate(const CoalitionRequest& request) {
  std::vector<std::string> units;
  units.reserve(request.groups.size());
  for (const auto& group : request.groups) {
    std::string unit;
    for (std::size_t k = 0; k < group.size(); ++k) {
      int i = group[k];
      if (i < 0 || i >= static_cast<int>(docs_.size()))
        raise(Errc::index_out_of_range, "document index " + std::to_string(i));
      const Document& doc = docs_[static_cast<std::size_t>(i)];
      if (k > 0) unit += "\n\n";
      if (!doc.title.empty()) unit += doc.title + "\n";
      unit += doc.body;
    }
    units.push_back(std::move(unit));
  }

  SummaryResponse summary = client_->summarize(query_.text, units);
  last_record_ = client_->score(query_.text, summary.summary, request.coalition.key(),
                                client_->config().replicates);
  return last_record_.mean_score;
}

}  // namespace docval
