#include "docval/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "docval/game.hpp"
#include "docval/valuefn.hpp"

namespace docval {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open " + path + " for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(Errc::io_error, "cannot open " + path + " for writing");
  return out;
}

json parse_json(const std::string& text, const std::string& where) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) raise(Errc::schema_error, "invalid JSON in " + where);
  return j;
}

const json& field(const json& j, const char* name, const std::string& where) {
  auto it = j.find(name);
  if (it == j.end()) raise(Errc::schema_error, where + " is missing \"" + name + "\"");
  return *it;
}

std::string string_field(const json& j, const char* name, const std::string& where) {
  const json& f = field(j, name, where);
  if (!f.is_string()) raise(Errc::schema_error, where + " field \"" + name + "\" must be a string");
  return f.get<std::string>();
}

double number_field(const json& j, const char* name, const std::string& where) {
  const json& f = field(j, name, where);
  if (!f.is_number()) raise(Errc::schema_error, where + " field \"" + name + "\" must be a number");
  return f.get<double>();
}

// CSV field escaping: quote when the value holds a comma, quote or newline.
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits one CSV line honoring quoted fields with doubled quotes.
std::vector<std::string> csv_split(const std::string& line, const std::string& where) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) raise(Errc::schema_error, "unterminated quote in " + where);
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    raise(Errc::schema_error, "'" + s + "' is not a number in " + where);
  }
}

}  // namespace

std::vector<Document> load_documents_jsonl(const std::string& path) {
  auto in = open_input(path);
  std::vector<Document> docs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::string where = path + ":" + std::to_string(line_no);
    json j = parse_json(line, where);
    Document d;
    d.id = string_field(j, "id", where);
    d.title = string_field(j, "title", where);
    d.body = string_field(j, "body", where);
    docs.push_back(std::move(d));
  }
  return docs;
}

std::vector<EmbeddingVector> load_embeddings_jsonl(const std::string& path) {
  auto in = open_input(path);
  std::vector<EmbeddingVector> embeddings;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::string where = path + ":" + std::to_string(line_no);
    json j = parse_json(line, where);
    EmbeddingVector e;
    e.id = string_field(j, "id", where);
    const json& values = field(j, "values", where);
    if (!values.is_array() || values.empty())
      raise(Errc::schema_error, where + " field \"values\" must be a nonempty array");
    for (const auto& v : values) {
      if (!v.is_number()) raise(Errc::schema_error, where + " embedding values must be numbers");
      e.values.push_back(v.get<double>());
    }
    embeddings.push_back(std::move(e));
  }
  return embeddings;
}

EmbeddingVector load_single_embedding(const std::string& path) {
  auto in = open_input(path);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) break;
  if (line.empty()) raise(Errc::schema_error, path + " holds no embedding");
  json j = parse_json(line, path);
  EmbeddingVector e;
  e.id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : "query";
  const json& values = field(j, "values", path);
  if (!values.is_array() || values.empty())
    raise(Errc::schema_error, path + " field \"values\" must be a nonempty array");
  for (const auto& v : values) {
    if (!v.is_number()) raise(Errc::schema_error, path + " embedding values must be numbers");
    e.values.push_back(v.get<double>());
  }
  return e;
}

std::vector<Query> load_queries_json(const std::string& path) {
  auto in = open_input(path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j = parse_json(buf.str(), path);
  if (!j.is_array()) raise(Errc::schema_error, path + " must hold a JSON array of queries");
  std::vector<Query> queries;
  bool any_weight = false;
  double total_weight = 0.0;
  for (const auto& item : j) {
    Query q;
    q.id = string_field(item, "id", path);
    q.text = string_field(item, "text", path);
    if (item.contains("weight")) {
      if (!item["weight"].is_number()) raise(Errc::schema_error, path + " query weight must be a number");
      q.weight = item["weight"].get<double>();
      if (q.weight < 0) raise(Errc::schema_error, path + " query weight must be nonnegative");
      any_weight = true;
    }
    total_weight += q.weight;
    queries.push_back(std::move(q));
  }
  if (queries.empty()) raise(Errc::schema_error, path + " holds no queries");
  if (any_weight && std::abs(total_weight - 1.0) > 1e-9)
    raise(Errc::schema_error, path + " explicit query weights must sum to 1");
  if (!any_weight) {
    for (auto& q : queries) q.weight = 1.0 / static_cast<double>(queries.size());
  }
  return queries;
}

GameFile load_game_json(const std::string& path) {
  auto in = open_input(path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j = parse_json(buf.str(), path);

  GameFile game;
  game.query_id = string_field(j, "query_id", path);
  const json& members = field(j, "members", path);
  if (!members.is_array() || members.empty())
    raise(Errc::schema_error, path + " field \"members\" must be a nonempty array");
  for (const auto& m : members) {
    if (!m.is_string()) raise(Errc::schema_error, path + " members must be strings");
    game.members.push_back(m.get<std::string>());
  }
  if (j.contains("v_max")) game.v_max = number_field(j, "v_max", path);
  if (j.contains("v_empty")) game.v_empty = number_field(j, "v_empty", path);

  const json& scores = field(j, "scores", path);
  if (!scores.is_object()) raise(Errc::schema_error, path + " field \"scores\" must be an object");
  for (const auto& [key, value] : scores.items()) {
    if (!value.is_number()) raise(Errc::schema_error, path + " score for {" + key + "} must be a number");
    game.scores[key] = value.get<double>();
  }

  if (j.contains("true_phi")) {
    const json& truth = j["true_phi"];
    if (!truth.is_object()) raise(Errc::schema_error, path + " field \"true_phi\" must be an object");
    for (const auto& [doc, value] : truth.items()) {
      if (!value.is_number()) raise(Errc::schema_error, path + " true_phi for " + doc + " must be a number");
      game.true_phi[doc] = value.get<double>();
    }
  }
  return game;
}

void save_game_json(const std::string& path, const GameFile& game) {
  json j;
  j["query_id"] = game.query_id;
  j["members"] = game.members;
  j["v_max"] = game.v_max;
  j["v_empty"] = game.v_empty;
  j["scores"] = json::object();
  for (const auto& [key, value] : game.scores) j["scores"][key] = value;
  if (!game.true_phi.empty()) {
    j["true_phi"] = json::object();
    for (const auto& [doc, value] : game.true_phi) j["true_phi"][doc] = value;
  }
  auto out = open_output(path);
  out << j.dump(2) << "\n";
}

GamePtr game_from_file(const GameFile& file) {
  Query q;
  q.id = file.query_id;
  auto source = std::make_shared<TableSource>(file.scores);
  return make_game(q, file.members, std::move(source), file.v_max, file.v_empty);
}

namespace {

std::string params_to_json(const std::map<std::string, std::string>& params) {
  json j = json::object();
  for (const auto& [k, v] : params) j[k] = v;
  return j.dump();
}

std::map<std::string, std::string> params_from_json(const std::string& text, const std::string& where) {
  json j = parse_json(text, where);
  if (!j.is_object()) raise(Errc::schema_error, "params in " + where + " must be a JSON object");
  std::map<std::string, std::string> params;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) raise(Errc::schema_error, "params in " + where + " must map to strings");
    params[k] = v.get<std::string>();
  }
  return params;
}

}  // namespace

void write_attributions_csv(std::ostream& out, const std::vector<Attribution>& attributions) {
  out << "doc_id,phi,method,unique_subsets,params\n";
  for (const auto& a : attributions) {
    std::string params = csv_escape(params_to_json(a.params));
    for (std::size_t i = 0; i < a.doc_ids.size(); ++i) {
      out << csv_escape(a.doc_ids[i]) << ',' << format_double(a.values[i]) << ','
          << method_name(a.method) << ',' << a.unique_subsets << ',' << params << '\n';
    }
  }
}

void save_attributions_csv(const std::string& path, const std::vector<Attribution>& attributions) {
  auto out = open_output(path);
  write_attributions_csv(out, attributions);
}

std::vector<Attribution> load_attributions_csv(const std::string& path) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) raise(Errc::schema_error, path + " is empty");
  if (csv_split(line, path).size() != 5)
    raise(Errc::schema_error, path + " header must have 5 columns");

  std::vector<Attribution> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::string where = path + ":" + std::to_string(line_no);
    auto fields = csv_split(line, where);
    if (fields.size() != 5) raise(Errc::schema_error, where + " must have 5 columns");

    Method method = method_from_name(fields[2]);
    std::int64_t unique = static_cast<std::int64_t>(parse_double(fields[3], where));
    auto params = params_from_json(fields[4], where);

    // Rows belonging to one attribution are contiguous and share the method,
    // cost and parameter record.
    bool fresh = out.empty() || out.back().method != method ||
                 out.back().unique_subsets != unique || out.back().params != params;
    if (fresh) {
      Attribution a;
      a.method = method;
      a.unique_subsets = unique;
      a.params = std::move(params);
      out.push_back(std::move(a));
    }
    out.back().doc_ids.push_back(fields[0]);
    out.back().values.push_back(parse_double(fields[1], where));
  }
  if (out.empty()) raise(Errc::schema_error, path + " holds no attribution rows");
  return out;
}

void save_clusters_json(const std::string& path, const ClusterAssignment& assignment) {
  json j;
  j["epsilon"] = assignment.epsilon;
  j["achieved_radius"] = assignment.achieved_radius;
  j["iterations"] = assignment.iterations;
  j["clusters"] = assignment.clusters;
  auto out = open_output(path);
  out << j.dump(2) << "\n";
}

ClusterAssignment load_clusters_json(const std::string& path) {
  auto in = open_input(path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j = parse_json(buf.str(), path);

  ClusterAssignment a;
  a.epsilon = number_field(j, "epsilon", path);
  a.achieved_radius = number_field(j, "achieved_radius", path);
  if (j.contains("iterations")) a.iterations = static_cast<int>(number_field(j, "iterations", path));
  const json& clusters = field(j, "clusters", path);
  if (!clusters.is_array()) raise(Errc::schema_error, path + " field \"clusters\" must be an array");
  for (const auto& cluster : clusters) {
    if (!cluster.is_array()) raise(Errc::schema_error, path + " clusters must be arrays of indices");
    std::vector<int> members;
    for (const auto& m : cluster) {
      if (!m.is_number_integer()) raise(Errc::schema_error, path + " cluster members must be integers");
      members.push_back(m.get<int>());
    }
    a.clusters.push_back(std::move(members));
  }
  return a;
}

void write_frontier_csv(std::ostream& out, const std::vector<FrontierPoint>& points) {
  out << "method,param_json,unique_subsets,mae,mse,mape,ci_low,ci_high\n";
  for (const auto& p : points) {
    out << method_name(p.method) << ',' << csv_escape(params_to_json(p.params)) << ','
        << format_double(p.mean_unique_subsets) << ',' << format_double(p.mae) << ','
        << format_double(p.mse) << ',' << format_double(p.mape) << ','
        << format_double(p.ci_low) << ',' << format_double(p.ci_high) << '\n';
  }
}

void save_frontier_csv(const std::string& path, const std::vector<FrontierPoint>& points) {
  auto out = open_output(path);
  write_frontier_csv(out, points);
}

void write_scatter_csv(std::ostream& out, const std::vector<std::pair<double, double>>& points) {
  out << "d,delta\n";
  for (const auto& [d, delta] : points)
    out << format_double(d) << ',' << format_double(delta) << '\n';
}

void save_scatter_csv(const std::string& path, const std::vector<std::pair<double, double>>& points) {
  auto out = open_output(path);
  write_scatter_csv(out, points);
}

void write_payouts_csv(std::ostream& out, const RevenueReport& report) {
  out << "doc_id,payout,mode,beta\n";
  for (const auto& [doc, amount] : report.payouts)
    out << csv_escape(doc) << ',' << format_double(amount) << ',' << report.mode << ','
        << format_double(report.beta) << '\n';
}

void save_payouts_csv(const std::string& path, const RevenueReport& report) {
  auto out = open_output(path);
  write_payouts_csv(out, report);
}

std::vector<std::pair<std::string, double>> load_rq_csv(const std::string& path) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) raise(Errc::schema_error, path + " is empty");
  std::vector<std::pair<std::string, double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::string where = path + ":" + std::to_string(line_no);
    auto fields = csv_split(line, where);
    if (fields.size() != 2) raise(Errc::schema_error, where + " must have 2 columns");
    rows.emplace_back(fields[0], parse_double(fields[1], where));
  }
  return rows;
}

void save_rq_csv(const std::string& path, const std::vector<std::pair<std::string, double>>& rows) {
  auto out = open_output(path);
  out << "query_id,revenue\n";
  for (const auto& [q, r] : rows) out << csv_escape(q) << ',' << format_double(r) << '\n';
}

}  // namespace docval
