// docval: fair attribution of a summarize-and-score pipeline's value across
// the documents that fed it, plus the benchmarking harness around it.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "docval/approx.hpp"
#include "docval/baselines.hpp"
#include "docval/bench.hpp"
#include "docval/cluster.hpp"
#include "docval/cshap.hpp"
#include "docval/exact.hpp"
#include "docval/io.hpp"
#include "docval/remote.hpp"
#include "docval/retrieval.hpp"
#include "docval/revenue.hpp"
#include "docval/valuefn.hpp"

using namespace docval;
using nlohmann::json;

namespace {

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::io_error:
    case Errc::schema_error:
    case Errc::missing_table_entry:
    case Errc::incomplete_table:
    case Errc::truth_unavailable:
      return 2;
    case Errc::backend_unavailable:
    case Errc::malformed_response:
    case Errc::score_parse_error:
      return 3;
    default:
      return 1;
  }
}

bool is_stdout(const std::string& out) { return out.empty() || out == "-"; }

// Writes CSV either to stdout or to a file through the library writer.
template <typename WriteFn>
void emit_csv(const std::string& out, WriteFn&& write) {
  if (is_stdout(out)) {
    write(std::cout);
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) raise(Errc::io_error, "cannot open " + out + " for writing");
  write(file);
}

std::map<std::string, std::string> parse_kv(const std::string& spec) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    std::string item = spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? spec.size() : comma + 1;
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      raise(Errc::invalid_argument, "expected key=value in '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

double to_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    raise(Errc::invalid_argument, what + " is not a number: '" + text + "'");
  }
}

std::int64_t to_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    raise(Errc::invalid_argument, what + " is not an integer: '" + text + "'");
  }
}

// Embeddings reordered to the game's member order.
std::vector<EmbeddingVector> align_embeddings(const std::vector<std::string>& members,
                                              const std::vector<EmbeddingVector>& embeddings) {
  std::map<std::string, const EmbeddingVector*> by_id;
  for (const auto& e : embeddings) by_id[e.id] = &e;
  std::vector<EmbeddingVector> out;
  out.reserve(members.size());
  for (const auto& id : members) {
    auto it = by_id.find(id);
    if (it == by_id.end())
      raise(Errc::member_mismatch, "no embedding for game member '" + id + "'");
    out.push_back(*it->second);
  }
  return out;
}

struct ValueOptions {
  std::string game_path;
  std::string synth_spec;
  std::string embeddings_path;
  std::string query_embedding_path;
  std::string method = "exact";
  double epsilon = 0.05;
  std::int64_t permutations = 1000;
  double tolerance = 0.5;
  std::int64_t samples = 2048;
  double ridge = 1e-6;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  bool shift_relevance = false;
  int concurrency = 4;
  std::string out = "-";
};

struct LoadedGame {
  GamePtr game;
  std::vector<EmbeddingVector> embeddings;  // member order when present
  std::vector<double> query_embedding;
  bool has_embeddings = false;
  bool has_query_embedding = false;
};

LoadedGame load_value_inputs(const ValueOptions& opt) {
  LoadedGame out;
  if (opt.game_path.empty() == opt.synth_spec.empty())
    raise(Errc::invalid_argument, "provide exactly one of --game and --synth");

  if (!opt.game_path.empty()) {
    GameFile file = load_game_json(opt.game_path);
    out.game = game_from_file(file);
  } else {
    auto kv = parse_kv(opt.synth_spec);
    if (!kv.count("n")) raise(Errc::invalid_argument, "--synth needs n=<members>");
    int n = static_cast<int>(to_int(kv["n"], "synth n"));
    int dim = kv.count("dim") ? static_cast<int>(to_int(kv["dim"], "synth dim")) : 16;
    SynthesisConfig config;
    config.sigma = kv.count("sigma") ? to_double(kv["sigma"], "synth sigma") : 0.0;
    config.seed = kv.count("seed") ? static_cast<std::uint64_t>(to_int(kv["seed"], "synth seed"))
                                   : opt.seed;
    config.v_max = kv.count("vmax") ? to_double(kv["vmax"], "synth vmax") : 10.0;
    SyntheticGame sg = random_synth_game(n, dim, config);
    // Materialize up front so sampling methods replay one fixed score table.
    auto table = materialize_table(*sg.game, opt.concurrency);
    out.game = make_game(sg.game->query(), sg.game->members(), std::move(table),
                         sg.game->v_max(), sg.game->v_empty());
    SynthEmbeddings se = synth_embeddings(n, dim, config.seed);
    out.embeddings = std::move(se.docs);
    out.query_embedding = std::move(se.query);
    out.has_embeddings = true;
    out.has_query_embedding = true;
  }

  if (!opt.embeddings_path.empty()) {
    out.embeddings = align_embeddings(out.game->members(),
                                      load_embeddings_jsonl(opt.embeddings_path));
    out.has_embeddings = true;
  }
  if (!opt.query_embedding_path.empty()) {
    out.query_embedding = load_single_embedding(opt.query_embedding_path).values;
    out.has_query_embedding = true;
  }
  return out;
}

int run_value(const ValueOptions& opt) {
  LoadedGame loaded = load_value_inputs(opt);
  Method method = method_from_name(opt.method);
  Attribution result;
  switch (method) {
    case Method::exact:
      result = exact_shapley(*loaded.game);
      break;
    case Method::cluster:
    case Method::cluster_mc: {
      if (!loaded.has_embeddings)
        raise(Errc::invalid_argument, "cluster methods need --embeddings (or a --synth game)");
      ClusteringConfig clustering;
      clustering.epsilon = opt.epsilon;
      DistanceMatrix distances = distance_matrix(loaded.embeddings);
      if (method == Method::cluster) {
        result = cluster_shapley(loaded.game, distances, clustering);
      } else {
        ClusterGame cg(loaded.game, adaptive_dbscan(distances, clustering));
        McConfig mc;
        mc.permutations = opt.permutations;
        mc.seed = opt.seed;
        mc.exhaustive = opt.exhaustive;
        ClusterApproximator approximator{
            "mc", [&mc](const GamePtr& meta) { return monte_carlo(*meta, mc); }};
        result = cluster_shapley_approx(cg, approximator);
        result.params["permutations"] = std::to_string(mc.permutations);
        result.params["seed"] = std::to_string(mc.seed);
      }
      break;
    }
    case Method::mc: {
      McConfig config;
      config.permutations = opt.permutations;
      config.seed = opt.seed;
      config.exhaustive = opt.exhaustive;
      result = monte_carlo(*loaded.game, config);
      break;
    }
    case Method::tmc: {
      TmcConfig config;
      config.permutations = opt.permutations;
      config.seed = opt.seed;
      config.tolerance = opt.tolerance;
      config.exhaustive = opt.exhaustive;
      result = truncated_monte_carlo(*loaded.game, config);
      break;
    }
    case Method::kernelshap: {
      KernelShapConfig config;
      config.samples = opt.samples;
      config.seed = opt.seed;
      config.ridge_lambda = opt.ridge;
      result = kernel_shap(*loaded.game, config);
      break;
    }
    case Method::equal:
      result = equal_attribution(*loaded.game);
      break;
    case Method::relevance: {
      if (!loaded.has_embeddings || !loaded.has_query_embedding)
        raise(Errc::invalid_argument,
              "relevance needs --embeddings and --query-embedding (or a --synth game)");
      RelevanceConfig config;
      config.shift_nonnegative = opt.shift_relevance;
      result = relevance_weighted(*loaded.game, loaded.query_embedding, loaded.embeddings, config);
      break;
    }
  }
  emit_csv(opt.out, [&](std::ostream& os) { write_attributions_csv(os, {result}); });
  return 0;
}

struct ClusterOptions {
  std::string embeddings_path;
  double epsilon = 0.05;
  int min_pts = 1;
  double shrink = 0.95;
  int max_iterations = 200;
  bool standard = false;
  std::string out;
};

int run_cluster(const ClusterOptions& opt) {
  auto embeddings = load_embeddings_jsonl(opt.embeddings_path);
  DistanceMatrix distances = distance_matrix(embeddings);
  ClusterAssignment assignment;
  if (opt.standard) {
    // Plain density clustering at the given radius: no certificate, reported
    // as-is for side-by-side comparison with the adaptive variant.
    assignment.epsilon = opt.epsilon;
    assignment.clusters = standard_dbscan(distances, opt.epsilon, opt.min_pts);
    assignment.achieved_radius = opt.epsilon;
    assignment.iterations = 1;
  } else {
    ClusteringConfig config;
    config.epsilon = opt.epsilon;
    config.min_pts = opt.min_pts;
    config.shrink_factor = opt.shrink;
    config.max_iterations = opt.max_iterations;
    assignment = adaptive_dbscan(distances, config);
  }
  if (is_stdout(opt.out)) raise(Errc::invalid_argument, "cluster needs --out <path>");
  save_clusters_json(opt.out, assignment);
  std::cout << "clusters=" << assignment.cluster_count()
            << " achieved_radius=" << format_double(assignment.achieved_radius)
            << " iterations=" << assignment.iterations << "\n";
  return 0;
}

struct RetrieveOptions {
  std::string query_text;
  std::string query_embedding_path;
  std::string embeddings_path;
  std::string docs_path;
  int k = 8;
  int min_words = 0;
  double min_similarity = -2.0;
  std::string out = "-";
};

int run_retrieve(const RetrieveOptions& opt) {
  if (opt.query_embedding_path.empty()) {
    if (!opt.query_text.empty())
      raise(Errc::invalid_argument,
            "no embedding backend is configured; embed the query offline and pass --query-embedding");
    raise(Errc::invalid_argument, "retrieve needs --query-embedding");
  }
  auto corpus = load_embeddings_jsonl(opt.embeddings_path);
  if (opt.min_words > 0) {
    if (opt.docs_path.empty())
      raise(Errc::invalid_argument, "--min-words needs --docs to count words");
    auto docs = min_word_filter(load_documents_jsonl(opt.docs_path), opt.min_words);
    std::vector<EmbeddingVector> kept;
    for (const auto& e : corpus) {
      for (const auto& d : docs) {
        if (d.id == e.id) {
          kept.push_back(e);
          break;
        }
      }
    }
    corpus = std::move(kept);
  }
  auto query = load_single_embedding(opt.query_embedding_path);
  auto ranked = top_k(query.values, corpus, opt.k, opt.min_similarity);
  emit_csv(opt.out, [&](std::ostream& os) {
    os << "doc_id,similarity\n";
    for (const auto& doc : ranked) os << doc.id << "," << format_double(doc.similarity) << "\n";
  });
  return 0;
}

struct SynthOptions {
  int n = 0;
  int dim = 16;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  double v_max = 10.0;
  std::string embeddings_path;
  std::string query_embedding_path;
  std::string query_id;
  bool materialize = true;
  int concurrency = 4;
  std::string out;
};

int run_synth(const SynthOptions& opt) {
  if (is_stdout(opt.out)) raise(Errc::invalid_argument, "synth needs --out <game.json>");
  SynthesisConfig config;
  config.sigma = opt.sigma;
  config.seed = opt.seed;
  config.v_max = opt.v_max;
  SyntheticGame sg;
  if (!opt.embeddings_path.empty()) {
    if (opt.query_embedding_path.empty())
      raise(Errc::invalid_argument, "--embeddings needs --query-embedding for similarities");
    auto docs = load_embeddings_jsonl(opt.embeddings_path);
    auto query_embedding = load_single_embedding(opt.query_embedding_path);
    Query q;
    q.id = opt.query_id.empty() ? query_embedding.id : opt.query_id;
    sg = synth_game(q, docs, query_embedding.values, config);
  } else {
    if (opt.n < 1) raise(Errc::invalid_argument, "provide --embeddings or --n");
    sg = random_synth_game(opt.n, opt.dim, config);
  }

  GameFile file;
  file.query_id = opt.query_id.empty() ? sg.game->query().id : opt.query_id;
  file.members = sg.game->members();
  file.v_max = sg.game->v_max();
  file.v_empty = sg.game->v_empty();
  for (std::size_t i = 0; i < file.members.size(); ++i)
    file.true_phi[file.members[i]] = sg.true_values[i];
  if (opt.materialize) {
    auto table = materialize_table(*sg.game, opt.concurrency);
    file.scores = table->scores();
  }
  save_game_json(opt.out, file);
  return 0;
}

struct LlmGameOptions {
  std::string query_text;
  std::string query_id = "q0";
  std::string docs_path;
  std::string endpoint;
  std::string model;
  std::string prompts_dir = "prompts";
  std::string embeddings_path;
  std::string query_embedding_path;
  int k = 8;
  int replicates = 4;
  double temperature = 0.1;
  double score_max = 10.0;
  int min_words = 0;
  int max_retries = 3;
  int timeout_seconds = 60;
  int concurrency = 4;
  std::string out;
};

int run_llm_game(const LlmGameOptions& opt) {
  if (is_stdout(opt.out)) raise(Errc::invalid_argument, "llm-game needs --out <game.json>");
  auto docs = load_documents_jsonl(opt.docs_path);
  if (opt.min_words > 0) docs = min_word_filter(docs, opt.min_words);
  if (docs.empty()) raise(Errc::empty_corpus, "no documents survive the filter");

  // Rank by query similarity when embeddings are supplied; otherwise keep the
  // first k documents in corpus order.
  std::vector<Document> members;
  if (!opt.embeddings_path.empty()) {
    if (opt.query_embedding_path.empty())
      raise(Errc::invalid_argument, "--embeddings needs --query-embedding for ranking");
    auto corpus = load_embeddings_jsonl(opt.embeddings_path);
    std::vector<EmbeddingVector> present;
    for (const auto& e : corpus) {
      for (const auto& d : docs) {
        if (d.id == e.id) {
          present.push_back(e);
          break;
        }
      }
    }
    auto query_embedding = load_single_embedding(opt.query_embedding_path);
    for (const auto& scored : top_k(query_embedding.values, present, opt.k)) {
      for (const auto& d : docs) {
        if (d.id == scored.id) {
          members.push_back(d);
          break;
        }
      }
    }
  } else {
    for (const auto& d : docs) {
      if (static_cast<int>(members.size()) >= opt.k) break;
      members.push_back(d);
    }
  }
  if (members.empty()) raise(Errc::empty_corpus, "no documents to score");

  RemotePipelineConfig config;
  config.endpoint_url = opt.endpoint;
  config.model = opt.model;
  config.temperature = opt.temperature;
  config.replicates = opt.replicates;
  config.score_max = opt.score_max;
  config.max_retries = opt.max_retries;
  config.timeout_seconds = opt.timeout_seconds;
  load_prompt_templates(config, opt.prompts_dir);

  Query query;
  query.id = opt.query_id;
  query.text = opt.query_text;
  auto client = std::make_shared<RemoteClient>(config);
  auto source = std::make_shared<RemoteSource>(client, query, members);
  std::vector<std::string> member_ids;
  for (const auto& d : members) member_ids.push_back(d.id);
  auto game = make_game(query, member_ids, source, opt.score_max, 0.0);

  auto table = materialize_table(*game, opt.concurrency);
  GameFile file;
  file.query_id = opt.query_id;
  file.members = member_ids;
  file.v_max = opt.score_max;
  file.v_empty = 0.0;
  file.scores = table->scores();
  save_game_json(opt.out, file);
  std::cout << "unique_subsets=" << game->unique_subsets() << "\n";
  return 0;
}

struct FrontierOptions {
  std::string games_dir;
  std::string grid_path;
  std::string truth = "exact";
  int replications = 10;
  std::uint64_t seed = 0;
  int concurrency = 4;
  double mape_constant = 0.1;
  int exact_cap = 20;
  std::string out = "-";
};

std::vector<FrontierMethodSpec> load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open " + path + " for reading");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) raise(Errc::schema_error, path + ": not valid JSON");
  if (j.is_object() && j.contains("methods")) j = j["methods"];
  if (!j.is_array() || j.empty()) raise(Errc::schema_error, path + ": expected a method array");
  std::vector<FrontierMethodSpec> specs;
  for (const auto& entry : j) {
    if (!entry.is_object() || !entry.contains("method"))
      raise(Errc::schema_error, path + ": each entry needs a method name");
    FrontierMethodSpec spec;
    spec.method = method_from_name(entry["method"].get<std::string>());
    if (entry.contains("grid")) {
      for (const auto& point : entry["grid"]) {
        std::map<std::string, std::string> params;
        for (auto it = point.begin(); it != point.end(); ++it) {
          if (it.value().is_string())
            params[it.key()] = it.value().get<std::string>();
          else if (it.value().is_number_integer())
            params[it.key()] = std::to_string(it.value().get<std::int64_t>());
          else if (it.value().is_number())
            params[it.key()] = format_double(it.value().get<double>());
          else
            raise(Errc::schema_error, path + ": grid values must be strings or numbers");
        }
        spec.grid.push_back(std::move(params));
      }
    }
    if (spec.grid.empty()) spec.grid.push_back({});
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::vector<FrontierGame> load_frontier_games(const std::string& dir, const std::string& truth_mode) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) raise(Errc::io_error, dir + " is not a directory");
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) raise(Errc::empty_input, "no .json games under " + dir);

  std::vector<FrontierGame> games;
  for (const auto& path : paths) {
    GameFile file = load_game_json(path.string());
    FrontierGame fg;
    fg.id = path.stem().string();
    fg.game = game_from_file(file);
    if (truth_mode == "file") {
      if (file.true_phi.empty())
        raise(Errc::truth_unavailable, path.string() + " has no true_phi but --truth file was given");
      Attribution truth;
      truth.method = Method::exact;
      truth.doc_ids = file.members;
      for (const auto& id : file.members) truth.values.push_back(file.true_phi.at(id));
      fg.truth = std::move(truth);
    }
    fs::path member_embeddings = path.parent_path() / (path.stem().string() + ".embeddings.jsonl");
    if (fs::exists(member_embeddings)) {
      fg.embeddings = align_embeddings(file.members,
                                       load_embeddings_jsonl(member_embeddings.string()));
    }
    fs::path query_embedding = path.parent_path() / (path.stem().string() + ".query.jsonl");
    if (fs::exists(query_embedding)) {
      fg.query_embedding = load_single_embedding(query_embedding.string()).values;
    }
    games.push_back(std::move(fg));
  }
  return games;
}

int run_frontier(const FrontierOptions& opt) {
  if (opt.truth != "exact" && opt.truth != "file")
    raise(Errc::invalid_argument, "--truth must be 'exact' or 'file'");
  auto games = load_frontier_games(opt.games_dir, opt.truth);
  auto specs = load_grid(opt.grid_path);
  FrontierConfig config;
  config.replications = opt.replications;
  config.seed = opt.seed;
  config.concurrency = opt.concurrency;
  config.mape_constant = opt.mape_constant;
  config.exact_cap = opt.exact_cap;
  auto points = docval::run_frontier(games, specs, config);
  emit_csv(opt.out, [&](std::ostream& os) { write_frontier_csv(os, points); });
  return 0;
}

struct RevenueOptions {
  std::vector<std::string> attribution_paths;
  std::string weights_path;
  std::string rq_path;
  std::string mode = "subscription";
  double beta = 0.0;
  double subscription = 0.0;
  std::string out = "-";
};

int run_revenue(const RevenueOptions& opt) {
  if (opt.attribution_paths.empty())
    raise(Errc::invalid_argument, "revenue needs at least one --attributions file");

  std::map<std::string, double> weights;
  if (!opt.weights_path.empty()) {
    for (const auto& q : load_queries_json(opt.weights_path)) weights[q.id] = q.weight;
  }
  std::map<std::string, double> rq;
  if (!opt.rq_path.empty()) {
    for (const auto& [id, revenue] : load_rq_csv(opt.rq_path)) rq[id] = revenue;
  }

  std::vector<QueryRecord> queries;
  for (const auto& path : opt.attribution_paths) {
    auto attributions = load_attributions_csv(path);
    if (attributions.empty()) raise(Errc::schema_error, path + " holds no attribution");
    QueryRecord record;
    record.query_id = std::filesystem::path(path).stem().string();
    record.attribution = std::move(attributions.front());
    if (!weights.empty()) {
      auto it = weights.find(record.query_id);
      if (it == weights.end())
        raise(Errc::invalid_argument, "no weight for query '" + record.query_id + "'");
      record.weight = it->second;
    }
    auto it = rq.find(record.query_id);
    if (it != rq.end()) record.revenue = it->second;
    queries.push_back(std::move(record));
  }

  RevenueReport report;
  if (opt.mode == "subscription") {
    report = subscription_payout(expected_value(queries), opt.subscription, opt.beta);
  } else if (opt.mode == "query") {
    if (queries.size() != 1)
      raise(Errc::invalid_argument, "query mode expects exactly one --attributions file");
    report = query_payout(queries.front(), opt.beta);
  } else if (opt.mode == "combined") {
    report = combined_payout(expected_value(queries), opt.subscription, queries, opt.beta);
  } else {
    raise(Errc::invalid_argument, "--mode must be subscription, query, or combined");
  }
  emit_csv(opt.out, [&](std::ostream& os) { write_payouts_csv(os, report); });
  return 0;
}

struct LipschitzOptions {
  std::string game_path;
  std::string embeddings_path;
  double quantile = 0.95;
  double cap = 0.4;
  std::string out = "-";
};

int run_lipschitz(const LipschitzOptions& opt) {
  GameFile file = load_game_json(opt.game_path);
  GamePtr game = game_from_file(file);
  auto embeddings = align_embeddings(file.members, load_embeddings_jsonl(opt.embeddings_path));
  LipschitzConfig config;
  config.quantile = opt.quantile;
  config.distance_cap = opt.cap;
  LipschitzScan scan = lipschitz_scan(*game, distance_matrix(embeddings), config);
  emit_csv(opt.out, [&](std::ostream& os) { write_scatter_csv(os, scan.points); });
  // Keep stdout clean when the CSV itself goes there.
  std::ostream& info = is_stdout(opt.out) ? std::cerr : std::cout;
  info << "fitted_l=" << format_double(scan.fitted_l) << " points=" << scan.points.size() << "\n";
  return 0;
}

struct BoundOptions {
  double lipschitz = 0.0;
  double epsilon = 0.0;
  double approx_error = -1.0;
  int cluster_size = 0;
  double v_max = 10.0;
  double eta = 0.05;
  double eps_total = -1.0;
  std::int64_t permutations = 0;
};

int run_bound(const BoundOptions& opt) {
  std::cout << "theorem1_bound=" << format_double(theorem1_bound(opt.lipschitz, opt.epsilon))
            << "\n";
  if (opt.approx_error >= 0.0 && opt.cluster_size > 0) {
    std::cout << "theorem2_bound="
              << format_double(theorem2_bound(opt.lipschitz, opt.epsilon, opt.approx_error,
                                              opt.cluster_size))
              << "\n";
  }
  if (opt.eps_total >= 0.0 && opt.cluster_size > 0) {
    std::int64_t n = corollary2_sample_size(opt.v_max, opt.eta, opt.cluster_size, opt.eps_total,
                                            opt.lipschitz, opt.epsilon);
    std::cout << "corollary2_permutations=" << n << "\n";
    std::cout << "hoeffding_half_width=" << format_double(hoeffding_half_width(opt.v_max, opt.eta, n))
              << "\n";
  } else if (opt.permutations > 0) {
    std::cout << "hoeffding_half_width="
              << format_double(hoeffding_half_width(opt.v_max, opt.eta, opt.permutations)) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Document attribution for summarize-and-score pipelines"};
  app.set_config("--config", "", "Key-value config file; command-line flags take precedence");
  app.require_subcommand(1);
  int rc = 0;

  ValueOptions value_opt;
  auto* value = app.add_subcommand("value", "Compute an attribution for one game");
  value->add_option("--game", value_opt.game_path, "Replayable game JSON");
  value->add_option("--synth", value_opt.synth_spec,
                    "Synthetic game spec, e.g. n=8,sigma=0.1,seed=3,dim=16,vmax=10");
  value->add_option("--embeddings", value_opt.embeddings_path, "Member embeddings JSONL");
  value->add_option("--query-embedding", value_opt.query_embedding_path,
                    "Query embedding JSON for the relevance baseline");
  value->add_option("--method", value_opt.method,
                    "exact|cluster|cluster-mc|mc|tmc|kernelshap|equal|relevance");
  value->add_option("--epsilon", value_opt.epsilon, "Cluster diameter bound");
  value->add_option("--permutations", value_opt.permutations, "Sampled permutations");
  value->add_option("--tolerance", value_opt.tolerance, "Truncation tolerance");
  value->add_option("--samples", value_opt.samples, "Kernel SHAP coalition samples");
  value->add_option("--ridge", value_opt.ridge, "Kernel SHAP ridge term");
  value->add_option("--seed", value_opt.seed, "Random seed");
  value->add_flag("--exhaustive", value_opt.exhaustive, "Enumerate all permutations");
  value->add_flag("--shift-relevance", value_opt.shift_relevance,
                  "Shift similarities to be nonnegative before weighting");
  value->add_option("--concurrency", value_opt.concurrency, "Worker threads");
  value->add_option("--out", value_opt.out, "Output CSV path, or - for stdout");
  value->callback([&] { rc = run_value(value_opt); });

  ClusterOptions cluster_opt;
  auto* cluster = app.add_subcommand("cluster", "Cluster embeddings with a certified diameter");
  cluster->add_option("--embeddings", cluster_opt.embeddings_path, "Embeddings JSONL")->required();
  cluster->add_option("--epsilon", cluster_opt.epsilon, "Diameter bound");
  cluster->add_option("--min-pts", cluster_opt.min_pts, "DBSCAN MinPts");
  cluster->add_option("--shrink", cluster_opt.shrink, "Radius shrink factor");
  cluster->add_option("--max-iterations", cluster_opt.max_iterations, "Shrink pass limit");
  cluster->add_flag("--standard", cluster_opt.standard,
                    "Plain DBSCAN at the given radius, no diameter certificate");
  cluster->add_option("--out", cluster_opt.out, "clusters.json path")->required();
  cluster->callback([&] { rc = run_cluster(cluster_opt); });

  RetrieveOptions retrieve_opt;
  auto* retrieve = app.add_subcommand("retrieve", "Rank documents by query similarity");
  retrieve->add_option("--query-text", retrieve_opt.query_text, "Query text (requires a precomputed embedding)");
  retrieve->add_option("--query-embedding", retrieve_opt.query_embedding_path, "Query embedding JSON");
  retrieve->add_option("--embeddings", retrieve_opt.embeddings_path, "Corpus embeddings JSONL")
      ->required();
  retrieve->add_option("--docs", retrieve_opt.docs_path, "Corpus documents JSONL (for --min-words)");
  retrieve->add_option("--k", retrieve_opt.k, "Documents to keep");
  retrieve->add_option("--min-words", retrieve_opt.min_words, "Minimum words per document");
  retrieve->add_option("--min-similarity", retrieve_opt.min_similarity, "Similarity floor");
  retrieve->add_option("--out", retrieve_opt.out, "Output CSV path, or - for stdout");
  retrieve->callback([&] { rc = run_retrieve(retrieve_opt); });

  SynthOptions synth_opt;
  auto* synth = app.add_subcommand("synth", "Build a synthetic game file");
  synth->add_option("--n", synth_opt.n, "Random documents to generate");
  synth->add_option("--dim", synth_opt.dim, "Embedding dimension for random mode");
  synth->add_option("--sigma", synth_opt.sigma, "Score noise");
  synth->add_option("--seed", synth_opt.seed, "Random seed");
  synth->add_option("--v-max", synth_opt.v_max, "Score ceiling");
  synth->add_option("--embeddings", synth_opt.embeddings_path, "Document embeddings JSONL");
  synth->add_option("--query-embedding", synth_opt.query_embedding_path, "Query embedding JSON");
  synth->add_option("--query-id", synth_opt.query_id, "Query id for the game file");
  synth->add_flag("!--no-materialize", synth_opt.materialize,
                  "Skip writing the full score table");
  synth->add_option("--concurrency", synth_opt.concurrency, "Worker threads");
  synth->add_option("--out", synth_opt.out, "game.json path")->required();
  synth->callback([&] { rc = run_synth(synth_opt); });

  LlmGameOptions llm_opt;
  auto* llm = app.add_subcommand("llm-game", "Materialize a score table via a remote pipeline");
  llm->add_option("--query", llm_opt.query_text, "Query text")->required();
  llm->add_option("--query-id", llm_opt.query_id, "Query id");
  llm->add_option("--docs", llm_opt.docs_path, "Documents JSONL")->required();
  llm->add_option("--endpoint", llm_opt.endpoint, "Chat-completion endpoint URL")->required();
  llm->add_option("--model", llm_opt.model, "Model name")->required();
  llm->add_option("--prompts", llm_opt.prompts_dir, "Prompt template directory");
  llm->add_option("--embeddings", llm_opt.embeddings_path, "Corpus embeddings JSONL for ranking");
  llm->add_option("--query-embedding", llm_opt.query_embedding_path, "Query embedding JSON");
  llm->add_option("--k", llm_opt.k, "Documents per game");
  llm->add_option("--replicates", llm_opt.replicates, "Score replicates per coalition");
  llm->add_option("--temperature", llm_opt.temperature, "Sampling temperature");
  llm->add_option("--score-max", llm_opt.score_max, "Score ceiling");
  llm->add_option("--min-words", llm_opt.min_words, "Minimum words per document");
  llm->add_option("--retries", llm_opt.max_retries, "Retry attempts per call");
  llm->add_option("--timeout", llm_opt.timeout_seconds, "Per-call timeout in seconds");
  llm->add_option("--concurrency", llm_opt.concurrency, "Parallel pipeline calls");
  llm->add_option("--out", llm_opt.out, "game.json path")->required();
  llm->callback([&] { rc = run_llm_game(llm_opt); });

  FrontierOptions frontier_opt;
  auto* frontier = app.add_subcommand("frontier", "Cost-accuracy sweep across methods");
  frontier->add_option("--games", frontier_opt.games_dir, "Directory of game JSON files")
      ->required();
  frontier->add_option("--grid", frontier_opt.grid_path, "Method grid JSON")->required();
  frontier->add_option("--truth", frontier_opt.truth, "exact|file");
  frontier->add_option("--replications", frontier_opt.replications, "Replications per point");
  frontier->add_option("--seed", frontier_opt.seed, "Random seed");
  frontier->add_option("--concurrency", frontier_opt.concurrency, "Worker threads");
  frontier->add_option("--mape-constant", frontier_opt.mape_constant, "MAPE denominator constant");
  frontier->add_option("--exact-cap", frontier_opt.exact_cap, "Exact-truth size cap");
  frontier->add_option("--out", frontier_opt.out, "frontier.csv path, or - for stdout");
  frontier->callback([&] { rc = run_frontier(frontier_opt); });

  RevenueOptions revenue_opt;
  auto* revenue = app.add_subcommand("revenue", "Split revenue by expected attribution");
  revenue->add_option("--attributions", revenue_opt.attribution_paths,
                      "Attribution CSVs, one per query (query id = file stem)")
      ->required();
  revenue->add_option("--weights", revenue_opt.weights_path, "Queries JSON with usage weights");
  revenue->add_option("--per-query", revenue_opt.rq_path, "Per-query revenue CSV");
  revenue->add_option("--mode", revenue_opt.mode, "subscription|query|combined");
  revenue->add_option("--beta", revenue_opt.beta, "Platform share in [0,1]")->required();
  revenue->add_option("--subscription", revenue_opt.subscription, "Subscription revenue pool");
  revenue->add_option("--out", revenue_opt.out, "payouts.csv path, or - for stdout");
  revenue->callback([&] { rc = run_revenue(revenue_opt); });

  LipschitzOptions lipschitz_opt;
  auto* lipschitz = app.add_subcommand("lipschitz", "Scan marginal gaps against embedding distance");
  lipschitz->add_option("--game", lipschitz_opt.game_path, "Replayable game JSON")->required();
  lipschitz->add_option("--embeddings", lipschitz_opt.embeddings_path, "Member embeddings JSONL")
      ->required();
  lipschitz->add_option("--quantile", lipschitz_opt.quantile, "Ratio quantile for the fitted L");
  lipschitz->add_option("--cap", lipschitz_opt.cap, "Distance cap for fitting");
  lipschitz->add_option("--out", lipschitz_opt.out, "scatter.csv path, or - for stdout");
  lipschitz->callback([&] { rc = run_lipschitz(lipschitz_opt); });

  BoundOptions bound_opt;
  auto* bound = app.add_subcommand("bound", "Evaluate the error-bound calculators");
  bound->add_option("--lipschitz", bound_opt.lipschitz, "Lipschitz constant L")->required();
  bound->add_option("--epsilon", bound_opt.epsilon, "Cluster diameter bound")->required();
  bound->add_option("--approx-error", bound_opt.approx_error, "Cluster-level approximation error");
  bound->add_option("--cluster-size", bound_opt.cluster_size, "Cluster size |G_k|");
  bound->add_option("--v-max", bound_opt.v_max, "Score ceiling");
  bound->add_option("--eta", bound_opt.eta, "Failure probability");
  bound->add_option("--eps-total", bound_opt.eps_total, "Total per-document error target");
  bound->add_option("--permutations", bound_opt.permutations, "Permutations for the Hoeffding width");
  bound->callback([&] { rc = run_bound(bound_opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\nRun with --help for usage.\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
