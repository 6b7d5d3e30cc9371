#include "docval/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "docval/approx.hpp"
#include "docval/baselines.hpp"
#include "docval/cshap.hpp"
#include "docval/exact.hpp"
#include "docval/parallel.hpp"
#include "docval/rng.hpp"

namespace docval {

ErrorMetrics error_metrics(const Attribution& estimate, const Attribution& truth,
                           double mape_constant) {
  if (estimate.doc_ids != truth.doc_ids)
    raise(Errc::member_mismatch, "estimate and truth cover different documents");
  if (estimate.doc_ids.empty()) raise(Errc::empty_input, "no documents to score");

  ErrorMetrics m;
  std::size_t n = estimate.values.size();
  for (std::size_t i = 0; i < n; ++i) {
    double err = estimate.values[i] - truth.values[i];
    m.mae += std::abs(err);
    m.mse += err * err;
    m.mape += std::abs(err) / (std::abs(truth.values[i]) + mape_constant);
  }
  m.mae /= static_cast<double>(n);
  m.mse /= static_cast<double>(n);
  m.mape = 100.0 * m.mape / static_cast<double>(n);
  return m;
}

std::vector<double> default_epsilon_grid() {
  std::vector<double> grid;
  for (int i = 0; i < 40; ++i) grid.push_back(0.01 + 0.025 * i);
  return grid;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

double param_or(const std::map<std::string, std::string>& params, const std::string& key,
                double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    raise(Errc::invalid_argument, "parameter " + key + "='" + it->second + "' is not numeric");
  }
}

Attribution run_method(const FrontierGame& spec, Method method,
                       const std::map<std::string, std::string>& params, std::uint64_t seed,
                       const FrontierConfig& config) {
  GamePtr game = fresh_copy(*spec.game);
  switch (method) {
    case Method::exact:
      return exact_shapley(*game, ExactConfig{config.exact_cap});
    case Method::cluster: {
      ClusteringConfig cc;
      cc.epsilon = param_or(params, "epsilon", cc.epsilon);
      return cluster_shapley(game, distance_matrix(spec.embeddings), cc,
                             ExactConfig{config.exact_cap});
    }
    case Method::cluster_mc: {
      ClusteringConfig cc;
      cc.epsilon = param_or(params, "epsilon", cc.epsilon);
      McConfig mc;
      mc.permutations = static_cast<std::int64_t>(param_or(params, "permutations", 1000));
      mc.seed = seed;
      ClusterGame cg(game, adaptive_dbscan(distance_matrix(spec.embeddings), cc));
      ClusterApproximator approx{"mc", [mc](const GamePtr& meta) { return monte_carlo(*meta, mc); }};
      return cluster_shapley_approx(cg, approx);
    }
    case Method::mc: {
      McConfig mc;
      mc.permutations = static_cast<std::int64_t>(param_or(params, "permutations", 1000));
      mc.seed = seed;
      return monte_carlo(*game, mc);
    }
    case Method::tmc: {
      TmcConfig tc;
      tc.permutations = static_cast<std::int64_t>(param_or(params, "permutations", 1000));
      tc.tolerance = param_or(params, "tolerance", tc.tolerance);
      tc.seed = seed;
      return truncated_monte_carlo(*game, tc);
    }
    case Method::kernelshap: {
      KernelShapConfig kc;
      kc.samples = static_cast<std::int64_t>(param_or(params, "samples", kc.samples));
      kc.ridge_lambda = param_or(params, "ridge_lambda", kc.ridge_lambda);
      kc.seed = seed;
      return kernel_shap(*game, kc);
    }
    case Method::equal:
      return equal_attribution(*game);
    case Method::relevance:
      return relevance_weighted(*game, spec.query_embedding, spec.embeddings);
  }
  raise(Errc::invalid_argument, "unhandled method");
}

}  // namespace

std::vector<FrontierPoint> run_frontier(const std::vector<FrontierGame>& games,
                                        const std::vector<FrontierMethodSpec>& methods,
                                        const FrontierConfig& config) {
  if (games.empty()) raise(Errc::empty_input, "frontier needs at least one game");
  if (config.replications < 1) raise(Errc::invalid_argument, "need at least one replication");

  // Resolve the truth for every game once, up front.
  std::vector<Attribution> truths;
  truths.reserve(games.size());
  for (const auto& g : games) {
    if (g.truth) {
      if (g.truth->doc_ids != g.game->members())
        raise(Errc::member_mismatch, "truth for game '" + g.id + "' covers different documents");
      truths.push_back(*g.truth);
    } else if (g.game->size() <= config.exact_cap) {
      truths.push_back(exact_shapley(*fresh_copy(*g.game), ExactConfig{config.exact_cap}));
    } else {
      raise(Errc::truth_unavailable, "game '" + g.id + "' is too large for exact truth and none was supplied");
    }
  }

  std::vector<FrontierPoint> points;
  for (const auto& spec : methods) {
    std::vector<std::map<std::string, std::string>> grid = spec.grid;
    if (grid.empty()) grid.push_back({});
    for (const auto& params : grid) {
      std::string label = std::string(method_name(spec.method));
      for (const auto& [k, v] : params) label += ";" + k + "=" + v;
      std::uint64_t point_hash = fnv1a(label);

      std::vector<double> rep_unique(static_cast<std::size_t>(config.replications), 0.0);
      std::vector<double> rep_mae(static_cast<std::size_t>(config.replications), 0.0);
      std::vector<double> rep_mse(static_cast<std::size_t>(config.replications), 0.0);
      std::vector<double> rep_mape(static_cast<std::size_t>(config.replications), 0.0);

      for (int rep = 0; rep < config.replications; ++rep) {
        std::vector<double> game_unique(games.size(), 0.0);
        std::vector<ErrorMetrics> game_metrics(games.size());
        parallel_for(static_cast<std::int64_t>(games.size()), config.concurrency, [&](std::int64_t gi) {
          std::uint64_t seed = mix64(config.seed, point_hash, static_cast<std::uint64_t>(rep),
                                     static_cast<std::uint64_t>(gi));
          Attribution a = run_method(games[static_cast<std::size_t>(gi)], spec.method, params, seed, config);
          game_unique[static_cast<std::size_t>(gi)] = static_cast<double>(a.unique_subsets);
          game_metrics[static_cast<std::size_t>(gi)] =
              error_metrics(a, truths[static_cast<std::size_t>(gi)], config.mape_constant);
        });
        double nu = 0, nmae = 0, nmse = 0, nmape = 0;
        for (std::size_t gi = 0; gi < games.size(); ++gi) {
          nu += game_unique[gi];
          nmae += game_metrics[gi].mae;
          nmse += game_metrics[gi].mse;
          nmape += game_metrics[gi].mape;
        }
        double count = static_cast<double>(games.size());
        rep_unique[static_cast<std::size_t>(rep)] = nu / count;
        rep_mae[static_cast<std::size_t>(rep)] = nmae / count;
        rep_mse[static_cast<std::size_t>(rep)] = nmse / count;
        rep_mape[static_cast<std::size_t>(rep)] = nmape / count;
      }

      auto mean_of = [](const std::vector<double>& xs) {
        double s = 0;
        for (double x : xs) s += x;
        return s / static_cast<double>(xs.size());
      };
      FrontierPoint pt;
      pt.method = spec.method;
      pt.params = params;
      pt.replications = config.replications;
      pt.mean_unique_subsets = mean_of(rep_unique);
      pt.mae = mean_of(rep_mae);
      pt.mse = mean_of(rep_mse);
      pt.mape = mean_of(rep_mape);
      if (config.replications > 1) {
        double var = 0;
        for (double x : rep_mae) var += (x - pt.mae) * (x - pt.mae);
        var /= static_cast<double>(config.replications - 1);
        double half = 1.96 * std::sqrt(var / static_cast<double>(config.replications));
        pt.ci_low = pt.mae - half;
        pt.ci_high = pt.mae + half;
      } else {
        pt.ci_low = pt.ci_high = pt.mae;
      }
      points.push_back(std::move(pt));
    }
  }
  return points;
}

LipschitzScan lipschitz_scan(const ValuationGame& game, const DistanceMatrix& distances,
                             const LipschitzConfig& config) {
  int n = game.size();
  if (n < 2) raise(Errc::empty_input, "the scan needs at least two members");
  if (n > 16) raise(Errc::game_too_large, "scanning all coalitions is capped at 16 members");
  if (distances.size() != n)
    raise(Errc::member_mismatch, "distance matrix covers " + std::to_string(distances.size()) + " members, game has " + std::to_string(n));
  if (config.quantile <= 0 || config.quantile > 1)
    raise(Errc::invalid_argument, "quantile must lie in (0,1]");

  // Cache the full table once; a backend that cannot answer makes the scan
  // impossible.
  std::vector<double> values(1ULL << n);
  values[0] = game.v_empty();
  try {
    for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask)
      values[mask] = game.evaluate(Coalition{mask, n});
  } catch (const Error& e) {
    if (e.code() == Errc::missing_table_entry)
      raise(Errc::incomplete_table, "the scan needs a value for every coalition");
    throw;
  }

  LipschitzScan scan;
  scan.quantile = config.quantile;
  scan.distance_cap = config.distance_cap;

  std::vector<double> ratios;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d = distances.at(i, j);
      std::uint64_t pair_mask = (1ULL << i) | (1ULL << j);
      for (std::uint64_t rest = 0; rest < (1ULL << n); ++rest) {
        if (rest & pair_mask) continue;
        double mi = values[rest | (1ULL << i)] - values[rest];
        double mj = values[rest | (1ULL << j)] - values[rest];
        double delta = std::abs(mi - mj);
        scan.points.emplace_back(d, delta);
        if (d <= config.distance_cap) {
          if (d > 1e-15)
            ratios.push_back(delta / d);
          else
            ratios.push_back(delta > 1e-12 ? std::numeric_limits<double>::infinity() : 0.0);
        }
      }
    }
  }

  if (ratios.empty()) {
    scan.fitted_l = 0.0;
    return scan;
  }
  std::sort(ratios.begin(), ratios.end());
  std::size_t rank = static_cast<std::size_t>(std::ceil(config.quantile * static_cast<double>(ratios.size())));
  if (rank == 0) rank = 1;
  scan.fitted_l = ratios[rank - 1];
  return scan;
}

namespace {

double sample_variance(const std::vector<double>& xs) {
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0;
  for (double x : xs) var += (x - mean) * (x - mean);
  return var / static_cast<double>(xs.size() - 1);
}

}  // namespace

VarianceDecomposition variance_decomposition(const std::vector<ReplicatedScores>& records) {
  if (records.empty()) raise(Errc::insufficient_replicates, "no replicated scores");

  VarianceDecomposition out;
  for (const auto& record : records) {
    if (record.scores.size() < 2)
      raise(Errc::insufficient_replicates, "subset {" + record.coalition_key + "} has fewer than 2 summarizations");
    std::size_t evals = record.scores.front().size();
    std::vector<double> means;
    std::vector<double> all;
    double within = 0;
    for (const auto& row : record.scores) {
      if (row.size() < 2 || row.size() != evals)
        raise(Errc::insufficient_replicates, "subset {" + record.coalition_key + "} needs the same 2+ evaluation count per summarization");
      double m = 0;
      for (double x : row) m += x;
      means.push_back(m / static_cast<double>(row.size()));
      within += sample_variance(row);
      all.insert(all.end(), row.begin(), row.end());
    }
    out.evaluation_var += within / static_cast<double>(record.scores.size());
    out.summarization_var += sample_variance(means);
    out.total_var += sample_variance(all);
  }
  double count = static_cast<double>(records.size());
  out.evaluation_var /= count;
  out.summarization_var /= count;
  out.total_var /= count;
  return out;
}

std::vector<ReplicatedScores> simulate_two_stage(const std::vector<double>& base_means,
                                                 int summarizations, int evaluations,
                                                 double sigma_sum, double sigma_eval,
                                                 std::uint64_t seed) {
  if (base_means.empty()) raise(Errc::empty_input, "no subsets to simulate");
  if (summarizations < 2 || evaluations < 2)
    raise(Errc::insufficient_replicates, "need at least 2 summarizations and 2 evaluations");

  std::vector<ReplicatedScores> records;
  records.reserve(base_means.size());
  for (std::size_t r = 0; r < base_means.size(); ++r) {
    ReplicatedScores record;
    record.coalition_key = "sim:" + std::to_string(r);
    for (int s = 0; s < summarizations; ++s) {
      SplitMix64 g(mix64(seed, 0x7473, r, static_cast<std::uint64_t>(s)));
      double mu = base_means[r] + sigma_sum * next_normal(g);
      std::vector<double> row(static_cast<std::size_t>(evaluations));
      for (auto& x : row) x = mu + sigma_eval * next_normal(g);
      record.scores.push_back(std::move(row));
    }
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace docval
