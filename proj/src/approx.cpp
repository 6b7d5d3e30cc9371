#include "docval/approx.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "docval/exact.hpp"
#include "docval/rng.hpp"

namespace docval {

namespace {

constexpr std::uint64_t kPermutationStream = 0x504d; // shared by mc and tmc
constexpr std::uint64_t kKernelStream = 0x4b53;
constexpr int kExhaustiveCap = 9;

std::vector<int> permutation_for(std::uint64_t seed, std::int64_t index, int n) {
  SplitMix64 g(mix64(seed, kPermutationStream, static_cast<std::uint64_t>(index)));
  return random_permutation(n, g);
}

// Walk one permutation, adding each member's marginal contribution into
// accum. With truncate set, a prefix score within tolerance of v_max zeroes
// out the rest of the ordering without touching the backend.
void walk_permutation(const ValuationGame& game, const std::vector<int>& perm,
                      std::vector<double>& accum, bool truncate, double tolerance) {
  Coalition prefix = game.empty_coalition();
  double current = game.v_empty();
  for (int member : perm) {
    if (truncate && (game.v_max() - current) < tolerance) break;
    prefix = prefix.with(member);
    double next = game.evaluate(prefix);
    accum[static_cast<std::size_t>(member)] += next - current;
    current = next;
  }
}

Attribution run_permutation_sampling(const ValuationGame& game, std::int64_t permutations,
                                     std::uint64_t seed, bool exhaustive, bool truncate,
                                     double tolerance) {
  int n = game.size();
  std::vector<double> accum(static_cast<std::size_t>(n), 0.0);
  std::int64_t total = 0;

  if (exhaustive) {
    if (n > kExhaustiveCap)
      raise(Errc::game_too_large, "exhaustive permutation averaging is capped at " + std::to_string(kExhaustiveCap) + " members");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      walk_permutation(game, perm, accum, truncate, tolerance);
      ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    if (permutations < 1) raise(Errc::invalid_argument, "need at least one permutation");
    for (std::int64_t k = 0; k < permutations; ++k)
      walk_permutation(game, permutation_for(seed, k, n), accum, truncate, tolerance);
    total = permutations;
  }

  Attribution out;
  out.method = truncate ? Method::tmc : Method::mc;
  out.doc_ids = game.members();
  out.values.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = accum[static_cast<std::size_t>(i)] / static_cast<double>(total);
  out.unique_subsets = game.unique_subsets();
  out.params["permutations"] = std::to_string(total);
  out.params["seed"] = std::to_string(seed);
  if (exhaustive) out.params["exhaustive"] = "1";
  if (truncate) out.params["tolerance"] = std::to_string(tolerance);
  return out;
}

}  // namespace

Attribution monte_carlo(const ValuationGame& game, const McConfig& config) {
  return run_permutation_sampling(game, config.permutations, config.seed, config.exhaustive,
                                  false, 0.0);
}

Attribution truncated_monte_carlo(const ValuationGame& game, const TmcConfig& config) {
  if (config.tolerance < 0) raise(Errc::invalid_argument, "tolerance must be nonnegative");
  return run_permutation_sampling(game, config.permutations, config.seed, config.exhaustive,
                                  true, config.tolerance);
}

namespace {

double kernel_weight(int n, int s) {
  return (n - 1) / (binomial(n, s) * s * (n - s));
}

// Solve (A + lambda I) x = b by Gaussian elimination with partial pivoting.
std::vector<double> solve_spd(std::vector<std::vector<double>> a, std::vector<double> b,
                              double lambda) {
  std::size_t m = b.size();
  for (std::size_t i = 0; i < m; ++i) a[i][i] += lambda;

  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-12)
      raise(Errc::singular_system, "regression system is singular; draw more coalition samples");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < m; ++r) {
      double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < m; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(m, 0.0);
  for (std::size_t i = m; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < m; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace

Attribution kernel_shap(const ValuationGame& game, const KernelShapConfig& config) {
  int n = game.size();
  if (config.samples < n) raise(Errc::invalid_argument, "kernel regression needs at least n samples");
  if (config.ridge_lambda < 0) raise(Errc::invalid_argument, "ridge_lambda must be nonnegative");

  double v_full = game.evaluate(game.full_coalition());
  double delta = v_full - game.v_empty();

  Attribution out;
  out.method = Method::kernelshap;
  out.doc_ids = game.members();
  out.params["samples"] = std::to_string(config.samples);
  out.params["seed"] = std::to_string(config.seed);
  out.params["ridge_lambda"] = std::to_string(config.ridge_lambda);

  if (n == 1) {
    out.values = {delta};
    out.unique_subsets = game.unique_subsets();
    return out;
  }

  std::uint64_t interior = (n >= 2 && n <= 62) ? (1ULL << n) - 2 : ~0ULL;
  bool enumerate = n <= 16 && static_cast<std::uint64_t>(config.samples) >= interior;

  // weight per distinct coalition mask; duplicates from sampling accumulate.
  std::map<std::uint64_t, double> rows;
  double total_mass = 0.0;
  for (int s = 1; s <= n - 1; ++s) total_mass += binomial(n, s) * kernel_weight(n, s);

  if (enumerate) {
    for (std::uint64_t mask = 1; mask < (1ULL << n) - 1; ++mask)
      rows[mask] = kernel_weight(n, std::popcount(mask)) / total_mass;
    out.params["enumerated"] = "1";
  } else {
    std::int64_t budget = config.samples;
    double enumerated_mass = 0.0;
    if (config.include_all_pairs_first) {
      // All singleton and all-but-one coalitions, in member order.
      for (int i = 0; i < n && budget > 0; ++i, --budget)
        rows[1ULL << i] += kernel_weight(n, 1) / total_mass;
      std::uint64_t full = (n == 64) ? ~0ULL : (1ULL << n) - 1;
      for (int i = 0; i < n && budget > 0; ++i, --budget)
        rows[full & ~(1ULL << i)] += kernel_weight(n, n - 1) / total_mass;
      enumerated_mass = 2.0 * n * kernel_weight(n, 1) / total_mass;
    }

    // Remaining draws sample interior sizes by kernel mass, uniform within a
    // size; each draw carries an equal share of the leftover mass.
    int lo = config.include_all_pairs_first ? 2 : 1;
    int hi = config.include_all_pairs_first ? n - 2 : n - 1;
    if (budget > 0 && lo <= hi) {
      std::vector<double> cumulative;
      double acc = 0.0;
      for (int s = lo; s <= hi; ++s) {
        acc += binomial(n, s) * kernel_weight(n, s);
        cumulative.push_back(acc);
      }
      double draw_mass = (1.0 - enumerated_mass) / static_cast<double>(budget);
      SplitMix64 g(mix64(config.seed, kKernelStream));
      std::vector<int> pool(static_cast<std::size_t>(n));
      for (std::int64_t d = 0; d < budget; ++d) {
        double u = next_u01(g) * acc;
        int s = lo;
        while (s < hi && u > cumulative[static_cast<std::size_t>(s - lo)]) ++s;
        std::iota(pool.begin(), pool.end(), 0);
        std::uint64_t mask = 0;
        for (int pick = 0; pick < s; ++pick) {
          std::size_t j = static_cast<std::size_t>(pick) + static_cast<std::size_t>(next_bounded(g, static_cast<std::uint64_t>(n - pick)));
          std::swap(pool[static_cast<std::size_t>(pick)], pool[j]);
          mask |= 1ULL << pool[static_cast<std::size_t>(pick)];
        }
        rows[mask] += draw_mass;
      }
    }
    out.params["mode"] = "sample";
  }

  // Regression with the efficiency constraint substituted out: the last
  // member's coefficient is delta minus the others, so rows are expressed in
  // differences against membership of n-1.
  int p = n - 1;
  std::vector<std::vector<double>> ata(static_cast<std::size_t>(p), std::vector<double>(static_cast<std::size_t>(p), 0.0));
  std::vector<double> atb(static_cast<std::size_t>(p), 0.0);
  std::vector<double> x(static_cast<std::size_t>(p), 0.0);
  for (const auto& [mask, weight] : rows) {
    Coalition c{mask, n};
    double y = game.evaluate(c) - game.v_empty();
    bool has_last = (mask >> (n - 1)) & 1ULL;
    if (has_last) y -= delta;
    for (int i = 0; i < p; ++i) x[static_cast<std::size_t>(i)] = ((mask >> i) & 1ULL ? 1.0 : 0.0) - (has_last ? 1.0 : 0.0);
    for (int i = 0; i < p; ++i) {
      if (x[static_cast<std::size_t>(i)] == 0.0) continue;
      double wx = weight * x[static_cast<std::size_t>(i)];
      for (int j = i; j < p; ++j) ata[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += wx * x[static_cast<std::size_t>(j)];
      atb[static_cast<std::size_t>(i)] += wx * y;
    }
  }
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < i; ++j) ata[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ata[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];

  // Full enumeration is an exactly determined regression; the ridge term only
  // stabilizes sampled systems and would bias the exact solution.
  double lambda = enumerate ? 0.0 : config.ridge_lambda;
  std::vector<double> beta = solve_spd(std::move(ata), std::move(atb), lambda);

  out.values.assign(static_cast<std::size_t>(n), 0.0);
  double used = 0.0;
  for (int i = 0; i < p; ++i) {
    out.values[static_cast<std::size_t>(i)] = beta[static_cast<std::size_t>(i)];
    used += beta[static_cast<std::size_t>(i)];
  }
  out.values[static_cast<std::size_t>(n - 1)] = delta - used;
  out.unique_subsets = game.unique_subsets();
  return out;
}

}  // namespace docval
