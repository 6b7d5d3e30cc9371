// Shared fixtures for the unit and acceptance suites.
#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "docval/cluster.hpp"
#include "docval/game.hpp"
#include "docval/rng.hpp"
#include "docval/valuefn.hpp"

namespace testutil {

// Absolute-tolerance comparison; doctest's Approx is relative-only.
inline bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    worst = std::max(worst, std::fabs(a[i] - b[i]));
  }
  return worst;
}

inline std::vector<std::string> ids(int n) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back("d" + std::to_string(i));
  return out;
}

// Game backed by a dense mask-indexed table; values[0] is the empty value.
inline docval::GamePtr table_game(const std::vector<double>& values, int n, double v_max = 10.0) {
  std::map<std::string, double> scores;
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    scores[docval::Coalition{mask, n}.key()] = values[mask];
  }
  auto source = std::make_shared<docval::TableSource>(std::move(scores));
  return docval::make_game(docval::Query{"q", "query", 1.0}, ids(n), source, v_max, values[0]);
}

// Arbitrary random table: empty value 0, nonempty values uniform in [0, 10).
inline std::vector<double> random_table(int n, std::uint64_t seed) {
  docval::SplitMix64 g(docval::mix64(seed, 0x7462));
  std::vector<double> values(1ULL << n, 0.0);
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    values[mask] = 10.0 * docval::next_u01(g);
  }
  return values;
}

// Monotone nondecreasing table: v(S) = 10 * (sum of member weights / total)^p.
inline std::vector<double> monotone_table(int n, std::uint64_t seed) {
  docval::SplitMix64 g(docval::mix64(seed, 0x6d74));
  std::vector<double> w(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& x : w) {
    x = 0.1 + docval::next_u01(g);
    total += x;
  }
  double p = 0.5 + docval::next_u01(g);
  std::vector<double> values(1ULL << n, 0.0);
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) s += w[static_cast<std::size_t>(i)];
    }
    values[mask] = 10.0 * std::pow(s / total, p);
  }
  return values;
}

// Additive table from per-member values.
inline std::vector<double> additive_table(const std::vector<double>& member_values) {
  int n = static_cast<int>(member_values.size());
  std::vector<double> values(1ULL << n, 0.0);
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) s += member_values[static_cast<std::size_t>(i)];
    }
    values[mask] = s;
  }
  return values;
}

// Unit embeddings whose pairwise cosine distances are exactly |t_i - t_j|,
// for parameters t in (0, 1). The Gram matrix 1 - |t_i - t_j| is the sum of
// two Brownian-motion kernels (min(t_i, t_j) and min(1-t_i, 1-t_j)), so it is
// positive definite for distinct interior points and a Cholesky factor gives
// the embedding rows.
inline std::vector<docval::EmbeddingVector> line_metric_embeddings(const std::vector<double>& ts) {
  int n = static_cast<int>(ts.size());
  std::vector<std::vector<double>> g(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          1.0 - std::fabs(ts[static_cast<std::size_t>(i)] - ts[static_cast<std::size_t>(j)]);
    }
  }
  std::vector<std::vector<double>> l(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (int k = 0; k < j; ++k) {
        s -= l[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
             l[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      }
      if (i == j) {
        l[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::sqrt(s);
      } else {
        l[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            s / l[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
      }
    }
  }
  std::vector<docval::EmbeddingVector> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.push_back({"d" + std::to_string(i), l[static_cast<std::size_t>(i)]});
  }
  return out;
}

// Wraps a backend and counts evaluate calls, for cache accounting tests.
class CountingSource : public docval::ValueSource {
 public:
  explicit CountingSource(std::shared_ptr<docval::ValueSource> inner) : inner_(std::move(inner)) {}

  double evaluate(const docval::CoalitionRequest& request) override {
    ++calls_;
    return inner_->evaluate(request);
  }

  int calls() const { return calls_.load(); }

 private:
  std::shared_ptr<docval::ValueSource> inner_;
  std::atomic<int> calls_{0};
};

}  // namespace testutil

// Asserts that `expr` throws docval::Error with the given code.
#define CHECK_RAISES(code_, expr)                                   \
  do {                                                              \
    bool raised_ = false;                                           \
    try {                                                           \
      (void)(expr);                                                 \
    } catch (const docval::Error& e_) {                             \
      raised_ = true;                                               \
      CHECK(e_.code() == (code_));                                  \
    }                                                               \
    CHECK_MESSAGE(raised_, "expected an error from " #expr);        \
  } while (0)
