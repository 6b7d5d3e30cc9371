#pragma once

#include <future>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "docval/core.hpp"

namespace docval {

// How a coalition is presented to the backend. `groups` partitions the
// coalition into presentation units: one unit per document normally, one unit
// per cluster (members concatenated) when a cluster method drives a live
// pipeline. Backends whose score depends only on the union ignore the grouping.
struct CoalitionRequest {
  Coalition coalition;
  std::vector<std::vector<int>> groups;
};

class ValueSource {
 public:
  virtual ~ValueSource() = default;

  // Score a nonempty coalition. Called at most once per distinct coalition of
  // a given game; the game layer handles caching and the empty set.
  virtual double evaluate(const CoalitionRequest& request) = 0;
};

// A query's valuation game: the ranked member documents plus a score backend.
// evaluate() memoizes by coalition, so the number of distinct nonempty
// coalitions sent to the backend is exactly unique_subsets(). Concurrent
// callers are safe: a coalition's backend call happens at most once, with
// racers blocking on the winner's result.
class ValuationGame {
 public:
  ValuationGame(Query query, std::vector<std::string> members,
                std::shared_ptr<ValueSource> source, double v_max, double v_empty);

  ValuationGame(const ValuationGame&) = delete;
  ValuationGame& operator=(const ValuationGame&) = delete;

  const Query& query() const { return query_; }
  const std::vector<std::string>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  double v_max() const { return v_max_; }
  double v_empty() const { return v_empty_; }
  const std::shared_ptr<ValueSource>& source() const { return source_; }

  Coalition empty_coalition() const { return Coalition::empty(size()); }
  Coalition full_coalition() const { return Coalition::full(size()); }

  double evaluate(const Coalition& c) const;
  double evaluate_grouped(const Coalition& c, const std::vector<std::vector<int>>& groups) const;

  // Distinct nonempty coalitions evaluated so far.
  std::int64_t unique_subsets() const;

 private:
  Query query_;
  std::vector<std::string> members_;
  std::shared_ptr<ValueSource> source_;
  double v_max_;
  double v_empty_;

  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, std::shared_future<double>> cache_;
};

using GamePtr = std::shared_ptr<ValuationGame>;

// Validates members (nonempty, unique, at most 64) and builds the game.
GamePtr make_game(Query query, std::vector<std::string> members,
                  std::shared_ptr<ValueSource> source, double v_max = 10.0,
                  double v_empty = 0.0);

// Fresh game over the same query, members and backend, with an empty cache.
// Method runs use this so unique-subset accounting starts from zero.
GamePtr fresh_copy(const ValuationGame& game);

}  // namespace docval
