#include "docval/game.hpp"

#include <set>

namespace docval {

ValuationGame::ValuationGame(Query query, std::vector<std::string> members,
                             std::shared_ptr<ValueSource> source, double v_max, double v_empty)
    : query_(std::move(query)),
      members_(std::move(members)),
      source_(std::move(source)),
      v_max_(v_max),
      v_empty_(v_empty) {}

double ValuationGame::evaluate(const Coalition& c) const {
  std::vector<std::vector<int>> singletons;
  singletons.reserve(static_cast<std::size_t>(c.cardinality()));
  for (int i : c.indices()) singletons.push_back({i});
  return evaluate_grouped(c, singletons);
}

double ValuationGame::evaluate_grouped(const Coalition& c,
                                       const std::vector<std::vector<int>>& groups) const {
  if (c.n != size()) raise(Errc::member_mismatch, "coalition sized for " + std::to_string(c.n) + " members, game has " + std::to_string(size()));
  if (c.is_empty()) return v_empty_;

  std::promise<double> promise;
  std::shared_future<double> result;
  bool owner = false;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(c.mask);
    if (it == cache_.end()) {
      result = promise.get_future().share();
      cache_.emplace(c.mask, result);
      owner = true;
    } else {
      result = it->second;
    }
  }

  if (owner) {
    try {
      promise.set_value(source_->evaluate(CoalitionRequest{c, groups}));
    } catch (...) {
      // Drop the failed entry so a later call can retry, then propagate.
      promise.set_exception(std::current_exception());
      std::lock_guard<std::mutex> lock(mu_);
      cache_.erase(c.mask);
      throw;
    }
  }
  return result.get();
}

std::int64_t ValuationGame::unique_subsets() const {
  std::lock_guard<std::mutex> lock(mu_);
  return static_cast<std::int64_t>(cache_.size());
}

GamePtr make_game(Query query, std::vector<std::string> members,
                  std::shared_ptr<ValueSource> source, double v_max, double v_empty) {
  if (members.empty()) raise(Errc::empty_members, "a game needs at least one member document");
  if (members.size() > 64) raise(Errc::too_many_members, "games are capped at 64 members, got " + std::to_string(members.size()));
  std::set<std::string> unique(members.begin(), members.end());
  if (unique.size() != members.size()) raise(Errc::duplicate_member, "member document ids must be unique");
  if (!source) raise(Errc::invalid_argument, "game needs a value source");
  return std::make_shared<ValuationGame>(std::move(query), std::move(members), std::move(source), v_max, v_empty);
}

GamePtr fresh_copy(const ValuationGame& game) {
  return std::make_shared<ValuationGame>(game.query(), game.members(), game.source(),
                                         game.v_max(), game.v_empty());
}

}  // namespace docval
