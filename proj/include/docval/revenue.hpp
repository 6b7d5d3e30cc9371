#pragma once

#include <map>

#include "docval/core.hpp"

namespace docval {

// One query's attribution together with its usage weight and, when revenue is
// split per query, the revenue it realized.
struct QueryRecord {
  std::string query_id;
  Attribution attribution;
  double weight = 1.0;
  double revenue = 0.0;
};

struct RevenueReport {
  std::string mode;
  double beta = 0.0;
  double subscription_revenue = 0.0;
  // Effective revenue credited per query (weight times realized revenue).
  std::map<std::string, double> per_query_revenue;
  std::map<std::string, double> payouts;
  // Documents whose payout came out negative; amounts are never clipped.
  std::vector<std::string> negative_docs;

  double total_payout() const;
  double total_query_revenue() const;
};

// Usage-weighted expectation of attribution across queries; a document absent
// from a query contributes zero there. Weights must be nonnegative with a
// positive sum.
std::map<std::string, double> expected_value(const std::vector<QueryRecord>& queries);

// Unbiased estimate of expected_value from k queries drawn with probability
// proportional to weight. Throws EmptySampler when nothing can be drawn.
std::map<std::string, double> sampled_expectation(const std::vector<QueryRecord>& queries,
                                                  int k, std::uint64_t seed);

// Splits beta * R proportionally to expected attribution. Throws
// NonpositiveTotalValue when the expected values sum to <= 0.
RevenueReport subscription_payout(const std::map<std::string, double>& expected, double revenue,
                                  double beta);

// Splits beta * r_q for a single query proportionally to its attribution.
RevenueReport query_payout(const QueryRecord& query, double beta);

// Subscription pool plus the expectation of per-query payouts: document i
// receives beta * (R * E_i / sum E + sum_q w_q * r_q * phi_i(q) / sum phi(q)).
RevenueReport combined_payout(const std::map<std::string, double>& expected, double revenue,
                              const std::vector<QueryRecord>& queries, double beta);

}  // namespace docval
