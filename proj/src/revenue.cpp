#include "docval/revenue.hpp"

#include <cmath>

#include "docval/rng.hpp"

namespace docval {

namespace {

void check_beta(double beta) {
  if (beta < 0 || beta > 1) raise(Errc::invalid_argument, "beta must lie in [0,1]");
}

void flag_negatives(RevenueReport& report) {
  for (const auto& [doc, amount] : report.payouts)
    if (amount < 0) report.negative_docs.push_back(doc);
}

}  // namespace

double RevenueReport::total_payout() const {
  double s = 0.0;
  for (const auto& [doc, amount] : payouts) s += amount;
  return s;
}

double RevenueReport::total_query_revenue() const {
  double s = 0.0;
  for (const auto& [q, r] : per_query_revenue) s += r;
  return s;
}

std::map<std::string, double> expected_value(const std::vector<QueryRecord>& queries) {
  if (queries.empty()) raise(Errc::empty_input, "expected value needs at least one query");
  double weight_sum = 0.0;
  for (const auto& q : queries) {
    if (q.weight < 0) raise(Errc::invalid_argument, "query weight must be nonnegative");
    weight_sum += q.weight;
  }
  if (weight_sum <= 0) raise(Errc::zero_weight_sum, "query weights sum to zero");

  std::map<std::string, double> expected;
  for (const auto& q : queries)
    for (std::size_t i = 0; i < q.attribution.doc_ids.size(); ++i)
      expected[q.attribution.doc_ids[i]] += (q.weight / weight_sum) * q.attribution.values[i];
  // Documents never seen by any query do not appear; absent means zero.
  return expected;
}

std::map<std::string, double> sampled_expectation(const std::vector<QueryRecord>& queries,
                                                  int k, std::uint64_t seed) {
  if (queries.empty()) raise(Errc::empty_sampler, "no queries to sample");
  if (k < 1) raise(Errc::invalid_argument, "sample count must be at least 1");

  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& q : queries) {
    if (q.weight < 0) raise(Errc::invalid_argument, "query weight must be nonnegative");
    acc += q.weight;
    cumulative.push_back(acc);
  }
  if (acc <= 0) raise(Errc::empty_sampler, "query weights sum to zero");

  std::map<std::string, double> mean;
  SplitMix64 g(mix64(seed, 0x7265));
  for (int draw = 0; draw < k; ++draw) {
    double u = next_u01(g) * acc;
    std::size_t pick = 0;
    while (pick + 1 < cumulative.size() && u > cumulative[pick]) ++pick;
    const Attribution& a = queries[pick].attribution;
    for (std::size_t i = 0; i < a.doc_ids.size(); ++i)
      mean[a.doc_ids[i]] += a.values[i] / static_cast<double>(k);
  }
  return mean;
}

RevenueReport subscription_payout(const std::map<std::string, double>& expected, double revenue,
                                  double beta) {
  check_beta(beta);
  if (revenue < 0) raise(Errc::invalid_argument, "subscription revenue must be nonnegative");
  if (expected.empty()) raise(Errc::empty_input, "no expected values to pay against");

  double total = 0.0;
  for (const auto& [doc, e] : expected) total += e;
  if (total <= 0) raise(Errc::nonpositive_total_value, "expected attribution sums to " + std::to_string(total));

  RevenueReport report;
  report.mode = "subscription";
  report.beta = beta;
  report.subscription_revenue = revenue;
  for (const auto& [doc, e] : expected) report.payouts[doc] = beta * revenue * e / total;
  flag_negatives(report);
  return report;
}

RevenueReport query_payout(const QueryRecord& query, double beta) {
  check_beta(beta);
  if (query.revenue < 0) raise(Errc::invalid_argument, "query revenue must be nonnegative");

  double total = query.attribution.sum();
  if (total <= 0) raise(Errc::nonpositive_total_value, "attribution for query '" + query.query_id + "' sums to " + std::to_string(total));

  RevenueReport report;
  report.mode = "query";
  report.beta = beta;
  report.per_query_revenue[query.query_id] = query.revenue;
  for (std::size_t i = 0; i < query.attribution.doc_ids.size(); ++i)
    report.payouts[query.attribution.doc_ids[i]] =
        beta * query.revenue * query.attribution.values[i] / total;
  flag_negatives(report);
  return report;
}

RevenueReport combined_payout(const std::map<std::string, double>& expected, double revenue,
                              const std::vector<QueryRecord>& queries, double beta) {
  check_beta(beta);
  if (revenue < 0) raise(Errc::invalid_argument, "subscription revenue must be nonnegative");
  if (expected.empty()) raise(Errc::empty_input, "no expected values to pay against");

  double total_expected = 0.0;
  for (const auto& [doc, e] : expected) total_expected += e;
  if (total_expected <= 0)
    raise(Errc::nonpositive_total_value, "expected attribution sums to " + std::to_string(total_expected));

  RevenueReport report;
  report.mode = "combined";
  report.beta = beta;
  report.subscription_revenue = revenue;
  for (const auto& [doc, e] : expected) report.payouts[doc] = beta * revenue * e / total_expected;

  for (const auto& q : queries) {
    if (q.revenue < 0) raise(Errc::invalid_argument, "query revenue must be nonnegative");
    if (q.weight < 0) raise(Errc::invalid_argument, "query weight must be nonnegative");
    double total = q.attribution.sum();
    if (total <= 0) raise(Errc::nonpositive_total_value, "attribution for query '" + q.query_id + "' sums to " + std::to_string(total));
    double credited = q.weight * q.revenue;
    report.per_query_revenue[q.query_id] += credited;
    for (std::size_t i = 0; i < q.attribution.doc_ids.size(); ++i)
      report.payouts[q.attribution.doc_ids[i]] += beta * credited * q.attribution.values[i] / total;
  }
  flag_negatives(report);
  return report;
}

}  // namespace docval
