#include "docval/core.hpp"

#include "doctest.h"
#include "helpers.hpp"

using namespace docval;

TEST_CASE("coalition construction and membership") {
  Coalition c = Coalition::from_indices({0, 2, 5}, 6);
  CHECK(c.mask == 0b100101ULL);
  CHECK(c.cardinality() == 3);
  CHECK(c.contains(0));
  CHECK(!c.contains(1));
  CHECK(c.contains(5));
  CHECK(c.key() == "0,2,5");
  CHECK(c.indices() == std::vector<int>{0, 2, 5});

  Coalition plus = c.with(1);
  CHECK(plus.cardinality() == 4);
  CHECK(plus.contains(1));
  Coalition minus = plus.without(2);
  CHECK(!minus.contains(2));
  CHECK(minus.contains(0));

  CHECK(Coalition::empty(4).is_empty());
  CHECK(Coalition::empty(4).key() == "");
  CHECK(Coalition::full(4).mask == 0b1111ULL);
  CHECK(Coalition::full(4).cardinality() == 4);
}

TEST_CASE("coalition validation errors") {
  CHECK_RAISES(Errc::duplicate_member, Coalition::from_indices({1, 1}, 3));
  CHECK_RAISES(Errc::index_out_of_range, Coalition::from_indices({3}, 3));
  CHECK_RAISES(Errc::index_out_of_range, Coalition::from_indices({-1}, 3));
}

TEST_CASE("enumerate_all lists every coalition once, empty first") {
  auto all = enumerate_all(4);
  REQUIRE(all.size() == 16);
  CHECK(all.front().is_empty());
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].mask == i);
  CHECK_RAISES(Errc::game_too_large, enumerate_all(26));
}

TEST_CASE("method names round trip") {
  for (Method m : {Method::exact, Method::cluster, Method::cluster_mc, Method::mc, Method::tmc,
                   Method::kernelshap, Method::equal, Method::relevance}) {
    CHECK(method_from_name(method_name(m)) == m);
  }
  CHECK(std::string(method_name(Method::cluster_mc)) == "cluster-mc");
  CHECK_RAISES(Errc::invalid_argument, method_from_name("nope"));
}

TEST_CASE("attribution accessors") {
  Attribution a;
  a.doc_ids = {"d0", "d1"};
  a.values = {1.5, -0.5};
  CHECK(a.sum() == doctest::Approx(1.0));
  CHECK(a.value_or_zero("d1") == doctest::Approx(-0.5));
  CHECK(a.value_or_zero("absent") == 0.0);
  CHECK(a.has_member("d0"));
  CHECK(!a.has_member("absent"));
}

TEST_CASE("check_partition accepts exact covers and rejects the rest") {
  CHECK_NOTHROW(check_partition({{0, 1}, {2}}, 3));
  CHECK_RAISES(Errc::not_a_partition, check_partition({{0, 1}}, 3));
  CHECK_RAISES(Errc::not_a_partition, check_partition({{0, 1}, {1, 2}}, 3));
  CHECK_RAISES(Errc::not_a_partition, check_partition({{0, 1, 2}, {}}, 3));
  CHECK_RAISES(Errc::not_a_partition, check_partition({{0, 1, 3}}, 3));
}

TEST_CASE("cluster_of maps members to their cluster") {
  ClusterAssignment a;
  a.clusters = {{0, 2}, {1}};
  CHECK(a.cluster_count() == 2);
  CHECK(a.cluster_of(0) == 0);
  CHECK(a.cluster_of(1) == 1);
  CHECK(a.cluster_of(2) == 0);
}

TEST_CASE("distance matrix is symmetric storage") {
  DistanceMatrix m(3);
  m.set(0, 2, 0.25);
  CHECK(m.at(0, 2) == 0.25);
  CHECK(m.at(2, 0) == 0.25);
  CHECK(m.at(1, 1) == 0.0);
  CHECK(m.size() == 3);
}
