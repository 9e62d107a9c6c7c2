#include "doctest.h"

#include <algorithm>
#include <functional>
#include <map>

#include "bruhat/class_enum.hpp"
#include "bruhat/constructions.hpp"
#include "bruhat/errors.hpp"
#include "bruhat/poset_metrics.hpp"
#include "oracles.hpp"

using namespace bruhat;

namespace {

// Longest chain by memoized recursion over the direct-summation order.
Count oracle_height(const std::vector<BinaryMatrix>& members) {
  const std::size_t n = members.size();
  std::vector<std::vector<std::size_t>> up(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && oracle::bruhat_leq_direct(members[i], members[j])) up[i].push_back(j);
  std::vector<Count> memo(n, 0);
  std::function<Count(std::size_t)> longest = [&](std::size_t i) -> Count {
    if (memo[i]) return memo[i];
    Count best = 1;
    for (std::size_t j : up[i]) best = std::max(best, longest(j) + 1);
    return memo[i] = best;
  };
  Count h = 0;
  for (std::size_t i = 0; i < n; ++i) h = std::max(h, longest(i));
  return h;
}

// Largest antichain by trying every subset (tiny classes only).
Count oracle_width(const std::vector<BinaryMatrix>& members) {
  const std::size_t n = members.size();
  Count best = 0;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < n; ++i)
      for (std::size_t j = i + 1; ok && j < n; ++j)
        if ((mask >> i & 1U) && (mask >> j & 1U) &&
            (oracle::bruhat_leq_direct(members[i], members[j]) ||
             oracle::bruhat_leq_direct(members[j], members[i])))
          ok = false;
    if (ok) best = std::max<Count>(best, static_cast<Count>(__builtin_popcount(mask)));
  }
  return best;
}

void check_chain(const std::vector<BinaryMatrix>& members, const HeightResult& h) {
  REQUIRE(h.chain.size() == h.height);
  for (std::size_t t = 1; t < h.chain.size(); ++t)
    REQUIRE(bruhat_compare(members[h.chain[t - 1]], members[h.chain[t]]) == OrderRelation::Less);
}

std::vector<BinaryMatrix> pick(const std::vector<BinaryMatrix>& all, const std::vector<std::size_t>& idx) {
  std::vector<BinaryMatrix> out;
  for (std::size_t i : idx) out.push_back(all[i]);
  return out;
}

}  // namespace

TEST_CASE("inversion_histogram examples") {
  const auto h3 = inversion_histogram(3);
  CHECK(h3.total == 6);
  CHECK(h3.bucket(3) == 2);
  CHECK(h3.bucket(6) == 2);
  CHECK(h3.max_bucket.second == 2);

  const auto h4 = inversion_histogram(4);
  CHECK(h4.total == 90);
  CHECK(h4.max_bucket == std::pair<Count, Count>{8, 13});
  CHECK(h4.argmax_all() == std::vector<Count>{8, 12});
  CHECK(h4.bucket(99) == 0);
  CHECK(h4.to_csv().rfind("nu,count\n", 0) == 0);

  CHECK_THROWS_AS(inversion_histogram(1), RangeError);
}

TEST_CASE("inversion_histogram matches a direct tally") {
  for (unsigned n : {4U, 5U}) {
    std::map<Count, Count> tally;
    for (const auto& a : collect_class(Margins::regular(n, 2))) ++tally[oracle::inversions_pair_scan(a)];
    CHECK(inversion_histogram(n).buckets == tally);
  }
}

TEST_CASE("histogram is symmetric under conjugation") {
  for (unsigned n = 3; n <= 6; ++n) {
    const auto h = inversion_histogram(n);
    const Count top = 2 * n * (2 * n - 1) / 2 - 2 * n;
    for (const auto& [nu, count] : h.buckets) REQUIRE(h.bucket(top - nu) == count);
  }
}

TEST_CASE("histogram is independent of sharding") {
  const std::string base = inversion_histogram(5, HistogramOptions{1, 1}).to_csv();
  for (std::size_t shards : {2U, 3U, 7U, 16U, 64U})
    for (unsigned threads : {1U, 3U}) CHECK(inversion_histogram(5, HistogramOptions{shards, threads}).to_csv() == base);
}

TEST_CASE("histogram budget") {
  HistogramOptions tight;
  tight.budget = 100;
  CHECK_THROWS_AS(inversion_histogram(5, tight), BudgetExceeded);
  tight.long_running = true;
  CHECK(inversion_histogram(5, tight).total == 2040);
}

TEST_CASE("published table values") {
  CHECK(published_table1(3) == 2U);
  CHECK(published_table1(6) == 4086U);
  CHECK(published_table1(9) == 450066504U);
  CHECK_FALSE(published_table1(10));
  const auto rows = reproduce_table1(3, 5);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK(r.matches());
  CHECK(rows[1].argmax == 8);
}

TEST_CASE("exact_width") {
  const auto a32 = collect_class(Margins::regular(3, 2));
  const auto w32 = exact_width(a32);
  CHECK(w32.width == 2);
  CHECK(w32.width == oracle_width(a32));

  const auto a42 = collect_class(Margins::regular(4, 2));
  const auto w42 = exact_width(a42);
  CHECK(w42.width == 13);
  CHECK(w42.antichain.size() == 13);
  CHECK(std::is_sorted(w42.antichain.begin(), w42.antichain.end()));
  CHECK_FALSE(verify_antichain(pick(a42, w42.antichain)).refuted());

  const std::vector<BinaryMatrix> single{BinaryMatrix::ones(3, 3)};
  CHECK(exact_width(single).width == 1);

  const auto mixed = collect_class(Margins{{2, 1, 1, 0}, {1, 2, 1}});
  CHECK(exact_width(mixed).width == oracle_width(mixed));
  CHECK(exact_width(a42, 1000, 1).antichain == w42.antichain);
  CHECK_THROWS_AS(exact_width(a42, 50), BudgetExceeded);
}

TEST_CASE("exact_height") {
  const auto a21 = collect_class(Margins::regular(2, 1));
  const auto h21 = exact_height(a21);
  CHECK(h21.height == 2);
  CHECK(h21.chain == std::vector<std::size_t>{0, 1});

  const auto a42 = collect_class(Margins::regular(4, 2));
  const auto h42 = exact_height(a42);
  CHECK(h42.height == 17);
  CHECK(h42.height == height_formula_an2(4));
  CHECK(h42.height == oracle_height(a42));
  CHECK(h42.equal_nu_comparable_pairs == 0);
  check_chain(a42, h42);

  const auto mixed = collect_class(Margins{{2, 2, 1}, {1, 2, 1, 1}});
  const auto hm = exact_height(mixed);
  CHECK(hm.height == oracle_height(mixed));
  check_chain(mixed, hm);
  CHECK_THROWS_AS(exact_height(a42, 10), BudgetExceeded);
}

TEST_CASE("height_formula_an2") {
  CHECK(height_formula_an2(4) == 17);
  CHECK(height_formula_an2(5) == 30);
  CHECK(height_formula_an2(6) == 49);
}

TEST_CASE("width_bounds_report") {
  const auto h6 = inversion_histogram(6);
  const auto s6 = width_bounds_report(Family::An2, 6, h6);
  CHECK(s6.class_size == 67950);
  CHECK(s6.height_formula == 49);
  CHECK(s6.average_bound_floor == 1386);
  CHECK(s6.average_bound_ceil == 1387);
  CHECK(s6.formula_bound == 90);
  CHECK(s6.max_nu_level == h6.max_bucket.second);
  const auto j = s6.to_json();
  CHECK(j["width_lower_bounds"]["f"] == "90");
  CHECK(j["width_lower_bounds"]["average_bound_exact_division"] == false);

  const auto s4 = width_bounds_report(Family::An2, 4);
  CHECK(s4.formula_bound == 6);
  CHECK(s4.formula_bound <= 13);
  CHECK_FALSE(s4.max_nu_level);

  const auto k3 = width_bounds_report(Family::A2kk, 3);
  CHECK(k3.formula_bound == 16);
  CHECK(k3.height_formula == 82);
  CHECK(k3.class_size == 297200);
  CHECK(width_bounds_report(Family::A2kk, 4).formula_bound == 1296);
}

TEST_CASE("nu_problem_search") {
  for (unsigned n = 2; n <= 5; ++n) CHECK_FALSE(nu_problem_search(Margins::regular(n, 2)));
  CHECK_FALSE(nu_problem_search(Margins::regular(2, 1)));
  const auto w = nu_problem_search(Margins{{1, 1, 2}, {2, 1, 1}});
  if (w) {
    CHECK(inversions(w->first) == inversions(w->second));
    CHECK(bruhat_compare(w->first, w->second) == w->relation);
  }
  CHECK_THROWS_AS(nu_problem_search(Margins::regular(7, 2), 1000), BudgetExceeded);
}
