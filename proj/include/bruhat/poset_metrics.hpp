#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bruhat/bigint.hpp"
#include "bruhat/binary_matrix.hpp"
#include "bruhat/order.hpp"

namespace bruhat {

// Class-size cap for the enumerating operations unless long_running is set.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 5'000'000;

struct HistogramOptions {
  std::size_t shards = 0;  // 0: one shard per thread
  unsigned threads = 0;    // 0: all hardware threads
  std::uint64_t budget = kDefaultEnumerationBudget;
  bool long_running = false;
};

// |nu^{-1}(t)| over A(n,2).
struct HistogramReport {
  unsigned n = 0;
  Count total = 0;
  std::map<Count, Count> buckets;
  // Largest bucket; the smallest nu among ties.
  std::pair<Count, Count> max_bucket{0, 0};

  Count bucket(Count nu) const;
  std::vector<Count> argmax_all() const;
  // "nu,count" header, rows sorted by nu.
  std::string to_csv() const;
};

HistogramReport inversion_histogram(unsigned n, const HistogramOptions& opts = {});

// Lower bounds for w(n,2) reported in the published table (n = 3..9), and
// the n = 6 figure quoted separately in the surrounding text.
std::optional<Count> published_table1(unsigned n);
inline constexpr Count kPublishedTextN6 = 4108;

struct Table1Row {
  unsigned n = 0;
  Count computed = 0;
  Count argmax = 0;
  std::optional<Count> published;
  bool matches() const { return published && *published == computed; }
};

std::vector<Table1Row> reproduce_table1(unsigned first_n, unsigned last_n,
                                        const HistogramOptions& opts = {});

inline constexpr std::size_t kWidthCap = 5000;
inline constexpr std::size_t kHeightCap = 3000;
inline constexpr std::size_t kHeightLongRunningCap = 70000;

struct WidthResult {
  Count width = 0;
  std::vector<std::size_t> antichain;  // member indices, ascending
};

// Dilworth: width = N - maximum matching in the split graph of the strict
// order. The witness antichain comes from the Koenig vertex cover.
WidthResult exact_width(std::span<const BinaryMatrix> members, std::size_t cap = kWidthCap,
                        unsigned threads = 0);

struct HeightResult {
  Count height = 0;
  std::vector<std::size_t> chain;  // member indices, bottom to top
  // Comparable pairs met during the sweep whose inversion counts agree.
  Count equal_nu_comparable_pairs = 0;
};

// Longest chain, counted in elements.
HeightResult exact_height(std::span<const BinaryMatrix> members, std::size_t cap = kHeightCap);

enum class Family { An2, A2kk };

struct PosetSummary {
  Family family = Family::An2;
  unsigned parameter = 0;  // n for A(n,2), k for A(2k,k)
  BigInt class_size = 0;
  std::optional<Count> width;
  std::optional<Count> height;
  BigInt height_formula = 0;  // 2n(n-2)+eps, or k^4+1
  // class_size / height_formula, rounded both ways; the ceiling is the
  // integer bound.
  BigInt average_bound_floor = 0;
  BigInt average_bound_ceil = 0;
  BigInt formula_bound = 0;  // f(n) or g(k)
  std::optional<Count> max_nu_level;

  nlohmann::ordered_json to_json() const;
};

PosetSummary width_bounds_report(Family family, unsigned parameter,
                                 const std::optional<HistogramReport>& histogram = std::nullopt);

BigInt height_formula_an2(unsigned n);

struct ProblemWitness {
  BinaryMatrix first;
  BinaryMatrix second;
  Count nu = 0;
  OrderRelation relation = OrderRelation::Incomparable;
};

// Two members of A(R,S) with equal inversion counts that are comparable, or
// nothing if the class has none.
std::optional<ProblemWitness> nu_problem_search(const Margins& margins,
                                                std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace bruhat
