#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "bruhat/bigint.hpp"
#include "bruhat/binary_matrix.hpp"

namespace bruhat {

// Shard `index` of `count` holds the members whose first row is the p-th
// admissible first-row pattern (lexicographic) with p % count == index.
struct Shard {
  std::size_t index = 0;
  std::size_t count = 1;
};

struct EnumerationPlan {
  Margins margins;
  std::optional<Shard> shard;
};

using MatrixVisitor = std::function<void(const BinaryMatrix&)>;

// Gale-Ryser: A(R,S) is nonempty.
bool feasible(const Margins& margins);

// Visits every member of A(R,S) (or of the plan's shard) exactly once in
// row-lexicographic order: rows are filled top to bottom and each row's
// column set runs through its admissible subsets in lexicographic order.
// Returns the number visited. Throws InfeasibleMargins.
BigInt enumerate_class(const EnumerationPlan& plan, const MatrixVisitor& visit);
BigInt enumerate_class(const Margins& margins, const MatrixVisitor& visit);

std::vector<BinaryMatrix> collect_class(const Margins& margins);

// |A(R,S)| without materializing members; 0 when infeasible.
BigInt count_class(const Margins& margins);

// 2k x k matrices with unit row sums and column sums 2.
Margins seed_margins(unsigned k);
BigInt enumerate_seed_matrices(unsigned k, const MatrixVisitor& visit);

// Runs body(shard_index, plan) for each of `shards` shards, spread over
// `threads` workers (0 = all hardware threads).
void for_each_shard(const Margins& margins, std::size_t shards, unsigned threads,
                    const std::function<void(std::size_t, const EnumerationPlan&)>& body);

// Largest k*n accepted by oneil_estimate.
inline constexpr unsigned kOneilMaxKn = 20000;

// (kn)! / (k!)^{2n} * exp(-(k-1)^2 / 2), evaluated in 50-digit binary
// floating point. Throws RangeError when k*n exceeds kOneilMaxKn or the
// value does not fit in a double.
double oneil_estimate(unsigned n, unsigned k);

}  // namespace bruhat
