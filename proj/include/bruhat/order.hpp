#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bruhat/bigint.hpp"
#include "bruhat/binary_matrix.hpp"

namespace bruhat {

// Result of comparing A against C. Less means A precedes C: every partial
// sum of A is at least the matching partial sum of C, and A != C.
enum class OrderRelation { Less, Greater, Equal, Incomparable };

std::string_view to_string(OrderRelation r);

// Fused two-direction domination test over precomputed tables. No class
// check; both tables must have the same shape.
OrderRelation compare_sigma(const SigmaTable& a, const SigmaTable& c) noexcept;

// Throws ClassMismatch unless a and c have equal shape and margins.
void require_same_class(const BinaryMatrix& a, const BinaryMatrix& c);

OrderRelation bruhat_compare(const BinaryMatrix& a, const BinaryMatrix& c);

// Every matrix reachable from a by one I2 -> L2 interchange, in order of
// (upper row, lower row, left column, right column).
std::vector<BinaryMatrix> interchange_successors(const BinaryMatrix& a);

struct SecondaryOptions {
  std::size_t node_cap = 10'000'000;
};

// True iff c is reachable from a through I2 -> L2 interchanges. Breadth-first
// closure pruned by inversion count and by Bruhat domination of c.
bool secondary_leq(const BinaryMatrix& a, const BinaryMatrix& c, const SecondaryOptions& opts = {});

struct AntichainCertificate {
  enum class Status { Verified, Refuted, Sampled };

  BigInt member_count = 0;
  Count checked_pairs = 0;
  Status status = Status::Verified;
  // Member indices of a comparable (or equal) pair, smaller index first.
  std::optional<std::array<BigInt, 2>> witness;
  std::optional<OrderRelation> witness_relation;
  std::optional<std::uint64_t> seed;

  bool refuted() const { return status == Status::Refuted; }
  nlohmann::ordered_json to_json() const;
};

std::string_view to_string(AntichainCertificate::Status s);

struct VerifyOptions {
  enum class Mode { Exhaustive, Sampled };
  Mode mode = Mode::Exhaustive;
  Count sample_pairs = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  static VerifyOptions exhaustive(unsigned threads = 0) { return {Mode::Exhaustive, 0, 0, threads}; }
  static VerifyOptions sampled(Count pairs, std::uint64_t seed = 0) {
    return {Mode::Sampled, pairs, seed, 1};
  }
};

// Exhaustive mode checks every unordered pair and reports the
// lexicographically smallest comparable pair, whatever the thread count.
// Sampled mode draws pairs from a seeded generator.
AntichainCertificate verify_antichain(std::span<const BinaryMatrix> members,
                                      const VerifyOptions& opts = {});

}  // namespace bruhat
