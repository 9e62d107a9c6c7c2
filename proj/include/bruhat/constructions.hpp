#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bruhat/bigint.hpp"
#include "bruhat/binary_matrix.hpp"
#include "bruhat/order.hpp"

namespace bruhat {

enum class Provenance { Even, Odd, Product, Complement, HalfRegular, RemarkImproved };

std::string_view to_string(Provenance p);

// Members plus what the builder claims about them. The claims are computed
// from closed forms, never from the members, so tests can hold one against
// the other.
struct ConstructedAntichain {
  std::vector<BinaryMatrix> members;
  Margins margins;
  BigInt predicted_size = 0;
  std::optional<Count> predicted_nu;
  Provenance provenance = Provenance::Even;

  nlohmann::ordered_json predictions_json() const;
};

// n even, n >= 2: the matrices [C | conjugate(C)] over all seeds C.
ConstructedAntichain even_antichain(unsigned n);

// n = 2k + 1 >= 3: A_C and A_C' (last column moved to the front) over all
// seeds C, A_C family first.
ConstructedAntichain odd_antichain(unsigned n);

// n!/2^{n/2} for even n, (n-1)!/2^{(n-3)/2} for odd n.
BigInt f_bound(unsigned n);
// (k!)^4/4^k for even k, [(k-1)!]^4/4^{k-3} for odd k.
BigInt g_bound(unsigned k);

std::vector<BinaryMatrix> complement_antichain(std::span<const BinaryMatrix> members);

// An antichain factor of the product: its members and their common class.
struct AntichainFactor {
  std::vector<BinaryMatrix> members;
  Margins margins;

  static AntichainFactor of(const ConstructedAntichain& d) { return {d.members, d.margins}; }
  // Margins are read off the members; throws ClassMismatch if they disagree.
  static AntichainFactor from_members(std::vector<BinaryMatrix> members);
};

struct ProductOptions {
  // Accept u' == u'' when the pattern antichain has a single member, where
  // only the same-pattern argument is needed.
  bool allow_degenerate_case1 = false;
};

// Lazy view of the product antichain. Members are indexed in mixed radix:
// pattern index most significant, then one block choice per pattern cell in
// row-major order (the first cell most significant). A cell with p_ij = 1
// draws from the second factor, otherwise from the third.
class ProductStream {
 public:
  struct Index {
    std::size_t pattern = 0;
    std::vector<std::size_t> choices;  // one per cell, row-major
    friend bool operator==(const Index&, const Index&) = default;
  };

  ProductStream(AntichainFactor patterns, AntichainFactor ones, AntichainFactor zeros,
                ProductOptions opts = {});

  const BigInt& size() const noexcept { return size_; }
  // R1 (x) R2 + (b - R1) (x) R3 and S1 (x) S2 + (a - S1) (x) S3.
  const Margins& margins() const noexcept { return margins_; }

  std::uint64_t u() const noexcept { return u_; }
  std::uint64_t u_ones() const noexcept { return u_ones_; }
  std::uint64_t u_zeros() const noexcept { return u_zeros_; }
  std::size_t pattern_rows() const noexcept { return a_; }
  std::size_t pattern_cols() const noexcept { return b_; }
  std::size_t block_rows() const noexcept { return m_; }
  std::size_t block_cols() const noexcept { return n_; }

  const AntichainFactor& patterns() const noexcept { return d1_; }
  const AntichainFactor& ones_factor() const noexcept { return d2_; }
  const AntichainFactor& zeros_factor() const noexcept { return d3_; }

  Index index_of(const BigInt& rank) const;
  BigInt rank_of(const Index& idx) const;
  const BinaryMatrix& block(const Index& idx, std::size_t i, std::size_t j) const;
  BinaryMatrix member(const Index& idx) const;
  BinaryMatrix member(const BigInt& rank) const { return member(index_of(rank)); }
  Index random_index(std::mt19937_64& rng) const;

  // Visits members in rank order without materializing the whole set.
  void for_each(const std::function<void(const BinaryMatrix&)>& visit) const;

 private:
  std::size_t radix(std::size_t pattern, std::size_t cell) const;

  AntichainFactor d1_;
  AntichainFactor d2_;
  AntichainFactor d3_;
  std::size_t a_ = 0, b_ = 0, m_ = 0, n_ = 0;
  std::uint64_t u_ = 0, u_ones_ = 0, u_zeros_ = 0;
  BigInt per_pattern_ = 0;
  BigInt size_ = 0;
  Margins margins_;
};

// Largest predicted size that the materializing builders accept.
inline constexpr std::uint64_t kMaterializeCap = 2'000'000;

// Materialized product; throws BudgetExceeded above kMaterializeCap and
// HypothesisViolation when u' == u'' (unless relaxed, see ProductOptions).
ConstructedAntichain product_antichain(const AntichainFactor& patterns, const AntichainFactor& ones,
                                       const AntichainFactor& zeros, ProductOptions opts = {});
ConstructedAntichain materialize(const ProductStream& stream, Provenance provenance);

// Pattern {I2}, blocks from even_antichain(k) or odd_antichain(k), zero
// cells from their complements. Lies in A(2k, k); size g(k).
ProductStream half_regular_stream(unsigned k);
ConstructedAntichain half_regular_antichain(unsigned k);

// The 13-member level nu = 8 of A(4,2).
std::vector<BinaryMatrix> a42_level8();

// k = 0 mod 4: pattern level nu = 8 of A(4,2), blocks from even_antichain(k/2)
// and their complements. Size 13 [(k/2)!]^16 / 16^k.
ProductStream remark_improved_stream(unsigned k);
ConstructedAntichain remark_improved_antichain(unsigned k);
BigInt remark_bound(unsigned k);

// Verifies randomly drawn pairs of stream members; witness indices are ranks.
AntichainCertificate sample_verify(const ProductStream& stream, Count pairs, std::uint64_t seed);

// psi_kl = u'' k l + (u' - u'') sigma_kl(P) at every block corner of X.
bool case1_corner_identity(const ProductStream& stream, const ProductStream::Index& x);

// For two members over one pattern, the difference of global partial sums
// at position (block (i, j), local (k, l)) equals the difference of the
// block-local partial sums. All indices 0-based.
bool case2_difference_identity(const ProductStream& stream, const ProductStream::Index& x,
                               const ProductStream::Index& y, std::size_t i, std::size_t j,
                               std::size_t k, std::size_t l);

}  // namespace bruhat
