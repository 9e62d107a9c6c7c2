#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bruhat/bigint.hpp"

namespace bruhat {

// Dense m x n (0,1)-matrix, row-major, each row packed into 64-bit words.
// Column j of a row lives at bit (j % 64) of word (j / 64). Indices are
// 0-based; messages report them 1-based.
class BinaryMatrix {
 public:
  using Word = std::uint64_t;

  BinaryMatrix(std::size_t rows, std::size_t cols);

  // Each string is one row over {0,1}.
  static BinaryMatrix from_rows(std::span<const std::string> rows);
  static BinaryMatrix from_rows(std::initializer_list<std::string_view> rows);

  static BinaryMatrix identity(std::size_t n);
  static BinaryMatrix ones(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return stride_; }

  bool get(std::size_t i, std::size_t j) const noexcept {
    return (bits_[i * stride_ + (j >> 6U)] >> (j & 63U)) & 1U;
  }
  void set(std::size_t i, std::size_t j, bool v) noexcept {
    Word& w = bits_[i * stride_ + (j >> 6U)];
    const Word mask = Word{1} << (j & 63U);
    w = v ? (w | mask) : (w & ~mask);
  }

  std::span<const Word> row_words(std::size_t i) const noexcept {
    return {bits_.data() + i * stride_, stride_};
  }
  // Overwrites row i with the given words; bits at or beyond cols() must be 0.
  void set_row_words(std::size_t i, std::span<const Word> words) noexcept;

  std::size_t row_sum(std::size_t i) const noexcept;
  std::size_t col_sum(std::size_t j) const noexcept;
  std::size_t ones_count() const noexcept;

  std::string row_string(std::size_t i) const;

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;
  // Dimensions first, then packed words; a total order for sorting and maps.
  friend std::strong_ordering operator<=>(const BinaryMatrix& a, const BinaryMatrix& b);

  std::size_t hash() const noexcept;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> bits_;
};

// Row and column sum vectors naming the class A(R,S).
struct Margins {
  std::vector<std::uint32_t> row_sums;
  std::vector<std::uint32_t> col_sums;

  static Margins regular(std::size_t n, std::uint32_t k);
  static Margins uniform(std::size_t m, std::uint32_t r, std::size_t n, std::uint32_t s);

  std::uint64_t row_total() const noexcept;
  std::uint64_t col_total() const noexcept;

  friend bool operator==(const Margins&, const Margins&) = default;
};

std::string to_string(const Margins& m);

// Top-left partial sums of a matrix; at(i, j) is the sum over rows 0..i and
// columns 0..j (the 1-based sigma_{i+1, j+1}).
class SigmaTable {
 public:
  SigmaTable(std::size_t rows, std::size_t cols, std::vector<std::uint32_t> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint32_t at(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }
  // Sum over the first i rows and first j columns; zero when i or j is 0.
  std::uint32_t prefix(std::size_t i, std::size_t j) const noexcept {
    return (i == 0 || j == 0) ? 0U : at(i - 1, j - 1);
  }
  std::uint32_t total() const noexcept { return values_.back(); }
  std::span<const std::uint32_t> values() const noexcept { return values_; }

  friend bool operator==(const SigmaTable&, const SigmaTable&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> values_;
};

Margins margins_of(const BinaryMatrix& a);

SigmaTable sigma_table(const BinaryMatrix& a);

// Number of unordered pairs of 1-entries with one strictly top-right of the
// other. One sweep over rows with running per-column counts: O(rows * cols).
Count inversions(const BinaryMatrix& a);

// Column-reversed copy.
BinaryMatrix conjugate(const BinaryMatrix& a);

// J - A.
BinaryMatrix complement(const BinaryMatrix& a);

struct ConjugateIdentity {
  BigInt lhs;  // nu(A) + nu(conjugate(A))
  BigInt rhs;  // C(total, 2) - sum C(r_i, 2) - sum C(s_j, 2)
  bool holds() const { return lhs == rhs; }
};

// Closed form for nu(A) + nu(conjugate(A)) in terms of the margins only.
BigInt conjugate_pair_inversions(const Margins& m);

ConjugateIdentity nu_conjugate_identity(const BinaryMatrix& a);

// Selects the block for cell (i, j) of the pattern matrix.
using BlockSelector = std::function<const BinaryMatrix&(std::size_t i, std::size_t j)>;

// Block matrix over pattern P: block (i, j) is pick_one(i, j) where p_ij = 1
// and pick_zero(i, j) where p_ij = 0. All blocks must share one shape.
BinaryMatrix block_compose(const BinaryMatrix& pattern, const BlockSelector& pick_one,
                           const BlockSelector& pick_zero);

}  // namespace bruhat

template <>
struct std::hash<bruhat::BinaryMatrix> {
  std::size_t operator()(const bruhat::BinaryMatrix& a) const noexcept { return a.hash(); }
};
