#include "bruhat/binary_matrix.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "bruhat/errors.hpp"

namespace bruhat {

namespace {

std::size_t words_for(std::size_t cols) { return (cols + 63) / 64; }

std::string shape(std::size_t m, std::size_t n) {
  return std::to_string(m) + "x" + std::to_string(n);
}

template <typename Rows>
BinaryMatrix parse_rows(const Rows& rows) {
  if (rows.size() == 0) throw DimensionMismatch("matrix needs at least one row");
  const std::size_t cols = std::string_view(*rows.begin()).size();
  BinaryMatrix out(rows.size(), cols);
  std::size_t i = 0;
  for (const auto& r : rows) {
    const std::string_view row(r);
    if (row.size() != cols) {
      throw DimensionMismatch("row " + std::to_string(i + 1) + " has length " +
                              std::to_string(row.size()) + ", expected " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (row[j] == '1') {
        out.set(i, j, true);
      } else if (row[j] != '0') {
        throw ParseError("row " + std::to_string(i + 1) + ", column " + std::to_string(j + 1) +
                         ": expected 0 or 1");
      }
    }
    ++i;
  }
  return out;
}

}  // namespace

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), bits_(rows * words_for(cols), 0) {
  if (rows == 0 || cols == 0) {
    throw DimensionMismatch("matrix dimensions must be positive, got " + shape(rows, cols));
  }
}

BinaryMatrix BinaryMatrix::from_rows(std::span<const std::string> rows) { return parse_rows(rows); }

BinaryMatrix BinaryMatrix::from_rows(std::initializer_list<std::string_view> rows) {
  return parse_rows(rows);
}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
  BinaryMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out.set(i, i, true);
  return out;
}

BinaryMatrix BinaryMatrix::ones(std::size_t rows, std::size_t cols) {
  BinaryMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.set(i, j, true);
  return out;
}

void BinaryMatrix::set_row_words(std::size_t i, std::span<const Word> words) noexcept {
  std::copy_n(words.begin(), stride_, bits_.begin() + static_cast<std::ptrdiff_t>(i * stride_));
}

std::size_t BinaryMatrix::row_sum(std::size_t i) const noexcept {
  std::size_t s = 0;
  for (Word w : row_words(i)) s += static_cast<std::size_t>(std::popcount(w));
  return s;
}

std::size_t BinaryMatrix::col_sum(std::size_t j) const noexcept {
  std::size_t s = 0;
  for (std::size_t i = 0; i < rows_; ++i) s += get(i, j) ? 1 : 0;
  return s;
}

std::size_t BinaryMatrix::ones_count() const noexcept {
  std::size_t s = 0;
  for (Word w : bits_) s += static_cast<std::size_t>(std::popcount(w));
  return s;
}

std::string BinaryMatrix::row_string(std::size_t i) const {
  std::string s(cols_, '0');
  for (std::size_t j = 0; j < cols_; ++j)
    if (get(i, j)) s[j] = '1';
  return s;
}

std::strong_ordering operator<=>(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
  if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.bits_.begin(), a.bits_.end(), b.bits_.begin(),
                                                b.bits_.end());
}

std::size_t BinaryMatrix::hash() const noexcept {
  // FNV-1a over the words, mixed with the shape.
  std::uint64_t h = 1469598103934665603ULL ^ (rows_ * 0x9E3779B97F4A7C15ULL) ^ cols_;
  for (Word w : bits_) {
    h ^= w;
    h *= 1099511628211ULL;
    h ^= h >> 29U;
  }
  return static_cast<std::size_t>(h);
}

Margins Margins::regular(std::size_t n, std::uint32_t k) { return uniform(n, k, n, k); }

Margins Margins::uniform(std::size_t m, std::uint32_t r, std::size_t n, std::uint32_t s) {
  return Margins{std::vector<std::uint32_t>(m, r), std::vector<std::uint32_t>(n, s)};
}

std::uint64_t Margins::row_total() const noexcept {
  std::uint64_t s = 0;
  for (auto r : row_sums) s += r;
  return s;
}

std::uint64_t Margins::col_total() const noexcept {
  std::uint64_t s = 0;
  for (auto c : col_sums) s += c;
  return s;
}

std::string to_string(const Margins& m) {
  std::ostringstream os;
  auto put = [&os](const std::vector<std::uint32_t>& v) {
    os << '<';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << '>';
  };
  os << "R=";
  put(m.row_sums);
  os << " S=";
  put(m.col_sums);
  return os.str();
}

SigmaTable::SigmaTable(std::size_t rows, std::size_t cols, std::vector<std::uint32_t> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows == 0 || cols == 0 || values_.size() != rows * cols) {
    throw DimensionMismatch("sigma table of shape " + shape(rows, cols) + " needs " +
                            std::to_string(rows * cols) + " values");
  }
}

Margins margins_of(const BinaryMatrix& a) {
  Margins m{std::vector<std::uint32_t>(a.rows(), 0), std::vector<std::uint32_t>(a.cols(), 0)};
  for (std::size_t i = 0; i < a.rows(); ++i) {
    m.row_sums[i] = static_cast<std::uint32_t>(a.row_sum(i));
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.get(i, j)) ++m.col_sums[j];
  }
  return m;
}

SigmaTable sigma_table(const BinaryMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<std::uint32_t> v(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    std::uint32_t row_prefix = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row_prefix += a.get(i, j) ? 1U : 0U;
      v[i * n + j] = row_prefix + (i ? v[(i - 1) * n + j] : 0U);
    }
  }
  return SigmaTable(m, n, std::move(v));
}

Count inversions(const BinaryMatrix& a) {
  const std::size_t n = a.cols();
  // above[j]: ones in column j among rows already swept.
  std::vector<Count> above(n, 0);
  Count total = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Count right = 0;  // ones above and strictly right of column j
    for (std::size_t j = n; j-- > 0;) {
      if (a.get(i, j)) total += right;
      right += above[j];
    }
    for (std::size_t j = 0; j < n; ++j) above[j] += a.get(i, j) ? 1 : 0;
  }
  return total;
}

BinaryMatrix conjugate(const BinaryMatrix& a) {
  BinaryMatrix out(a.rows(), a.cols());
  const std::size_t n = a.cols();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.get(i, j)) out.set(i, n - 1 - j, true);
  return out;
}

BinaryMatrix complement(const BinaryMatrix& a) {
  BinaryMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, !a.get(i, j));
  return out;
}

BigInt conjugate_pair_inversions(const Margins& m) {
  BigInt rhs = choose2(BigInt(m.row_total()));
  for (auto r : m.row_sums) rhs -= choose2(BigInt(r));
  for (auto s : m.col_sums) rhs -= choose2(BigInt(s));
  return rhs;
}

ConjugateIdentity nu_conjugate_identity(const BinaryMatrix& a) {
  ConjugateIdentity id;
  id.lhs = BigInt(inversions(a)) + BigInt(inversions(conjugate(a)));
  id.rhs = conjugate_pair_inversions(margins_of(a));
  return id;
}

BinaryMatrix block_compose(const BinaryMatrix& pattern, const BlockSelector& pick_one,
                           const BlockSelector& pick_zero) {
  const std::size_t a = pattern.rows();
  const std::size_t b = pattern.cols();
  const BinaryMatrix& first = pattern.get(0, 0) ? pick_one(0, 0) : pick_zero(0, 0);
  const std::size_t m = first.rows();
  const std::size_t n = first.cols();
  BinaryMatrix out(a * m, b * n);
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      const BinaryMatrix& blk = pattern.get(i, j) ? pick_one(i, j) : pick_zero(i, j);
      if (blk.rows() != m || blk.cols() != n) {
        throw DimensionMismatch("block for cell (" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ") is " + shape(blk.rows(), blk.cols()) +
                                ", expected " + shape(m, n));
      }
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < n; ++l)
          if (blk.get(k, l)) out.set(i * m + k, j * n + l, true);
    }
  }
  return out;
}

}  // namespace bruhat
