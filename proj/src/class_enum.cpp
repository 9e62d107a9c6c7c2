#include "bruhat/class_enum.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "bruhat/errors.hpp"
#include "bruhat/parallel.hpp"

namespace bruhat {

bool feasible(const Margins& margins) {
  const auto& R = margins.row_sums;
  const auto& S = margins.col_sums;
  if (R.empty() || S.empty()) return false;
  if (margins.row_total() != margins.col_total()) return false;
  std::vector<std::uint32_t> r = R;
  std::sort(r.begin(), r.end(), std::greater<>());
  std::uint64_t lhs = 0;
  for (std::size_t k = 1; k <= r.size(); ++k) {
    lhs += r[k - 1];
    std::uint64_t rhs = 0;
    for (auto s : S) rhs += std::min<std::uint64_t>(s, k);
    if (lhs > rhs) return false;
  }
  for (auto s : S)
    if (s > R.size()) return false;
  return true;
}

namespace {

class Enumerator {
 public:
  Enumerator(const EnumerationPlan& plan, const MatrixVisitor& visit)
      : margins_(plan.margins),
        shard_(plan.shard),
        visit_(visit),
        m_(margins_.row_sums.size()),
        n_(margins_.col_sums.size()),
        residual_(margins_.col_sums),
        current_(m_, n_) {}

  BigInt run() {
    fill_row(0);
    return BigInt(visited_);
  }

 private:
  void fill_row(std::size_t i) {
    if (i == m_) {
      assert(margins_of(current_) == margins_);
      ++visited_;
      visit_(current_);
      return;
    }
    choose(i, 0, 0);
  }

  // Picks the remaining columns of row i, smallest index first.
  void choose(std::size_t i, std::size_t picked, std::size_t start) {
    const std::size_t need = margins_.row_sums[i];
    const std::uint32_t rows_left = static_cast<std::uint32_t>(m_ - i);
    if (picked == need) {
      for (std::size_t j = start; j < n_; ++j)
        if (residual_[j] == rows_left) return;  // a forced column was left out
      if (i == 0 && shard_) {
        const std::size_t pattern = first_row_patterns_++;
        if (pattern % shard_->count != shard_->index) return;
      }
      fill_row(i + 1);
      return;
    }
    for (std::size_t j = start; j < n_; ++j) {
      if (n_ - j < need - picked) return;
      const std::uint32_t r = residual_[j];
      if (r == 0) continue;
      --residual_[j];
      current_.set(i, j, true);
      choose(i, picked + 1, j + 1);
      current_.set(i, j, false);
      ++residual_[j];
      if (r == rows_left) return;  // skipping a forced column is never allowed
    }
  }

  const Margins& margins_;
  std::optional<Shard> shard_;
  const MatrixVisitor& visit_;
  std::size_t m_;
  std::size_t n_;
  std::vector<std::uint32_t> residual_;
  BinaryMatrix current_;
  std::uint64_t visited_ = 0;
  std::size_t first_row_patterns_ = 0;
};

// Counts completions from row i given the multiset of residual column sums.
class Counter {
 public:
  explicit Counter(const Margins& margins) : rows_(margins.row_sums), memo_(rows_.size()) {}

  BigInt count(std::size_t i, std::vector<std::uint32_t> residual) {
    std::sort(residual.begin(), residual.end());
    return count_sorted(i, residual);
  }

 private:
  BigInt count_sorted(std::size_t i, const std::vector<std::uint32_t>& residual) {
    if (i == rows_.size()) {
      return std::all_of(residual.begin(), residual.end(), [](auto r) { return r == 0; }) ? 1 : 0;
    }
    if (auto it = memo_[i].find(residual); it != memo_[i].end()) return it->second;

    // Group equal residuals: value -> number of columns.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> groups;
    for (auto r : residual) {
      if (!groups.empty() && groups.back().first == r) {
        ++groups.back().second;
      } else {
        groups.emplace_back(r, 1);
      }
    }
    BigInt total = 0;
    std::vector<std::uint32_t> take(groups.size(), 0);
    distribute(i, groups, take, 0, rows_[i], 1, total);
    memo_[i].emplace(residual, total);
    return total;
  }

  // Chooses how many columns of each residual group row i covers.
  void distribute(std::size_t i, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& groups,
                  std::vector<std::uint32_t>& take, std::size_t g, std::uint32_t need,
                  const BigInt& ways, BigInt& total) {
    const auto rows_left = static_cast<std::uint32_t>(rows_.size() - i);
    if (g == groups.size()) {
      if (need != 0) return;
      std::vector<std::uint32_t> next;
      for (std::size_t q = 0; q < groups.size(); ++q) {
        const auto [value, size] = groups[q];
        for (std::uint32_t t = 0; t < size; ++t) next.push_back(t < take[q] ? value - 1 : value);
      }
      total += ways * count(i + 1, std::move(next));
      return;
    }
    const auto [value, size] = groups[g];
    if (value > rows_left) return;
    std::uint32_t lo = 0;
    std::uint32_t hi = value == 0 ? 0 : std::min(size, need);
    if (value == rows_left) lo = size;
    if (lo > hi) return;
    BigInt binom = 1;  // C(size, t)
    for (std::uint32_t t = 0; t <= hi; ++t) {
      if (t >= lo) {
        take[g] = t;
        distribute(i, groups, take, g + 1, need - t, ways * binom, total);
      }
      binom = binom * (size - t) / (t + 1);
    }
    take[g] = 0;
  }

  std::vector<std::uint32_t> rows_;
  std::vector<std::map<std::vector<std::uint32_t>, BigInt>> memo_;
};

}  // namespace

BigInt enumerate_class(const EnumerationPlan& plan, const MatrixVisitor& visit) {
  if (!feasible(plan.margins)) {
    throw InfeasibleMargins("class " + to_string(plan.margins) + " is empty");
  }
  if (plan.shard && (plan.shard->count == 0 || plan.shard->index >= plan.shard->count)) {
    throw RangeError("shard index out of range");
  }
  Enumerator e(plan, visit);
  return e.run();
}

BigInt enumerate_class(const Margins& margins, const MatrixVisitor& visit) {
  return enumerate_class(EnumerationPlan{margins, std::nullopt}, visit);
}

std::vector<BinaryMatrix> collect_class(const Margins& margins) {
  std::vector<BinaryMatrix> out;
  enumerate_class(margins, [&out](const BinaryMatrix& a) { out.push_back(a); });
  return out;
}

BigInt count_class(const Margins& margins) {
  if (!feasible(margins)) return 0;
  Counter c(margins);
  return c.count(0, margins.col_sums);
}

Margins seed_margins(unsigned k) { return Margins::uniform(2 * std::size_t{k}, 1, k, 2); }

BigInt enumerate_seed_matrices(unsigned k, const MatrixVisitor& visit) {
  if (k == 0) throw RangeError("seed matrices need k >= 1");
  return enumerate_class(seed_margins(k), visit);
}

void for_each_shard(const Margins& margins, std::size_t shards, unsigned threads,
                    const std::function<void(std::size_t, const EnumerationPlan&)>& body) {
  if (shards == 0) throw RangeError("shard count must be positive");
  parallel_for(shards, threads, [&](std::size_t s) {
    body(s, EnumerationPlan{margins, Shard{s, shards}});
  });
}

double oneil_estimate(unsigned n, unsigned k) {
  using Float = boost::multiprecision::cpp_bin_float_50;
  if (n == 0) throw RangeError("oneil_estimate needs n >= 1");
  const std::uint64_t kn = std::uint64_t{k} * n;
  if (kn > kOneilMaxKn) {
    throw RangeError("k*n = " + std::to_string(kn) + " exceeds " + std::to_string(kOneilMaxKn));
  }
  const BigInt num = factorial(static_cast<unsigned>(kn));
  const BigInt den = pow(factorial(k), 2 * n);
  const double km1 = static_cast<double>(k) - 1.0;
  const Float value = Float(num) / Float(den) * exp(Float(-km1 * km1 / 2.0));
  if (value > Float(std::numeric_limits<double>::max())) {
    throw RangeError("estimate for n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                     " overflows a double");
  }
  return value.convert_to<double>();
}

}  // namespace bruhat
