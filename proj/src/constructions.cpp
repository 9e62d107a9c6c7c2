#include "bruhat/constructions.hpp"

#include <limits>
#include <stdexcept>

#include "bruhat/class_enum.hpp"
#include "bruhat/errors.hpp"
#include "bruhat/matrix_io.hpp"

namespace bruhat {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Even: return "even";
    case Provenance::Odd: return "odd";
    case Provenance::Product: return "product";
    case Provenance::Complement: return "complement";
    case Provenance::HalfRegular: return "half_regular";
    case Provenance::RemarkImproved: return "remark_improved";
  }
  return "?";
}

nlohmann::ordered_json ConstructedAntichain::predictions_json() const {
  nlohmann::ordered_json j;
  j["provenance"] = std::string(to_string(provenance));
  j["class"] = to_json(margins);
  j["size"] = to_decimal(predicted_size);
  j["nu"] = predicted_nu ? nlohmann::ordered_json(*predicted_nu) : nlohmann::ordered_json(nullptr);
  return j;
}

BigInt f_bound(unsigned n) {
  if (n < 2) throw RangeError("f(n) needs n >= 2");
  if (n % 2 == 0) return factorial(n) / pow(2, n / 2);
  return factorial(n - 1) / pow(2, (n - 3) / 2);
}

BigInt g_bound(unsigned k) {
  if (k < 2) throw RangeError("g(k) needs k >= 2");
  if (k % 2 == 0) return pow(factorial(k), 4) / pow(4, k);
  return pow(factorial(k - 1), 4) / pow(4, k - 3);
}

BigInt remark_bound(unsigned k) {
  if (k == 0 || k % 4 != 0) throw ParityError("remark bound needs k divisible by 4");
  return 13 * pow(factorial(k / 2), 16) / pow(16, k);
}

ConstructedAntichain even_antichain(unsigned n) {
  if (n < 2 || n % 2 != 0) {
    throw ParityError("even construction needs an even n >= 2, got " + std::to_string(n));
  }
  const unsigned k = n / 2;
  ConstructedAntichain out;
  out.provenance = Provenance::Even;
  out.margins = Margins::regular(n, 2);
  out.predicted_size = f_bound(n);
  out.predicted_nu = Count{n} * n - 3 * Count{n} / 2;
  enumerate_seed_matrices(k, [&](const BinaryMatrix& c) {
    BinaryMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (c.get(i, j)) {
          a.set(i, j, true);
          a.set(i, n - 1 - j, true);
        }
      }
    }
    out.members.push_back(std::move(a));
  });
  return out;
}

ConstructedAntichain odd_antichain(unsigned n) {
  if (n < 3 || n % 2 != 1) {
    throw ParityError("odd construction needs an odd n >= 3, got " + std::to_string(n));
  }
  const std::size_t k = (n - 1) / 2;
  ConstructedAntichain out;
  out.provenance = Provenance::Odd;
  out.margins = Margins::regular(n, 2);
  out.predicted_size = f_bound(n);
  out.predicted_nu = Count{k} * (4 * Count{k} - 1);

  std::vector<BinaryMatrix> shifted;
  enumerate_seed_matrices(static_cast<unsigned>(k), [&](const BinaryMatrix& c) {
    // C in rows 1..2k x cols 1..k, conjugate(C) in rows 2..2k+1 x cols
    // k+1..2k, and ones at (1, n) and (n, n).
    BinaryMatrix a(n, n);
    for (std::size_t i = 0; i < 2 * k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (c.get(i, j)) {
          a.set(i, j, true);
          a.set(i + 1, 2 * k - 1 - j, true);
        }
      }
    }
    a.set(0, n - 1, true);
    a.set(n - 1, n - 1, true);

    BinaryMatrix moved(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      moved.set(i, 0, a.get(i, n - 1));
      for (std::size_t j = 0; j + 1 < n; ++j) moved.set(i, j + 1, a.get(i, j));
    }
    out.members.push_back(std::move(a));
    shifted.push_back(std::move(moved));
  });
  for (auto& m : shifted) out.members.push_back(std::move(m));
  return out;
}

std::vector<BinaryMatrix> complement_antichain(std::span<const BinaryMatrix> members) {
  std::vector<BinaryMatrix> out;
  out.reserve(members.size());
  for (const auto& a : members) out.push_back(complement(a));
  return out;
}

AntichainFactor AntichainFactor::from_members(std::vector<BinaryMatrix> members) {
  if (members.empty()) throw RangeError("antichain factor needs at least one member");
  Margins m = margins_of(members.front());
  for (std::size_t i = 1; i < members.size(); ++i) require_same_class(members.front(), members[i]);
  return {std::move(members), std::move(m)};
}

namespace {

void check_factor(const AntichainFactor& d, std::string_view name) {
  if (d.members.empty()) {
    throw RangeError(std::string(name) + " antichain is empty");
  }
  for (std::size_t i = 0; i < d.members.size(); ++i) {
    const BinaryMatrix& x = d.members[i];
    if (x.rows() != d.members.front().rows() || x.cols() != d.members.front().cols() ||
        !(margins_of(x) == d.margins)) {
      throw ClassMismatch(std::string(name) + " member " + std::to_string(i + 1) +
                          " is not in the class " + to_string(d.margins));
    }
  }
}

std::uint64_t sum_of(const std::vector<std::uint32_t>& v) {
  std::uint64_t s = 0;
  for (auto x : v) s += x;
  return s;
}

}  // namespace

ProductStream::ProductStream(AntichainFactor patterns, AntichainFactor ones, AntichainFactor zeros,
                             ProductOptions opts)
    : d1_(std::move(patterns)), d2_(std::move(ones)), d3_(std::move(zeros)) {
  check_factor(d1_, "pattern");
  check_factor(d2_, "one-cell");
  check_factor(d3_, "zero-cell");
  a_ = d1_.members.front().rows();
  b_ = d1_.members.front().cols();
  m_ = d2_.members.front().rows();
  n_ = d2_.members.front().cols();
  if (d3_.members.front().rows() != m_ || d3_.members.front().cols() != n_) {
    throw DimensionMismatch("one-cell blocks are " + std::to_string(m_) + "x" + std::to_string(n_) +
                            " but zero-cell blocks are " +
                            std::to_string(d3_.members.front().rows()) + "x" +
                            std::to_string(d3_.members.front().cols()));
  }
  u_ = sum_of(d1_.margins.row_sums);
  u_ones_ = sum_of(d2_.margins.row_sums);
  u_zeros_ = sum_of(d3_.margins.row_sums);
  if (u_ones_ == u_zeros_ && !(opts.allow_degenerate_case1 && d1_.members.size() == 1)) {
    throw HypothesisViolation("product construction needs u' != u'', got u' = u'' = " +
                              std::to_string(u_ones_) + " with " +
                              std::to_string(d1_.members.size()) + " pattern(s)");
  }

  const auto cells = static_cast<unsigned>(a_ * b_);
  per_pattern_ = pow(BigInt(d2_.members.size()), static_cast<unsigned>(u_)) *
                 pow(BigInt(d3_.members.size()), cells - static_cast<unsigned>(u_));
  size_ = BigInt(d1_.members.size()) * per_pattern_;

  const auto& r1 = d1_.margins.row_sums;
  const auto& s1 = d1_.margins.col_sums;
  margins_.row_sums.resize(a_ * m_);
  margins_.col_sums.resize(b_ * n_);
  for (std::size_t i = 0; i < a_; ++i)
    for (std::size_t k = 0; k < m_; ++k)
      margins_.row_sums[i * m_ + k] = r1[i] * d2_.margins.row_sums[k] +
                                      (static_cast<std::uint32_t>(b_) - r1[i]) *
                                          d3_.margins.row_sums[k];
  for (std::size_t j = 0; j < b_; ++j)
    for (std::size_t l = 0; l < n_; ++l)
      margins_.col_sums[j * n_ + l] = s1[j] * d2_.margins.col_sums[l] +
                                      (static_cast<std::uint32_t>(a_) - s1[j]) *
                                          d3_.margins.col_sums[l];
}

std::size_t ProductStream::radix(std::size_t pattern, std::size_t cell) const {
  return d1_.members[pattern].get(cell / b_, cell % b_) ? d2_.members.size() : d3_.members.size();
}

ProductStream::Index ProductStream::index_of(const BigInt& rank) const {
  if (rank < 0 || rank >= size_) throw RangeError("member rank " + rank.str() + " out of range");
  Index idx;
  idx.pattern = static_cast<std::size_t>(rank / per_pattern_);
  BigInt rem = rank % per_pattern_;
  idx.choices.assign(a_ * b_, 0);
  for (std::size_t c = a_ * b_; c-- > 0;) {
    const std::size_t r = radix(idx.pattern, c);
    idx.choices[c] = static_cast<std::size_t>(rem % r);
    rem /= r;
  }
  return idx;
}

BigInt ProductStream::rank_of(const Index& idx) const {
  BigInt rem = 0;
  for (std::size_t c = 0; c < a_ * b_; ++c) rem = rem * radix(idx.pattern, c) + idx.choices[c];
  return BigInt(idx.pattern) * per_pattern_ + rem;
}

const BinaryMatrix& ProductStream::block(const Index& idx, std::size_t i, std::size_t j) const {
  const std::size_t choice = idx.choices[i * b_ + j];
  return d1_.members[idx.pattern].get(i, j) ? d2_.members[choice] : d3_.members[choice];
}

BinaryMatrix ProductStream::member(const Index& idx) const {
  if (idx.pattern >= d1_.members.size() || idx.choices.size() != a_ * b_) {
    throw RangeError("malformed product index");
  }
  for (std::size_t c = 0; c < a_ * b_; ++c)
    if (idx.choices[c] >= radix(idx.pattern, c)) throw RangeError("block choice out of range");
  auto pick = [&](std::size_t i, std::size_t j) -> const BinaryMatrix& { return block(idx, i, j); };
  return block_compose(d1_.members[idx.pattern], pick, pick);
}

ProductStream::Index ProductStream::random_index(std::mt19937_64& rng) const {
  Index idx;
  idx.pattern = std::uniform_int_distribution<std::size_t>(0, d1_.members.size() - 1)(rng);
  idx.choices.resize(a_ * b_);
  for (std::size_t c = 0; c < a_ * b_; ++c) {
    idx.choices[c] = std::uniform_int_distribution<std::size_t>(0, radix(idx.pattern, c) - 1)(rng);
  }
  return idx;
}

void ProductStream::for_each(const std::function<void(const BinaryMatrix&)>& visit) const {
  const std::size_t cells = a_ * b_;
  Index idx;
  for (idx.pattern = 0; idx.pattern < d1_.members.size(); ++idx.pattern) {
    idx.choices.assign(cells, 0);
    for (;;) {
      visit(member(idx));
      // Odometer step, last cell fastest.
      bool carry = true;
      for (std::size_t c = cells; carry && c-- > 0;) {
        if (++idx.choices[c] < radix(idx.pattern, c)) {
          carry = false;
        } else {
          idx.choices[c] = 0;
        }
      }
      if (carry) break;
    }
  }
}

ConstructedAntichain materialize(const ProductStream& stream, Provenance provenance) {
  if (stream.size() > kMaterializeCap) {
    throw BudgetExceeded("product has " + stream.size().str() + " members, over the cap of " +
                         std::to_string(kMaterializeCap) + "; use streaming");
  }
  ConstructedAntichain out;
  out.provenance = provenance;
  out.margins = stream.margins();
  out.predicted_size = stream.size();
  out.members.reserve(stream.size().convert_to<std::size_t>());
  stream.for_each([&](const BinaryMatrix& x) {
    if (!(margins_of(x) == out.margins)) {
      throw std::logic_error("product member margins " + to_string(margins_of(x)) +
                             " disagree with predicted " + to_string(out.margins));
    }
    out.members.push_back(x);
  });
  return out;
}

ConstructedAntichain product_antichain(const AntichainFactor& patterns, const AntichainFactor& ones,
                                       const AntichainFactor& zeros, ProductOptions opts) {
  return materialize(ProductStream(patterns, ones, zeros, opts), Provenance::Product);
}

ProductStream half_regular_stream(unsigned k) {
  if (k < 2) throw RangeError("half-regular construction needs k >= 2, got " + std::to_string(k));
  const ConstructedAntichain d2 = (k % 2 == 0) ? even_antichain(k) : odd_antichain(k);
  AntichainFactor zeros = AntichainFactor::from_members(complement_antichain(d2.members));
  AntichainFactor patterns{{BinaryMatrix::identity(2)}, Margins::regular(2, 1)};
  return ProductStream(std::move(patterns), AntichainFactor::of(d2), std::move(zeros),
                       ProductOptions{.allow_degenerate_case1 = true});
}

ConstructedAntichain half_regular_antichain(unsigned k) {
  ConstructedAntichain out = materialize(half_regular_stream(k), Provenance::HalfRegular);
  out.predicted_size = g_bound(k);
  return out;
}

std::vector<BinaryMatrix> a42_level8() {
  std::vector<BinaryMatrix> level;
  enumerate_class(Margins::regular(4, 2), [&](const BinaryMatrix& a) {
    if (inversions(a) == 8) level.push_back(a);
  });
  return level;
}

ProductStream remark_improved_stream(unsigned k) {
  if (k == 0 || k % 4 != 0) {
    throw ParityError("improved construction needs k divisible by 4, got " + std::to_string(k));
  }
  const ConstructedAntichain d2 = even_antichain(k / 2);
  AntichainFactor zeros = AntichainFactor::from_members(complement_antichain(d2.members));
  AntichainFactor patterns{a42_level8(), Margins::regular(4, 2)};
  return ProductStream(std::move(patterns), AntichainFactor::of(d2), std::move(zeros));
}

ConstructedAntichain remark_improved_antichain(unsigned k) {
  ConstructedAntichain out = materialize(remark_improved_stream(k), Provenance::RemarkImproved);
  out.predicted_size = remark_bound(k);
  return out;
}

AntichainCertificate sample_verify(const ProductStream& stream, Count pairs, std::uint64_t seed) {
  AntichainCertificate cert;
  cert.member_count = stream.size();
  cert.seed = seed;
  cert.status = AntichainCertificate::Status::Sampled;
  if (stream.size() < 2) return cert;
  std::mt19937_64 rng(seed);
  for (Count p = 0; p < pairs; ++p) {
    ProductStream::Index x = stream.random_index(rng);
    ProductStream::Index y = stream.random_index(rng);
    while (y == x) y = stream.random_index(rng);
    ++cert.checked_pairs;
    const OrderRelation r =
        compare_sigma(sigma_table(stream.member(x)), sigma_table(stream.member(y)));
    if (r != OrderRelation::Incomparable) {
      BigInt rx = stream.rank_of(x);
      BigInt ry = stream.rank_of(y);
      if (rx > ry) std::swap(rx, ry);
      cert.status = AntichainCertificate::Status::Refuted;
      cert.witness = std::array<BigInt, 2>{rx, ry};
      cert.witness_relation = r;
      break;
    }
  }
  return cert;
}

bool case1_corner_identity(const ProductStream& stream, const ProductStream::Index& x) {
  const SigmaTable sx = sigma_table(stream.member(x));
  const SigmaTable sp = sigma_table(stream.patterns().members[x.pattern]);
  const auto u1 = static_cast<std::int64_t>(stream.u_ones());
  const auto u0 = static_cast<std::int64_t>(stream.u_zeros());
  for (std::size_t k = 1; k <= stream.pattern_rows(); ++k) {
    for (std::size_t l = 1; l <= stream.pattern_cols(); ++l) {
      const std::int64_t psi = sx.prefix(k * stream.block_rows(), l * stream.block_cols());
      const std::int64_t expected = u0 * static_cast<std::int64_t>(k * l) +
                                    (u1 - u0) * static_cast<std::int64_t>(sp.prefix(k, l));
      if (psi != expected) return false;
    }
  }
  return true;
}

bool case2_difference_identity(const ProductStream& stream, const ProductStream::Index& x,
                               const ProductStream::Index& y, std::size_t i, std::size_t j,
                               std::size_t k, std::size_t l) {
  if (x.pattern != y.pattern) throw RangeError("same-pattern identity needs one pattern");
  const SigmaTable sx = sigma_table(stream.member(x));
  const SigmaTable sy = sigma_table(stream.member(y));
  const std::size_t alpha = i * stream.block_rows() + k;
  const std::size_t beta = j * stream.block_cols() + l;
  const std::int64_t global = static_cast<std::int64_t>(sx.at(alpha, beta)) - sy.at(alpha, beta);
  const std::int64_t local = static_cast<std::int64_t>(sigma_table(stream.block(x, i, j)).at(k, l)) -
                             sigma_table(stream.block(y, i, j)).at(k, l);
  return global == local;
}

}  // namespace bruhat
