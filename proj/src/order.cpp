#include "bruhat/order.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <random>
#include <unordered_set>

#include "bruhat/errors.hpp"
#include "bruhat/parallel.hpp"

namespace bruhat {

std::string_view to_string(OrderRelation r) {
  switch (r) {
    case OrderRelation::Less: return "less";
    case OrderRelation::Greater: return "greater";
    case OrderRelation::Equal: return "equal";
    case OrderRelation::Incomparable: return "incomparable";
  }
  return "?";
}

std::string_view to_string(AntichainCertificate::Status s) {
  switch (s) {
    case AntichainCertificate::Status::Verified: return "verified";
    case AntichainCertificate::Status::Refuted: return "refuted";
    case AntichainCertificate::Status::Sampled: return "sampled";
  }
  return "?";
}

OrderRelation compare_sigma(const SigmaTable& a, const SigmaTable& c) noexcept {
  const auto va = a.values();
  const auto vc = c.values();
  bool a_dominates = true;  // sigma(A) >= sigma(C) everywhere
  bool c_dominates = true;
  for (std::size_t k = 0; k < va.size(); ++k) {
    if (va[k] < vc[k]) {
      a_dominates = false;
      if (!c_dominates) return OrderRelation::Incomparable;
    } else if (va[k] > vc[k]) {
      c_dominates = false;
      if (!a_dominates) return OrderRelation::Incomparable;
    }
  }
  if (a_dominates && c_dominates) return OrderRelation::Equal;
  return a_dominates ? OrderRelation::Less : OrderRelation::Greater;
}

void require_same_class(const BinaryMatrix& a, const BinaryMatrix& c) {
  if (a.rows() != c.rows() || a.cols() != c.cols()) {
    throw ClassMismatch("matrices of shape " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " and " + std::to_string(c.rows()) + "x" +
                        std::to_string(c.cols()) + " are not in one class");
  }
  const Margins ma = margins_of(a);
  const Margins mc = margins_of(c);
  if (!(ma == mc)) {
    throw ClassMismatch("margins differ: " + to_string(ma) + " vs " + to_string(mc));
  }
}

OrderRelation bruhat_compare(const BinaryMatrix& a, const BinaryMatrix& c) {
  require_same_class(a, c);
  return compare_sigma(sigma_table(a), sigma_table(c));
}

std::vector<BinaryMatrix> interchange_successors(const BinaryMatrix& a) {
  std::vector<BinaryMatrix> out;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!a.get(i, j) || a.get(k, j)) continue;
        for (std::size_t l = j + 1; l < n; ++l) {
          if (!a.get(k, l) || a.get(i, l)) continue;
          BinaryMatrix b = a;
          b.set(i, j, false);
          b.set(k, l, false);
          b.set(i, l, true);
          b.set(k, j, true);
          out.push_back(std::move(b));
        }
      }
    }
  }
  return out;
}

bool secondary_leq(const BinaryMatrix& a, const BinaryMatrix& c, const SecondaryOptions& opts) {
  require_same_class(a, c);
  if (a == c) return true;
  const SigmaTable target = sigma_table(c);
  if (compare_sigma(sigma_table(a), target) != OrderRelation::Less) return false;
  const Count target_nu = inversions(c);

  std::unordered_set<BinaryMatrix> seen{a};
  std::deque<BinaryMatrix> frontier{a};
  while (!frontier.empty()) {
    const BinaryMatrix cur = std::move(frontier.front());
    frontier.pop_front();
    for (BinaryMatrix& next : interchange_successors(cur)) {
      if (next == c) return true;
      // Every interchange raises nu, so a non-target at nu(C) is a dead end.
      if (inversions(next) >= target_nu) continue;
      if (compare_sigma(sigma_table(next), target) != OrderRelation::Less) continue;
      if (!seen.insert(next).second) continue;
      if (seen.size() > opts.node_cap) {
        throw ResourceLimit("secondary order search exceeded " + std::to_string(opts.node_cap) +
                            " nodes");
      }
      frontier.push_back(std::move(next));
    }
  }
  return false;
}

nlohmann::ordered_json AntichainCertificate::to_json() const {
  auto big = [](const BigInt& v) -> nlohmann::ordered_json {
    if (v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
    return v.str();
  };
  nlohmann::ordered_json j;
  j["members"] = big(member_count);
  j["checked_pairs"] = checked_pairs;
  j["status"] = std::string(bruhat::to_string(status));
  if (witness) {
    j["witness"] = nlohmann::ordered_json::array({big((*witness)[0]), big((*witness)[1])});
  } else {
    j["witness"] = nullptr;
  }
  j["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
  if (witness_relation) j["relation"] = std::string(bruhat::to_string(*witness_relation));
  return j;
}

namespace {

void require_one_class(std::span<const BinaryMatrix> members) {
  const BinaryMatrix& first = members.front();
  const Margins m0 = margins_of(first);
  for (std::size_t i = 1; i < members.size(); ++i) {
    const BinaryMatrix& x = members[i];
    if (x.rows() != first.rows() || x.cols() != first.cols() || !(margins_of(x) == m0)) {
      throw ClassMismatch("member " + std::to_string(i + 1) + " is not in the class of member 1 (" +
                          to_string(m0) + ")");
    }
  }
}

AntichainCertificate verify_exhaustive(std::span<const SigmaTable> sigmas, unsigned threads) {
  const std::size_t n = sigmas.size();
  constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best{none};  // rank i * n + j of the smallest witness
  std::atomic<Count> checked{0};

  parallel_for(n, threads, [&](std::size_t i) {
    if (static_cast<std::uint64_t>(i) * n >= best.load(std::memory_order_relaxed)) return;
    Count local = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      ++local;
      if (compare_sigma(sigmas[i], sigmas[j]) != OrderRelation::Incomparable) {
        const std::uint64_t rank = static_cast<std::uint64_t>(i) * n + j;
        std::uint64_t cur = best.load();
        while (rank < cur && !best.compare_exchange_weak(cur, rank)) {
        }
        break;
      }
    }
    checked.fetch_add(local, std::memory_order_relaxed);
  });

  AntichainCertificate cert;
  cert.member_count = n;
  cert.checked_pairs = checked.load();
  if (best.load() == none) {
    cert.status = AntichainCertificate::Status::Verified;
  } else {
    const std::size_t i = best.load() / n;
    const std::size_t j = best.load() % n;
    cert.status = AntichainCertificate::Status::Refuted;
    cert.witness = std::array<BigInt, 2>{BigInt(i), BigInt(j)};
    cert.witness_relation = compare_sigma(sigmas[i], sigmas[j]);
  }
  return cert;
}

AntichainCertificate verify_sampled(std::span<const SigmaTable> sigmas, Count pairs,
                                    std::uint64_t seed) {
  const std::size_t n = sigmas.size();
  AntichainCertificate cert;
  cert.member_count = n;
  cert.seed = seed;
  cert.status = AntichainCertificate::Status::Sampled;
  if (n < 2) return cert;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  std::uniform_int_distribution<std::size_t> second(0, n - 2);
  for (Count p = 0; p < pairs; ++p) {
    std::size_t i = first(rng);
    std::size_t j = second(rng);
    if (j >= i) ++j;
    if (i > j) std::swap(i, j);
    ++cert.checked_pairs;
    const OrderRelation r = compare_sigma(sigmas[i], sigmas[j]);
    if (r != OrderRelation::Incomparable) {
      cert.status = AntichainCertificate::Status::Refuted;
      cert.witness = std::array<BigInt, 2>{BigInt(i), BigInt(j)};
      cert.witness_relation = r;
      break;
    }
  }
  return cert;
}

}  // namespace

AntichainCertificate verify_antichain(std::span<const BinaryMatrix> members,
                                      const VerifyOptions& opts) {
  if (members.empty()) {
    AntichainCertificate cert;
    if (opts.mode == VerifyOptions::Mode::Sampled) {
      cert.status = AntichainCertificate::Status::Sampled;
      cert.seed = opts.seed;
    }
    return cert;
  }
  require_one_class(members);
  std::vector<SigmaTable> sigmas;
  sigmas.reserve(members.size());
  for (const auto& x : members) sigmas.push_back(sigma_table(x));
  if (opts.mode == VerifyOptions::Mode::Sampled) {
    return verify_sampled(sigmas, opts.sample_pairs, opts.seed);
  }
  return verify_exhaustive(sigmas, opts.threads);
}

}  // namespace bruhat
