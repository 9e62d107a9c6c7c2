// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every expected value below is exact; the only tolerances are the
// [0.9, 1.1] ratio window of criterion 14 and the wall-clock limits.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bruhat/class_enum.hpp"
#include "bruhat/constructions.hpp"
#include "bruhat/errors.hpp"
#include "bruhat/order.hpp"
#include "bruhat/poset_metrics.hpp"

using namespace bruhat;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s %2d %s:%s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.str().c_str(), secs);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::vector<BinaryMatrix> sorted(std::vector<BinaryMatrix> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<BinaryMatrix> self_conjugate_members(unsigned n) {
  std::vector<BinaryMatrix> out;
  enumerate_class(Margins::regular(n, 2), [&](const BinaryMatrix& a) {
    if (conjugate(a) == a) out.push_back(a);
  });
  return out;
}

bool all_nu(const std::vector<BinaryMatrix>& v, Count nu) {
  return std::all_of(v.begin(), v.end(), [&](const BinaryMatrix& a) { return inversions(a) == nu; });
}

bool verified(const std::vector<BinaryMatrix>& v) {
  const auto cert = verify_antichain(v, VerifyOptions::exhaustive());
  return cert.status == AntichainCertificate::Status::Verified &&
         cert.checked_pairs == v.size() * (v.size() - 1) / 2;
}

}  // namespace

int main() {
  criterion(1, "table1-reproduction", [](Outcome& o) {
    const std::map<unsigned, Count> expected{{3, 2}, {4, 13}, {5, 161}, {7, 142468}};
    for (const auto& [n, want] : expected) {
      const auto t = std::chrono::steady_clock::now();
      const auto h = inversion_histogram(n);
      const double secs = seconds_since(t);
      o.detail << " n=" << n << ":" << h.max_bucket.second;
      o.expect(h.max_bucket.second == want, "n=" + std::to_string(n));
      if (n == 7) o.expect(secs < 120.0, "n=7 under 2 minutes");
    }
  });

  criterion(2, "n6-discrepancy", [](Outcome& o) {
    const auto h = inversion_histogram(6);
    const Count max = h.max_bucket.second;
    const Count at27 = h.bucket(27);
    o.detail << " max=" << max << " at nu=" << h.max_bucket.first << " |nu^-1(27)|=" << at27;
    o.expect(h.argmax_all() == std::vector<Count>{27}, "unique argmax at 27");
    o.expect(max == at27, "max equals level 27");
    const bool table = max == 4086;
    const bool text = max == kPublishedTextN6;
    o.expect(table != text, "equals exactly one published figure");
    o.detail << (text ? " matches the text figure 4108; the table's 4086 is wrong"
                      : table ? " matches the table figure 4086" : " matches neither");
  });

  criterion(3, "level-set-identities", [](Outcome& o) {
    const auto h3 = inversion_histogram(3);
    const auto h4 = inversion_histogram(4);
    o.detail << " A(3,2):" << h3.bucket(3) << "," << h3.bucket(6) << " A(4,2):" << h4.bucket(8) << ","
             << h4.bucket(12);
    o.expect(h3.bucket(3) == 2 && h3.bucket(6) == 2, "A(3,2)");
    o.expect(h4.bucket(8) == 13 && h4.bucket(12) == 13, "A(4,2)");
  });

  criterion(4, "exact-widths", [](Outcome& o) {
    for (const auto& [n, want] : std::map<unsigned, Count>{{3, 2}, {4, 13}}) {
      const auto members = collect_class(Margins::regular(n, 2));
      const auto w = exact_width(members);
      std::vector<BinaryMatrix> witness;
      for (std::size_t i : w.antichain) witness.push_back(members[i]);
      o.detail << " w(" << n << ",2)=" << w.width;
      o.expect(w.width == want, "width n=" + std::to_string(n));
      o.expect(witness.size() == want && verified(witness), "witness n=" + std::to_string(n));
    }
  });

  criterion(5, "exact-heights", [](Outcome& o) {
    for (const auto& [n, want] : std::map<unsigned, Count>{{4, 17}, {5, 30}}) {
      const auto t = std::chrono::steady_clock::now();
      const auto members = collect_class(Margins::regular(n, 2));
      const auto h = exact_height(members);
      const double secs = seconds_since(t);
      o.detail << " h(" << n << ",2)=" << h.height;
      o.expect(h.height == want, "height n=" + std::to_string(n));
      o.expect(h.height == height_formula_an2(n), "formula n=" + std::to_string(n));
      bool chain_ok = h.chain.size() == h.height;
      for (std::size_t i = 1; chain_ok && i < h.chain.size(); ++i)
        chain_ok = bruhat_compare(members[h.chain[i - 1]], members[h.chain[i]]) == OrderRelation::Less;
      o.expect(chain_ok, "witness chain n=" + std::to_string(n));
      if (n == 5) o.expect(secs < 60.0, "n=5 under 1 minute");
    }
  });

  criterion(6, "conjugate-inversion-identity", [](Outcome& o) {
    for (const auto& [n, size] : std::map<unsigned, std::size_t>{{4, 90}, {5, 2040}}) {
      std::size_t seen = 0, held = 0;
      const BigInt rhs = choose2(BigInt(2 * n)) - 2 * n;
      enumerate_class(Margins::regular(n, 2), [&](const BinaryMatrix& a) {
        ++seen;
        if (BigInt(inversions(a)) + inversions(conjugate(a)) == rhs && nu_conjugate_identity(a).holds()) ++held;
      });
      o.detail << " A(" << n << ",2):" << held << "/" << seen;
      o.expect(seen == size && held == size, "n=" + std::to_string(n));
    }
  });

  criterion(7, "even-construction", [](Outcome& o) {
    const std::map<unsigned, std::pair<std::size_t, Count>> expected{{4, {6, 10}}, {6, {90, 27}}, {8, {2520, 52}}};
    for (const auto& [n, want] : expected) {
      const auto t = std::chrono::steady_clock::now();
      const auto d = even_antichain(n);
      const bool self_conj = std::all_of(d.members.begin(), d.members.end(),
                                         [](const BinaryMatrix& a) { return conjugate(a) == a; });
      const bool incomparable = verified(d.members);
      const double secs = seconds_since(t);
      o.detail << " n=" << n << ":" << d.members.size();
      o.expect(d.members.size() == want.first && d.predicted_size == f_bound(n), "size n=" + std::to_string(n));
      o.expect(all_nu(d.members, want.second), "nu n=" + std::to_string(n));
      o.expect(self_conj, "self-conjugate n=" + std::to_string(n));
      o.expect(incomparable, "incomparable n=" + std::to_string(n));
      if (n == 8) o.expect(secs < 60.0, "n=8 under 1 minute");
    }
  });

  criterion(8, "odd-construction", [](Outcome& o) {
    const std::map<unsigned, std::pair<std::size_t, Count>> expected{{5, {12, 14}}, {7, {180, 33}}};
    for (const auto& [n, want] : expected) {
      const auto d = odd_antichain(n);
      o.detail << " n=" << n << ":" << d.members.size();
      o.expect(d.members.size() == want.first, "size n=" + std::to_string(n));
      o.expect(all_nu(d.members, want.second), "nu n=" + std::to_string(n));
      o.expect(verified(d.members), "incomparable n=" + std::to_string(n));
    }
  });

  criterion(9, "self-conjugate-census", [](Outcome& o) {
    for (unsigned n = 3; n <= 7; ++n) {
      const auto found = self_conjugate_members(n);
      o.detail << " n=" << n << ":" << found.size();
      if (n % 2 == 0) {
        o.expect(sorted(found) == sorted(even_antichain(n).members), "equals even set n=" + std::to_string(n));
      } else {
        o.expect(found.empty(), "empty n=" + std::to_string(n));
      }
    }
  });

  criterion(10, "half-regular-product", [](Outcome& o) {
    const auto h3 = half_regular_antichain(3);
    o.detail << " k=3:" << h3.members.size();
    o.expect(h3.members.size() == 16 && h3.margins == Margins::regular(6, 3), "k=3 size and class");
    o.expect(std::all_of(h3.members.begin(), h3.members.end(),
                         [](const BinaryMatrix& a) { return margins_of(a) == Margins::regular(6, 3); }),
             "k=3 margins");
    o.expect(verified(h3.members), "k=3 incomparable");

    const auto h4 = half_regular_antichain(4);
    o.detail << " k=4:" << h4.members.size();
    o.expect(h4.members.size() == 1296 && h4.margins == Margins::regular(8, 4), "k=4 size and class");
    o.expect(std::set<BinaryMatrix>(h4.members.begin(), h4.members.end()).size() == 1296, "k=4 distinct");
    o.expect(verified(h4.members), "k=4 incomparable");
  });

  criterion(11, "hypothesis-enforcement", [](Outcome& o) {
    const auto even4 = even_antichain(4);
    const auto d2 = AntichainFactor::of(even4);
    const auto d3 = AntichainFactor::from_members(complement_antichain(even4.members));
    const auto d1 = AntichainFactor::from_members(a42_level8());
    bool product_raised = false;
    try {
      product_antichain(d1, d2, d3);
    } catch (const HypothesisViolation&) {
      product_raised = true;
    }
    o.expect(product_raised, "product with |D1| > 1 raises");
    bool remark_raised = false;
    try {
      remark_improved_antichain(8);
    } catch (const HypothesisViolation&) {
      remark_raised = true;
    }
    o.expect(remark_raised, "remark k=8 raises");
    const auto r4 = remark_improved_antichain(4);
    o.detail << " remark(4):" << r4.members.size();
    o.expect(r4.members.size() == 13 && verified(r4.members), "remark k=4");
  });

  criterion(12, "product-proof-identities", [](Outcome& o) {
    const ProductStream s = half_regular_stream(3);
    std::mt19937_64 rng(12345);
    int case1 = 0, case2 = 0;
    for (int probe = 0; probe < 1000; ++probe) {
      const auto x = s.random_index(rng);
      const auto y = s.random_index(rng);
      case1 += case1_corner_identity(s, x);
      case2 += case2_difference_identity(s, x, y, rng() % s.pattern_rows(), rng() % s.pattern_cols(),
                                         rng() % s.block_rows(), rng() % s.block_cols());
    }
    o.detail << " case1:" << case1 << "/1000 case2:" << case2 << "/1000";
    o.expect(case1 == 1000 && case2 == 1000, "all probes");
  });

  criterion(13, "order-theory-properties", [](Outcome& o) {
    std::size_t moves = 0, bad_moves = 0;
    for (unsigned n : {4U, 5U}) {
      enumerate_class(Margins::regular(n, 2), [&](const BinaryMatrix& a) {
        for (const auto& b : interchange_successors(a)) {
          ++moves;
          if (!(inversions(b) > inversions(a) && bruhat_compare(a, b) == OrderRelation::Less)) ++bad_moves;
        }
      });
    }
    o.detail << " interchanges:" << moves;
    o.expect(moves > 0 && bad_moves == 0, "monotone interchanges");

    const auto a42 = collect_class(Margins::regular(4, 2));
    std::size_t comparable = 0, reversed = 0, ordered = 0, agree = 0;
    for (std::size_t i = 0; i < a42.size(); ++i)
      for (std::size_t j = 0; j < a42.size(); ++j) {
        if (i == j) continue;
        const auto r = bruhat_compare(a42[i], a42[j]);
        if (r == OrderRelation::Less) {
          ++comparable;
          if (bruhat_compare(complement(a42[j]), complement(a42[i])) == OrderRelation::Less) ++reversed;
        }
        ++ordered;
        if (secondary_leq(a42[i], a42[j]) == (r == OrderRelation::Less)) ++agree;
      }
    o.detail << " complement:" << reversed << "/" << comparable << " secondary:" << agree << "/" << ordered;
    o.expect(comparable > 0 && reversed == comparable, "complement reverses");
    o.expect(ordered == 8010 && agree == ordered, "secondary equals Bruhat");
  });

  criterion(14, "asymptotic-estimate", [](Outcome& o) {
    for (unsigned n = 4; n <= 7; ++n) {
      const double ratio = oneil_estimate(n, 2) / count_class(Margins::regular(n, 2)).convert_to<double>();
      o.detail << " n=" << n << ":" << ratio;
      o.expect(ratio >= 0.9 && ratio <= 1.1, "ratio n=" + std::to_string(n));
    }
    for (unsigned n = 1; n <= 10; ++n)
      o.expect(oneil_estimate(n, 1) == factorial(n).convert_to<double>(), "k=1 n=" + std::to_string(n));
  });

  criterion(15, "sharding-determinism", [](Outcome& o) {
    std::vector<std::string> csv;
    for (std::size_t shards : {1U, 4U, 16U}) {
      HistogramOptions opts;
      opts.shards = shards;
      csv.push_back(inversion_histogram(6, opts).to_csv());
    }
    o.detail << " csv bytes:" << csv[0].size();
    o.expect(csv[0] == csv[1] && csv[0] == csv[2], "identical CSV for 1, 4, 16 shards");
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
