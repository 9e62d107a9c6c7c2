#include "bruhat/poset_metrics.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>

#include "bruhat/class_enum.hpp"
#include "bruhat/constructions.hpp"
#include "bruhat/errors.hpp"
#include "bruhat/parallel.hpp"

namespace bruhat {

namespace {

void check_budget(const Margins& margins, std::uint64_t budget, bool long_running) {
  if (long_running) return;
  const BigInt size = count_class(margins);
  if (size > budget) {
    throw BudgetExceeded("class " + to_string(margins) + " has " + size.str() +
                         " members, over the budget of " + std::to_string(budget));
  }
}

void require_members_one_class(std::span<const BinaryMatrix> members) {
  for (std::size_t i = 1; i < members.size(); ++i) require_same_class(members.front(), members[i]);
}

std::vector<SigmaTable> sigmas_of(std::span<const BinaryMatrix> members) {
  std::vector<SigmaTable> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(sigma_table(m));
  return out;
}

}  // namespace

Count HistogramReport::bucket(Count nu) const {
  auto it = buckets.find(nu);
  return it == buckets.end() ? 0 : it->second;
}

std::vector<Count> HistogramReport::argmax_all() const {
  std::vector<Count> out;
  for (const auto& [nu, count] : buckets)
    if (count == max_bucket.second) out.push_back(nu);
  return out;
}

std::string HistogramReport::to_csv() const {
  std::ostringstream os;
  os << "nu,count\n";
  for (const auto& [nu, count] : buckets) os << nu << ',' << count << '\n';
  return os.str();
}

HistogramReport inversion_histogram(unsigned n, const HistogramOptions& opts) {
  if (n < 2) throw RangeError("histogram needs n >= 2");
  const Margins margins = Margins::regular(n, 2);
  check_budget(margins, opts.budget, opts.long_running);

  const unsigned threads = resolve_threads(opts.threads);
  const std::size_t shards = opts.shards ? opts.shards : threads;
  const std::size_t max_nu = (2 * std::size_t{n}) * (2 * std::size_t{n} - 1) / 2;
  std::vector<std::vector<Count>> per_shard(shards);
  for_each_shard(margins, shards, threads, [&](std::size_t s, const EnumerationPlan& plan) {
    std::vector<Count> local(max_nu + 1, 0);
    enumerate_class(plan, [&local](const BinaryMatrix& a) { ++local[inversions(a)]; });
    per_shard[s] = std::move(local);
  });

  std::vector<Count> merged(max_nu + 1, 0);
  for (const auto& local : per_shard)
    for (std::size_t t = 0; t <= max_nu; ++t) merged[t] += local[t];

  HistogramReport report;
  report.n = n;
  for (std::size_t t = 0; t <= max_nu; ++t) {
    if (merged[t] == 0) continue;
    report.buckets.emplace(t, merged[t]);
    report.total += merged[t];
    if (merged[t] > report.max_bucket.second) report.max_bucket = {t, merged[t]};
  }
  return report;
}

std::optional<Count> published_table1(unsigned n) {
  switch (n) {
    case 3: return 2;
    case 4: return 13;
    case 5: return 161;
    case 6: return 4086;
    case 7: return 142468;
    case 8: return 7033816;
    case 9: return 450066504;
    default: return std::nullopt;
  }
}

std::vector<Table1Row> reproduce_table1(unsigned first_n, unsigned last_n,
                                        const HistogramOptions& opts) {
  std::vector<Table1Row> rows;
  for (unsigned n = first_n; n <= last_n; ++n) {
    const HistogramReport h = inversion_histogram(n, opts);
    rows.push_back(Table1Row{n, h.max_bucket.second, h.max_bucket.first, published_table1(n)});
  }
  return rows;
}

namespace {

// Hopcroft-Karp over left/right copies of the members; edge u -> v iff
// member u strictly precedes member v.
class ChainCover {
 public:
  explicit ChainCover(std::vector<std::vector<std::uint32_t>> adj)
      : adj_(std::move(adj)),
        n_(adj_.size()),
        match_left_(n_, kFree),
        match_right_(n_, kFree),
        dist_(n_) {}

  std::size_t max_matching() {
    std::size_t matched = 0;
    while (bfs()) {
      for (std::uint32_t u = 0; u < n_; ++u)
        if (match_left_[u] == kFree && dfs(u)) ++matched;
    }
    return matched;
  }

  // Left vertices in the Koenig set Z are reached from free left vertices by
  // alternating paths; the antichain is {x : left x in Z, right x not in Z}.
  std::vector<std::size_t> antichain() const {
    std::vector<bool> left_z(n_, false);
    std::vector<bool> right_z(n_, false);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t u = 0; u < n_; ++u) {
      if (match_left_[u] == kFree) {
        left_z[u] = true;
        queue.push_back(u);
      }
    }
    while (!queue.empty()) {
      const std::uint32_t u = queue.front();
      queue.pop_front();
      for (std::uint32_t v : adj_[u]) {
        if (right_z[v]) continue;
        right_z[v] = true;
        const std::uint32_t w = match_right_[v];
        if (w != kFree && !left_z[w]) {
          left_z[w] = true;
          queue.push_back(w);
        }
      }
    }
    std::vector<std::size_t> out;
    for (std::uint32_t x = 0; x < n_; ++x)
      if (left_z[x] && !right_z[x]) out.push_back(x);
    return out;
  }

 private:
  static constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();
  static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

  bool bfs() {
    std::deque<std::uint32_t> queue;
    bool found = false;
    for (std::uint32_t u = 0; u < n_; ++u) {
      if (match_left_[u] == kFree) {
        dist_[u] = 0;
        queue.push_back(u);
      } else {
        dist_[u] = kInf;
      }
    }
    while (!queue.empty()) {
      const std::uint32_t u = queue.front();
      queue.pop_front();
      for (std::uint32_t v : adj_[u]) {
        const std::uint32_t w = match_right_[v];
        if (w == kFree) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::uint32_t u) {
    for (std::uint32_t v : adj_[u]) {
      const std::uint32_t w = match_right_[v];
      if (w == kFree || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  std::vector<std::vector<std::uint32_t>> adj_;
  std::uint32_t n_;
  std::vector<std::uint32_t> match_left_;
  std::vector<std::uint32_t> match_right_;
  std::vector<std::uint32_t> dist_;
};

}  // namespace

WidthResult exact_width(std::span<const BinaryMatrix> members, std::size_t cap, unsigned threads) {
  if (members.size() > cap) {
    throw BudgetExceeded("width computation capped at " + std::to_string(cap) + " members, got " +
                         std::to_string(members.size()));
  }
  WidthResult result;
  if (members.empty()) return result;
  require_members_one_class(members);
  const std::vector<SigmaTable> sigmas = sigmas_of(members);
  const std::size_t n = members.size();

  std::vector<std::vector<std::uint32_t>> adj(n);
  parallel_for(n, threads, [&](std::size_t u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (v != u && compare_sigma(sigmas[u], sigmas[v]) == OrderRelation::Less) {
        adj[u].push_back(static_cast<std::uint32_t>(v));
      }
    }
  });

  ChainCover cover(std::move(adj));
  const std::size_t matched = cover.max_matching();
  result.width = n - matched;
  result.antichain = cover.antichain();
  if (result.antichain.size() != result.width) {
    throw std::logic_error("Koenig antichain has " + std::to_string(result.antichain.size()) +
                           " members, expected " + std::to_string(result.width));
  }
  return result;
}

HeightResult exact_height(std::span<const BinaryMatrix> members, std::size_t cap) {
  if (members.size() > cap) {
    throw BudgetExceeded("height computation capped at " + std::to_string(cap) + " members, got " +
                         std::to_string(members.size()));
  }
  HeightResult result;
  if (members.empty()) return result;
  require_members_one_class(members);
  const std::vector<SigmaTable> sigmas = sigmas_of(members);
  const std::size_t n = members.size();
  std::vector<Count> nu(n);
  std::vector<std::uint64_t> weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    nu[i] = inversions(members[i]);
    const auto v = sigmas[i].values();
    weight[i] = std::accumulate(v.begin(), v.end(), std::uint64_t{0});
  }

  // A strictly below C forces the total of Sigma_A above that of Sigma_C,
  // so decreasing totals is a topological order; nu breaks ties.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (weight[x] != weight[y]) return weight[x] > weight[y];
    if (nu[x] != nu[y]) return nu[x] < nu[y];
    return x < y;
  });

  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<Count> longest(n, 1);
  std::vector<std::size_t> pred(n, none);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t c = order[t];
    for (std::size_t s = 0; s < t; ++s) {
      const std::size_t a = order[s];
      if (compare_sigma(sigmas[a], sigmas[c]) != OrderRelation::Less) continue;
      if (nu[a] == nu[c]) ++result.equal_nu_comparable_pairs;
      const Count cand = longest[a] + 1;
      if (cand > longest[c] || (cand == longest[c] && pred[c] != none && a < pred[c])) {
        longest[c] = cand;
        pred[c] = a;
      }
    }
  }

  std::size_t top = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (longest[i] > longest[top]) top = i;
  result.height = longest[top];
  for (std::size_t x = top; x != none; x = pred[x]) result.chain.push_back(x);
  std::reverse(result.chain.begin(), result.chain.end());
  return result;
}

BigInt height_formula_an2(unsigned n) {
  return BigInt(2) * n * (static_cast<long long>(n) - 2) + (n % 2 == 0 ? 1 : 0);
}

nlohmann::ordered_json PosetSummary::to_json() const {
  auto opt = [](const std::optional<Count>& v) {
    return v ? nlohmann::ordered_json(std::to_string(*v)) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j;
  j["family"] = family == Family::An2 ? "An2" : "A2kk";
  j[family == Family::An2 ? "n" : "k"] = parameter;
  j["class_size"] = to_decimal(class_size);
  j["width"] = opt(width);
  j["height"] = opt(height);
  j["height_formula"] = to_decimal(height_formula);
  nlohmann::ordered_json bounds;
  bounds["average_bound_floor"] = to_decimal(average_bound_floor);
  bounds["average_bound_ceil"] = to_decimal(average_bound_ceil);
  bounds["average_bound_exact_division"] = average_bound_floor == average_bound_ceil;
  bounds[family == Family::An2 ? "f" : "g"] = to_decimal(formula_bound);
  bounds["max_nu_level"] = opt(max_nu_level);
  j["width_lower_bounds"] = std::move(bounds);
  return j;
}

PosetSummary width_bounds_report(Family family, unsigned parameter,
                                 const std::optional<HistogramReport>& histogram) {
  PosetSummary s;
  s.family = family;
  s.parameter = parameter;
  if (family == Family::An2) {
    if (parameter < 3) throw RangeError("A(n,2) bounds need n >= 3");
    s.class_size = count_class(Margins::regular(parameter, 2));
    s.height_formula = height_formula_an2(parameter);
    s.formula_bound = f_bound(parameter);
    if (histogram && histogram->n == parameter) s.max_nu_level = histogram->max_bucket.second;
  } else {
    if (parameter < 2) throw RangeError("A(2k,k) bounds need k >= 2");
    s.class_size = count_class(Margins::regular(2 * std::size_t{parameter}, parameter));
    s.height_formula = pow(BigInt(parameter), 4) + 1;
    s.formula_bound = g_bound(parameter);
  }
  s.average_bound_floor = s.class_size / s.height_formula;
  s.average_bound_ceil = s.average_bound_floor + (s.class_size % s.height_formula != 0 ? 1 : 0);
  return s;
}

std::optional<ProblemWitness> nu_problem_search(const Margins& margins, std::uint64_t budget) {
  check_budget(margins, budget, false);
  std::map<Count, std::vector<BinaryMatrix>> levels;
  enumerate_class(margins, [&](const BinaryMatrix& a) { levels[inversions(a)].push_back(a); });
  for (const auto& [nu, level] : levels) {
    const std::vector<SigmaTable> sigmas = sigmas_of(level);
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        const OrderRelation r = compare_sigma(sigmas[i], sigmas[j]);
        if (r != OrderRelation::Incomparable) return ProblemWitness{level[i], level[j], nu, r};
      }
    }
  }
  return std::nullopt;
}

}  // namespace bruhat
