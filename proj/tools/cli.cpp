#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bruhat/class_enum.hpp"
#include "bruhat/constructions.hpp"
#include "bruhat/errors.hpp"
#include "bruhat/matrix_io.hpp"
#include "bruhat/order.hpp"
#include "bruhat/parallel.hpp"
#include "bruhat/poset_metrics.hpp"
#include "manifest.hpp"

namespace bruhat::cli {

namespace {

using json = nlohmann::ordered_json;

struct Common {
  unsigned threads = 0;
  std::size_t shards = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> argv;
};

struct ClassArgs {
  std::vector<unsigned> regular;
  std::vector<std::uint32_t> row_sums;
  std::vector<std::uint32_t> col_sums;

  void add_to(CLI::App* app) {
    app->add_option("--regular", regular, "square class A(n,k): n k")->expected(2);
    app->add_option("--row-sums", row_sums, "comma-separated row sums")->delimiter(',');
    app->add_option("--col-sums", col_sums, "comma-separated column sums")->delimiter(',');
  }

  Margins margins() const {
    const bool sums = !row_sums.empty() || !col_sums.empty();
    if (!regular.empty() && sums) throw ParseError("give either --regular or --row-sums/--col-sums");
    if (!regular.empty()) return Margins::regular(regular[0], regular[1]);
    if (row_sums.empty() || col_sums.empty()) {
      throw ParseError("a class needs --regular n k or both --row-sums and --col-sums");
    }
    return Margins{row_sums, col_sums};
  }
};

std::uint64_t enumeration_budget() {
  if (const char* env = std::getenv("BRUHAT_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError(std::string("BRUHAT_BUDGET is not an integer: ") + env);
    }
  }
  return kDefaultEnumerationBudget;
}

// Writes to --out when given, otherwise to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ParseError("cannot write " + path);
    }
    stream_ = file_ ? file_.get() : &fallback;
  }
  std::ostream& stream() { return *stream_; }
  bool to_file() const { return file_ != nullptr; }
  void close() {
    if (file_) file_->close();
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void write_manifest(const Common& common, const Clock& clock, std::vector<std::string> outputs,
                    bool seeded) {
  if (outputs.empty()) return;
  RunManifest m;
  m.command_line = common.argv;
  if (seeded) m.seed = common.seed;
  m.threads = resolve_threads(common.threads);
  m.shards = common.shards ? common.shards : m.threads;
  m.wall_seconds = clock.seconds();
  m.outputs = outputs;
  m.write(outputs.front() + ".manifest.json");
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write " + path);
  f << j.dump(2) << '\n';
}

// ---- enumerate -----------------------------------------------------------

struct EnumerateArgs {
  ClassArgs cls;
  bool count_only = false;
  bool json_count = false;
  std::string format = "text";
  std::string out;
};

int cmd_enumerate(const EnumerateArgs& a, const Common& common, std::ostream& out,
                  std::ostream& err) {
  const Clock clock;
  const Margins margins = a.cls.margins();
  if (!feasible(margins)) throw InfeasibleMargins("class " + to_string(margins) + " is empty");
  auto count_json = [&](const BigInt& c) {
    json j;
    j["class"] = to_json(margins);
    j["count"] = to_decimal(c);
    return j;
  };
  if (a.count_only) {
    const BigInt c = count_class(margins);
    if (a.json_count) {
      out << count_json(c).dump() << '\n';
    } else {
      out << c << '\n';
    }
    return kOk;
  }
  const std::uint64_t budget = enumeration_budget();
  if (const BigInt size = count_class(margins); size > budget) {
    throw BudgetExceeded("class has " + size.str() + " members, over the budget of " +
                         std::to_string(budget) + " (set BRUHAT_BUDGET)");
  }
  Sink sink(a.out, out);
  std::ostream& s = sink.stream();
  BigInt count;
  if (a.format == "json") {
    json arr = json::array();
    count = enumerate_class(margins, [&](const BinaryMatrix& m) { arr.push_back(to_json(m)); });
    s << arr.dump() << '\n';
  } else {
    bool first = true;
    count = enumerate_class(margins, [&](const BinaryMatrix& m) {
      if (!first) s << '\n';
      first = false;
      write_matrix_text(s, m);
    });
  }
  sink.close();
  (sink.to_file() ? out : err) << count_json(count).dump() << '\n';
  if (sink.to_file()) write_manifest(common, clock, {a.out}, false);
  return kOk;
}

// ---- construct -----------------------------------------------------------

struct ConstructArgs {
  std::string kind;
  unsigned n = 0;
  unsigned k = 0;
  std::string d1, d2, d3;
  bool allow_degenerate = false;
  std::string out;
  bool stream = false;
  std::optional<Count> sample;
};

json stream_predictions(const ProductStream& s, Provenance p, const BigInt& size) {
  ConstructedAntichain shell;
  shell.provenance = p;
  shell.margins = s.margins();
  shell.predicted_size = size;
  return shell.predictions_json();
}

int cmd_construct(const ConstructArgs& a, const Common& common, std::ostream& out,
                  std::ostream& err) {
  const Clock clock;
  std::optional<ConstructedAntichain> built;
  std::optional<ProductStream> stream;
  json predictions;

  if (a.kind == "even" || a.kind == "odd") {
    built = a.kind == "even" ? even_antichain(a.n) : odd_antichain(a.n);
    predictions = built->predictions_json();
  } else if (a.kind == "half-regular") {
    stream.emplace(half_regular_stream(a.k));
    predictions = stream_predictions(*stream, Provenance::HalfRegular, g_bound(a.k));
  } else if (a.kind == "remark") {
    stream.emplace(remark_improved_stream(a.k));
    predictions = stream_predictions(*stream, Provenance::RemarkImproved, remark_bound(a.k));
  } else {
    stream.emplace(AntichainFactor::from_members(read_matrices_file(a.d1)),
                   AntichainFactor::from_members(read_matrices_file(a.d2)),
                   AntichainFactor::from_members(read_matrices_file(a.d3)),
                   ProductOptions{.allow_degenerate_case1 = a.allow_degenerate});
    predictions = stream_predictions(*stream, Provenance::Product, stream->size());
  }

  if (a.sample) {
    const AntichainCertificate cert =
        built ? verify_antichain(built->members, VerifyOptions::sampled(*a.sample, common.seed))
              : sample_verify(*stream, *a.sample, common.seed);
    json j;
    j["predictions"] = predictions;
    j["certificate"] = cert.to_json();
    out << j.dump() << '\n';
    return cert.refuted() ? kRefuted : kOk;
  }

  if (stream && !a.stream) built = materialize(*stream, Provenance::Product);

  Sink sink(a.out, out);
  std::ostream& s = sink.stream();
  if (built) {
    write_matrices_text(s, built->members);
  } else {
    bool first = true;
    stream->for_each([&](const BinaryMatrix& m) {
      if (!first) s << '\n';
      first = false;
      write_matrix_text(s, m);
    });
  }
  sink.close();
  if (sink.to_file()) {
    const std::string pred_path = a.out + ".predictions.json";
    write_json_file(pred_path, predictions);
    out << predictions.dump() << '\n';
    write_manifest(common, clock, {a.out, pred_path}, false);
  } else {
    err << predictions.dump() << '\n';
  }
  return kOk;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  std::string input;
  std::optional<Count> sampled;
  std::string out;
};

int cmd_verify(const VerifyArgs& a, const Common& common, std::ostream& out) {
  const Clock clock;
  const std::vector<BinaryMatrix> members = read_matrices_file(a.input);
  if (members.empty()) throw ParseError(a.input + " holds no matrices");
  const VerifyOptions opts = a.sampled ? VerifyOptions::sampled(*a.sampled, common.seed)
                                       : VerifyOptions::exhaustive(common.threads);
  const AntichainCertificate cert = verify_antichain(members, opts);
  out << cert.to_json().dump() << '\n';
  if (!a.out.empty()) {
    write_json_file(a.out, cert.to_json());
    write_manifest(common, clock, {a.out}, a.sampled.has_value());
  }
  return cert.refuted() ? kRefuted : kOk;
}

// ---- metrics -------------------------------------------------------------

struct MetricsArgs {
  std::string reproduce;
  bool long_running = false;
  unsigned n = 0;
  unsigned k = 0;
  ClassArgs cls;
  bool exact = false;
  bool witness = false;
  std::string family = "an2";
  bool with_histogram = false;
  std::string out;
};

HistogramOptions histogram_options(const MetricsArgs& a, const Common& common) {
  HistogramOptions h;
  h.threads = common.threads;
  h.shards = common.shards;
  h.budget = enumeration_budget();
  h.long_running = a.long_running;
  return h;
}

std::vector<BinaryMatrix> class_members(const Margins& margins, std::uint64_t budget) {
  if (!feasible(margins)) throw InfeasibleMargins("class " + to_string(margins) + " is empty");
  if (const BigInt size = count_class(margins); size > budget) {
    throw BudgetExceeded("class has " + size.str() + " members, over the budget of " +
                         std::to_string(budget));
  }
  return collect_class(margins);
}

int metrics_reproduce(const MetricsArgs& a, const Common& common, std::ostream& out) {
  if (a.reproduce != "table1") throw ParseError("unknown reproduction target: " + a.reproduce);
  const unsigned last = a.long_running ? 8 : 7;
  bool all_ok = true;
  out << "n,computed,argmax_nu,published,status\n";
  for (const Table1Row& row : reproduce_table1(3, last, histogram_options(a, common))) {
    std::string status = row.matches() ? "match" : "MISMATCH";
    if (row.n == 6) {
      if (row.computed == *row.published) {
        status = "matches-table(4086);text-says-" + std::to_string(kPublishedTextN6);
      } else if (row.computed == kPublishedTextN6) {
        status = "matches-text(4108);table-says-" + std::to_string(*row.published);
      } else {
        status = "MISMATCH-both";
      }
    }
    if (status.find("MISMATCH") != std::string::npos) all_ok = false;
    out << row.n << ',' << row.computed << ',' << row.argmax << ','
        << (row.published ? std::to_string(*row.published) : "") << ',' << status << '\n';
  }
  return all_ok ? kOk : kRefuted;
}

int metrics_histogram(const MetricsArgs& a, const Common& common, std::ostream& out,
                      std::ostream& err) {
  const Clock clock;
  const HistogramReport h = inversion_histogram(a.n, histogram_options(a, common));
  Sink sink(a.out, out);
  sink.stream() << h.to_csv();
  sink.close();
  json summary;
  summary["n"] = h.n;
  summary["total"] = std::to_string(h.total);
  summary["max_nu"] = h.max_bucket.first;
  summary["max_count"] = std::to_string(h.max_bucket.second);
  (sink.to_file() ? out : err) << summary.dump() << '\n';
  if (sink.to_file()) write_manifest(common, clock, {a.out}, false);
  return kOk;
}

int metrics_width(const MetricsArgs& a, const Common& common, std::ostream& out) {
  const Margins margins = a.cls.margins();
  json j;
  j["class"] = to_json(margins);
  if (!a.exact) {
    const bool an2 = margins.row_sums.size() == margins.col_sums.size() &&
                     margins == Margins::regular(margins.row_sums.size(), 2);
    if (!an2) throw ParseError("bounds without --exact exist only for A(n,2)");
    const auto n = static_cast<unsigned>(margins.row_sums.size());
    const HistogramReport h = inversion_histogram(n, histogram_options(a, common));
    j["bounds"] = width_bounds_report(Family::An2, n, h).to_json();
    out << j.dump() << '\n';
    return kOk;
  }
  const std::vector<BinaryMatrix> members = class_members(margins, enumeration_budget());
  const WidthResult w = exact_width(members, kWidthCap, common.threads);
  j["class_size"] = std::to_string(members.size());
  j["width"] = w.width;
  if (a.witness) {
    json wit = json::array();
    for (std::size_t i : w.antichain) wit.push_back(to_json(members[i]));
    j["witness"] = std::move(wit);
  }
  out << j.dump() << '\n';
  return kOk;
}

int metrics_height(const MetricsArgs& a, std::ostream& out) {
  const Margins margins = a.cls.margins();
  const std::vector<BinaryMatrix> members = class_members(margins, enumeration_budget());
  const HeightResult h =
      exact_height(members, a.long_running ? kHeightLongRunningCap : kHeightCap);
  json j;
  j["class"] = to_json(margins);
  j["class_size"] = std::to_string(members.size());
  j["height"] = h.height;
  j["equal_nu_comparable_pairs"] = h.equal_nu_comparable_pairs;
  if (a.witness) {
    json chain = json::array();
    for (std::size_t i : h.chain) chain.push_back(to_json(members[i]));
    j["witness"] = std::move(chain);
  }
  out << j.dump() << '\n';
  return kOk;
}

int metrics_bounds(const MetricsArgs& a, const Common& common, std::ostream& out) {
  std::string fam = a.family;
  std::transform(fam.begin(), fam.end(), fam.begin(), ::tolower);
  if (fam == "an2") {
    std::optional<HistogramReport> h;
    if (a.with_histogram) h = inversion_histogram(a.n, histogram_options(a, common));
    out << width_bounds_report(Family::An2, a.n, h).to_json().dump() << '\n';
  } else if (fam == "a2kk") {
    out << width_bounds_report(Family::A2kk, a.k).to_json().dump() << '\n';
  } else {
    throw ParseError("unknown family " + a.family + " (an2 or a2kk)");
  }
  return kOk;
}

int metrics_problem(const MetricsArgs& a, std::ostream& out) {
  const Margins margins = a.cls.margins();
  if (!feasible(margins)) throw InfeasibleMargins("class " + to_string(margins) + " is empty");
  const auto w = nu_problem_search(margins, enumeration_budget());
  json j;
  j["class"] = to_json(margins);
  if (w) {
    j["witness"] = {{"first", to_json(w->first)},
                    {"second", to_json(w->second)},
                    {"nu", w->nu},
                    {"relation", std::string(to_string(w->relation))}};
  } else {
    j["witness"] = nullptr;
  }
  out << j.dump() << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Antichains in the Bruhat order of (0,1)-matrix classes"};
  app.require_subcommand(1);
  Common common;
  common.argv = args;
  app.add_option("--threads", common.threads, "worker threads (0 = all)");
  app.add_option("--shards", common.shards, "enumeration shards (0 = one per thread)");
  app.add_option("--seed", common.seed, "seed for sampled checks");

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "list or count a class A(R,S)");
  en.cls.add_to(enumerate);
  enumerate->add_flag("--count-only", en.count_only, "print the class size only");
  enumerate->add_flag("--json", en.json_count, "with --count-only, print the count as JSON");
  enumerate->add_option("--format", en.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  enumerate->add_option("--out", en.out, "write members to FILE");

  ConstructArgs co;
  auto* construct = app.add_subcommand("construct", "build an antichain");
  construct->require_subcommand(1);
  auto add_common_construct = [&co](CLI::App* sub) {
    sub->add_option("--out", co.out, "write members to FILE");
    sub->add_flag("--stream", co.stream, "emit members one at a time");
    sub->add_option("--sample", co.sample, "verify P random pairs instead of emitting members");
  };
  auto* c_even = construct->add_subcommand("even", "self-conjugate antichain in A(n,2), n even");
  c_even->add_option("-n", co.n)->required();
  auto* c_odd = construct->add_subcommand("odd", "antichain in A(n,2), n odd");
  c_odd->add_option("-n", co.n)->required();
  auto* c_half = construct->add_subcommand("half-regular", "product antichain in A(2k,k)");
  c_half->add_option("-k", co.k)->required();
  auto* c_remark = construct->add_subcommand("remark", "improved antichain in A(2k,k), 4 | k");
  c_remark->add_option("-k", co.k)->required();
  auto* c_product = construct->add_subcommand("product", "product of three antichain files");
  c_product->add_option("--d1", co.d1, "pattern antichain")->required();
  c_product->add_option("--d2", co.d2, "blocks for 1-cells")->required();
  c_product->add_option("--d3", co.d3, "blocks for 0-cells")->required();
  c_product->add_flag("--allow-degenerate-case1", co.allow_degenerate,
                      "accept u' = u'' when the pattern file has one matrix");
  for (auto* sub : {c_even, c_odd, c_half, c_remark, c_product}) add_common_construct(sub);

  VerifyArgs ve;
  auto* verify = app.add_subcommand("verify", "certify that a matrix file is an antichain");
  verify->add_option("file", ve.input)->required();
  verify->add_option("--sampled", ve.sampled, "check N random pairs");
  verify->add_option("--out", ve.out, "write the certificate to FILE");

  MetricsArgs me;
  auto* metrics = app.add_subcommand("metrics", "histograms, widths, heights, bounds");
  metrics->add_option("--reproduce", me.reproduce, "table1");
  metrics->add_flag("--long-running", me.long_running, "lift enumeration caps");
  auto* m_hist = metrics->add_subcommand("histogram", "inversion histogram of A(n,2) as CSV");
  m_hist->add_option("-n", me.n)->required();
  m_hist->add_option("--out", me.out);
  m_hist->add_flag("--long-running", me.long_running);
  auto* m_width = metrics->add_subcommand("width", "width of a class");
  me.cls.add_to(m_width);
  m_width->add_flag("--exact", me.exact, "exact width by chain cover");
  m_width->add_flag("--witness", me.witness, "print a maximum antichain");
  auto* m_height = metrics->add_subcommand("height", "exact height of a class");
  me.cls.add_to(m_height);
  m_height->add_flag("--witness", me.witness, "print a maximum chain");
  m_height->add_flag("--long-running", me.long_running);
  auto* m_bounds = metrics->add_subcommand("bounds", "closed-form width bounds");
  m_bounds->add_option("--family", me.family, "an2 or a2kk");
  m_bounds->add_option("-n", me.n);
  m_bounds->add_option("-k", me.k);
  m_bounds->add_flag("--with-histogram", me.with_histogram, "include the max nu-level bound");
  auto* m_problem = metrics->add_subcommand("problem-search",
                                            "equal-nu comparable pair in a class");
  me.cls.add_to(m_problem);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadInput;
  }

  try {
    if (enumerate->parsed()) return cmd_enumerate(en, common, out, err);
    if (construct->parsed()) {
      for (auto* sub : construct->get_subcommands()) co.kind = sub->get_name();
      return cmd_construct(co, common, out, err);
    }
    if (verify->parsed()) return cmd_verify(ve, common, out);
    if (metrics->parsed()) {
      if (!me.reproduce.empty()) return metrics_reproduce(me, common, out);
      if (m_hist->parsed()) return metrics_histogram(me, common, out, err);
      if (m_width->parsed()) return metrics_width(me, common, out);
      if (m_height->parsed()) return metrics_height(me, out);
      if (m_bounds->parsed()) return metrics_bounds(me, common, out);
      if (m_problem->parsed()) return metrics_problem(me, out);
      err << "metrics needs a subcommand or --reproduce table1\n";
      return kBadInput;
    }
  } catch (const HypothesisViolation& e) {
    err << "error: " << e.what() << '\n';
    return kHypothesis;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace bruhat::cli
