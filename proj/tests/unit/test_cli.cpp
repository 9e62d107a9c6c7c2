#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bruhat/constructions.hpp"
#include "bruhat/matrix_io.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;
using bruhat::BinaryMatrix;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = bruhat::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("bruhat-cli-test-" + std::to_string(std::rand()) + "-" +
                                         std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
}

std::vector<BinaryMatrix> parse(const std::string& text) {
  std::istringstream in(text);
  return bruhat::read_matrices(in);
}

}  // namespace

TEST_CASE("cli enumerate") {
  const auto count = run({"enumerate", "--regular", "3", "2", "--count-only"});
  CHECK(count.code == 0);
  CHECK(count.out == "6\n");

  const auto js = run({"enumerate", "--regular", "6", "2", "--count-only", "--json"});
  CHECK(js.out == "{\"class\":{\"R\":[2,2,2,2,2,2],\"S\":[2,2,2,2,2,2]},\"count\":\"67950\"}\n");

  const auto stream = run({"enumerate", "--row-sums", "1,1", "--col-sums", "1,1"});
  CHECK(stream.code == 0);
  CHECK(parse(stream.out) ==
        std::vector<BinaryMatrix>{BinaryMatrix::identity(2), BinaryMatrix::from_rows({"01", "10"})});
  CHECK(stream.err.find("\"count\":\"2\"") != std::string::npos);

  const auto json_fmt = run({"enumerate", "--regular", "3", "2", "--format", "json"});
  CHECK(parse(json_fmt.out).size() == 6);

  CHECK(run({"enumerate", "--row-sums", "2", "--col-sums", "1"}).code == 2);
  CHECK(run({"enumerate"}).code == 2);
  CHECK(run({"enumerate", "--regular", "3"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
}

TEST_CASE("cli enumerate budget and output files") {
  TempDir dir;
  const std::string path = dir.file("a42.txt");
  const auto r = run({"enumerate", "--regular", "4", "2", "--out", path});
  CHECK(r.code == 0);
  std::ifstream f(path);
  CHECK(bruhat::read_matrices(f).size() == 90);
  CHECK(fs::exists(path + ".manifest.json"));
  std::ifstream mf(path + ".manifest.json");
  const auto manifest = nlohmann::json::parse(mf);
  CHECK(manifest.contains("outputs"));

  setenv("BRUHAT_BUDGET", "10", 1);
  CHECK(run({"enumerate", "--regular", "4", "2"}).code == 3);
  unsetenv("BRUHAT_BUDGET");
}

TEST_CASE("cli construct") {
  const auto even = run({"construct", "even", "-n", "4"});
  CHECK(even.code == 0);
  CHECK(parse(even.out).size() == 6);
  const auto pred = nlohmann::json::parse(even.err);
  CHECK(pred["size"] == "6");
  CHECK(pred["nu"] == 10);

  CHECK(parse(run({"construct", "odd", "-n", "5"}).out).size() == 12);
  CHECK(parse(run({"construct", "half-regular", "-k", "3"}).out).size() == 16);
  CHECK(parse(run({"construct", "half-regular", "-k", "3", "--stream"}).out).size() == 16);

  const auto remark = run({"construct", "remark", "-k", "8"});
  CHECK(remark.code == 4);
  CHECK(remark.err.find("u' = u'' = 8") != std::string::npos);

  CHECK(run({"construct", "even", "-n", "5"}).code == 2);
  CHECK(run({"construct", "remark", "-k", "12"}).code == 3);

  const auto sampled = run({"--seed", "3", "construct", "remark", "-k", "12", "--sample", "200"});
  CHECK(sampled.code == 0);
  const auto sj = nlohmann::json::parse(sampled.out);
  CHECK(sj["certificate"]["status"] == "sampled");
  CHECK(sj["certificate"]["checked_pairs"] == 200);
  CHECK(sj["predictions"]["size"] == bruhat::to_decimal(bruhat::remark_bound(12)));
}

TEST_CASE("cli construct product from files") {
  TempDir dir;
  write_file(dir.file("d1.txt"), "10\n01\n");
  REQUIRE(run({"construct", "odd", "-n", "3", "--out", dir.file("d2.txt")}).code == 0);
  std::ifstream d2f(dir.file("d2.txt"));
  const auto d2 = bruhat::read_matrices(d2f);
  std::ostringstream d3text;
  bruhat::write_matrices_text(d3text, bruhat::complement_antichain(d2));
  write_file(dir.file("d3.txt"), d3text.str());

  const auto r = run({"construct", "product", "--d1", dir.file("d1.txt"), "--d2", dir.file("d2.txt"), "--d3",
                      dir.file("d3.txt")});
  CHECK(r.code == 0);
  CHECK(parse(r.out).size() == 16);

  write_file(dir.file("d4.txt"), "1100\n0011\n1100\n0011\n");
  const auto bad = run({"construct", "product", "--d1", dir.file("d1.txt"), "--d2", dir.file("d2.txt"),
                        "--d3", dir.file("d4.txt")});
  CHECK(bad.code == 2);
}

TEST_CASE("cli verify") {
  TempDir dir;
  const std::string even6 = dir.file("even6.txt");
  REQUIRE(run({"construct", "even", "-n", "6", "--out", even6}).code == 0);
  CHECK(fs::exists(even6 + ".predictions.json"));
  const auto ok = run({"verify", even6});
  CHECK(ok.code == 0);
  const auto cert = nlohmann::json::parse(ok.out);
  CHECK(cert["status"] == "verified");
  CHECK(cert["checked_pairs"] == 4005);

  const std::string pair = dir.file("pair.txt");
  write_file(pair, "10\n01\n\n01\n10\n");
  const auto bad = run({"verify", pair});
  CHECK(bad.code == 1);
  CHECK(nlohmann::json::parse(bad.out)["witness"] == nlohmann::json::array({0, 1}));

  const std::string empty = dir.file("empty.txt");
  write_file(empty, "");
  CHECK(run({"verify", empty}).code == 2);
  CHECK(run({"verify", dir.file("missing.txt")}).code == 2);

  const std::string mixed = dir.file("mixed.txt");
  write_file(mixed, "10\n01\n\n11\n11\n");
  CHECK(run({"verify", mixed}).code == 2);

  const auto sampled = run({"verify", even6, "--sampled", "100"});
  CHECK(sampled.code == 0);
  CHECK(nlohmann::json::parse(sampled.out)["status"] == "sampled");
}

TEST_CASE("cli metrics") {
  const auto hist = run({"metrics", "histogram", "-n", "4"});
  CHECK(hist.code == 0);
  std::istringstream csv(hist.out);
  std::string line;
  std::getline(csv, line);
  CHECK(line == "nu,count");
  unsigned long best = 0;
  while (std::getline(csv, line)) best = std::max(best, std::stoul(line.substr(line.find(',') + 1)));
  CHECK(best == 13);

  const auto width = run({"metrics", "width", "--regular", "4", "2", "--exact"});
  CHECK(width.code == 0);
  CHECK(nlohmann::json::parse(width.out)["width"] == 13);

  const auto witness = run({"metrics", "width", "--regular", "3", "2", "--exact", "--witness"});
  CHECK(nlohmann::json::parse(witness.out)["witness"].size() == 2);

  const auto height = run({"metrics", "height", "--regular", "4", "2"});
  CHECK(nlohmann::json::parse(height.out)["height"] == 17);

  const auto bounds = run({"metrics", "bounds", "--family", "a2kk", "-k", "4"});
  CHECK(bounds.code == 0);
  CHECK(nlohmann::json::parse(bounds.out)["width_lower_bounds"]["g"] == "1296");
  CHECK(run({"metrics", "bounds", "--family", "xyz", "-k", "4"}).code == 2);

  const auto problem = run({"metrics", "problem-search", "--regular", "4", "2"});
  CHECK(problem.code == 0);
  CHECK(nlohmann::json::parse(problem.out)["witness"].is_null());

  const auto table = run({"metrics", "--reproduce", "table1"});
  CHECK(table.code == 0);
  CHECK(table.out.find("6,4108,27,4086,matches-text(4108);table-says-4086") != std::string::npos);
  CHECK(table.out.find("7,142468,") != std::string::npos);
}
