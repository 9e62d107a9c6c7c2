#include "bruhat/matrix_io.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <optional>
#include <iterator>
#include <ostream>
#include <sstream>

#include "bruhat/errors.hpp"

namespace bruhat {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct Header {
  std::size_t rows = 0;
  std::size_t cols = 0;
};

Header parse_header(const std::string& line, std::size_t line_no) {
  std::istringstream is(line.substr(1));
  Header h;
  if (!(is >> h.rows >> h.cols)) {
    throw ParseError("line " + std::to_string(line_no) + ": header must read '# m n'");
  }
  return h;
}

std::vector<BinaryMatrix> read_text(const std::string& text) {
  std::vector<BinaryMatrix> out;
  std::vector<std::string> block;
  std::optional<Header> header;
  std::size_t line_no = 0;
  std::size_t block_start = 1;

  auto flush = [&]() {
    if (block.empty()) {
      if (header) {
        throw ParseError("line " + std::to_string(block_start) + ": header without rows");
      }
      return;
    }
    BinaryMatrix a = BinaryMatrix::from_rows(std::span<const std::string>(block));
    if (header && (header->rows != a.rows() || header->cols != a.cols())) {
      throw ParseError("matrix starting at line " + std::to_string(block_start) +
                       " does not match its header");
    }
    out.push_back(std::move(a));
    block.clear();
    header.reset();
  };

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) {
      flush();
      block_start = line_no + 1;
      continue;
    }
    if (line[0] == '#') {
      if (!block.empty()) {
        throw ParseError("line " + std::to_string(line_no) + ": header inside a matrix block");
      }
      header = parse_header(line, line_no);
      continue;
    }
    try {
      if (!block.empty() && line.size() != block.front().size()) {
        throw ParseError("ragged row");
      }
      for (char c : line)
        if (c != '0' && c != '1') throw ParseError("unexpected character");
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    block.push_back(line);
  }
  flush();
  return out;
}

}  // namespace

nlohmann::ordered_json to_json(const BinaryMatrix& a) {
  nlohmann::ordered_json j;
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  auto data = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) data.push_back(a.row_string(i));
  j["data"] = std::move(data);
  return j;
}

BinaryMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto data = j.at("data").get<std::vector<std::string>>();
    if (data.size() != rows) throw ParseError("\"data\" has " + std::to_string(data.size()) +
                                              " rows, header says " + std::to_string(rows));
    BinaryMatrix a = BinaryMatrix::from_rows(std::span<const std::string>(data));
    if (a.cols() != cols) throw ParseError("row length disagrees with \"cols\"");
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad matrix JSON: ") + e.what());
  }
}

nlohmann::ordered_json to_json(const Margins& m) {
  nlohmann::ordered_json j;
  j["R"] = m.row_sums;
  j["S"] = m.col_sums;
  return j;
}

std::vector<BinaryMatrix> read_matrices(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::size_t first = 0;
  while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  if (first < text.size() && (text[first] == '{' || text[first] == '[')) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("bad JSON: ") + e.what());
    }
    std::vector<BinaryMatrix> out;
    if (j.is_array()) {
      for (const auto& item : j) out.push_back(matrix_from_json(item));
    } else {
      out.push_back(matrix_from_json(j));
    }
    return out;
  }
  return read_text(text);
}

std::vector<BinaryMatrix> read_matrices_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_matrices(in);
}

void write_matrix_text(std::ostream& out, const BinaryMatrix& a, bool header) {
  if (header) out << "# " << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) out << a.row_string(i) << '\n';
}

void write_matrices_text(std::ostream& out, const std::vector<BinaryMatrix>& as, bool header) {
  for (std::size_t k = 0; k < as.size(); ++k) {
    if (k) out << '\n';
    write_matrix_text(out, as[k], header);
  }
}

}  // namespace bruhat
