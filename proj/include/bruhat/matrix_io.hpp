#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "bruhat/binary_matrix.hpp"

namespace bruhat {

// Text format: one matrix per block, one row per line over {0,1}, blocks
// separated by a blank line, optional "# m n" header line per block.
// JSON format: {"rows": m, "cols": n, "data": ["0101", ...]} or an array of
// such objects.
std::vector<BinaryMatrix> read_matrices(std::istream& in);
std::vector<BinaryMatrix> read_matrices_file(const std::string& path);

void write_matrix_text(std::ostream& out, const BinaryMatrix& a, bool header = false);
void write_matrices_text(std::ostream& out, const std::vector<BinaryMatrix>& as,
                         bool header = false);

nlohmann::ordered_json to_json(const BinaryMatrix& a);
BinaryMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const Margins& m);

}  // namespace bruhat
