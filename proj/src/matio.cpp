// Copyright (c) 2026 The semikern Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "semikern/matio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace semikern {

namespace {

constexpr std::string_view kBanner = "%%MatrixMarket";

// 9 significant digits round-trip binary32 exactly.
void append_value(std::string& line, Scalar v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(v));
  line += buf;
}

void write_coordinate(const CsrMatrix& m, std::ostream& out) {
  out << kBanner << " matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  std::string line;
  for (index_t i = 0; i < m.rows(); ++i) {
    const auto cols = m.row_cols(i);
    const auto vals = m.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      line.clear();
      line += std::to_string(i + 1);
      line += ' ';
      line += std::to_string(cols[k] + 1);
      line += ' ';
      append_value(line, vals[k]);
      line += '\n';
      out << line;
    }
  }
}

void write_array(const DenseMatrix& m, std::ostream& out) {
  out << kBanner << " matrix array real general\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  std::string line;
  // Array files list values down each column.
  for (index_t j = 0; j < m.cols(); ++j) {
    for (index_t i = 0; i < m.rows(); ++i) {
      line.clear();
      append_value(line, m(i, j));
      line += '\n';
      out << line;
    }
  }
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    std::size_t begin = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    if (pos > begin) fields.push_back(line.substr(begin, pos - begin));
  }
  return fields;
}

std::string lowered(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

template <typename T>
T parse_number(std::string_view token, std::size_t line, const char* what) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (begin != end && *begin == '+') ++begin;  // from_chars rejects leading +
  T value{};
  std::from_chars_result r{};
  if constexpr (std::is_floating_point_v<T>) {
    r = std::from_chars(begin, end, value, std::chars_format::general);
  } else {
    r = std::from_chars(begin, end, value);
  }
  if (r.ec != std::errc{} || r.ptr != end) {
    throw ParseError(line, std::string("malformed ") + what + " '" +
                               std::string(token) + "'");
  }
  return value;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // False at end of input. Strips a trailing '\r'.
  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++lineno_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  std::size_t lineno() const noexcept { return lineno_; }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
};

struct Header {
  MatrixFileKind kind;
  std::size_t size_line;   // line number of the size line
  std::vector<std::string_view> size_fields;
  std::string size_storage;
};

Header read_header(LineReader& reader) {
  std::string line;
  if (!reader.next(line)) {
    throw ParseError(1, "empty file, expected Matrix Market header");
  }
  const auto fields = split_fields(line);
  if (fields.empty() || fields[0] != kBanner) {
    throw ParseError(reader.lineno(),
                     "header must begin '%%MatrixMarket matrix'");
  }
  if (fields.size() != 5 || lowered(fields[1]) != "matrix") {
    throw ParseError(reader.lineno(),
                     "header must be '%%MatrixMarket matrix "
                     "<coordinate|array> real general'");
  }
  const std::string format = lowered(fields[2]);
  const std::string type = lowered(fields[3]);
  const std::string symmetry = lowered(fields[4]);
  if (format != "coordinate" && format != "array") {
    throw ParseError(reader.lineno(), "unsupported format '" + format +
                                          "' (expected coordinate or array)");
  }
  if (type != "real" || symmetry != "general") {
    throw ParseError(reader.lineno(),
                     "only 'real general' matrices are supported");
  }

  Header h;
  h.kind = format == "coordinate" ? MatrixFileKind::coordinate
                                  : MatrixFileKind::array;
  // Comment lines between header and size line start with '%'.
  while (true) {
    if (!reader.next(line)) {
      throw ParseError(reader.lineno() + 1,
                       "unexpected end of file before size line");
    }
    if (!line.empty() && line[0] == '%') continue;
    if (split_fields(line).empty()) continue;  // blank line
    break;
  }
  h.size_storage = line;
  h.size_fields = split_fields(h.size_storage);
  h.size_line = reader.lineno();
  return h;
}

Matrix read_coordinate(LineReader& reader, const Header& h) {
  if (h.size_fields.size() != 3) {
    throw ParseError(h.size_line, "coordinate size line must be 'rows cols nnz'");
  }
  const auto rows = parse_number<index_t>(h.size_fields[0], h.size_line, "row count");
  const auto cols = parse_number<index_t>(h.size_fields[1], h.size_line, "column count");
  const auto count = parse_number<std::size_t>(h.size_fields[2], h.size_line, "nnz count");

  struct Entry {
    index_t row, col;
    Scalar value;
    std::size_t line;
  };
  std::vector<Entry> entries;
  entries.reserve(std::min(count, std::size_t{1} << 20));

  std::string line;
  while (entries.size() < count) {
    if (!reader.next(line)) {
      throw ParseError(reader.lineno() + 1,
                       "unexpected end of file: expected " +
                           std::to_string(count) + " entries, found " +
                           std::to_string(entries.size()));
    }
    const auto fields = split_fields(line);
    if (fields.empty()) continue;  // blank lines between entries are harmless
    if (fields.size() != 3) {
      throw ParseError(reader.lineno(),
                       "entry must have 3 fields 'row col value', found " +
                           std::to_string(fields.size()));
    }
    const auto r = parse_number<std::uint64_t>(fields[0], reader.lineno(), "row index");
    const auto c = parse_number<std::uint64_t>(fields[1], reader.lineno(), "column index");
    const auto v = parse_number<Scalar>(fields[2], reader.lineno(), "value");
    if (r < 1 || r > rows) {
      throw ParseError(reader.lineno(), "row index " + std::to_string(r) +
                                            " out of range [1, " +
                                            std::to_string(rows) + "]");
    }
    if (c < 1 || c > cols) {
      throw ParseError(reader.lineno(), "column index " + std::to_string(c) +
                                            " out of range [1, " +
                                            std::to_string(cols) + "]");
    }
    entries.push_back({static_cast<index_t>(r - 1), static_cast<index_t>(c - 1),
                       v, reader.lineno()});
  }
  while (reader.next(line)) {
    if (!split_fields(line).empty()) {
      throw ParseError(reader.lineno(), "unexpected content after " +
                                            std::to_string(count) + " entries");
    }
  }

  // Duplicate detection keeps the later line number for the message.
  std::vector<const Entry*> by_coord;
  by_coord.reserve(entries.size());
  for (const Entry& e : entries) by_coord.push_back(&e);
  std::sort(by_coord.begin(), by_coord.end(),
            [](const Entry* a, const Entry* b) {
              return std::tie(a->row, a->col, a->line) <
                     std::tie(b->row, b->col, b->line);
            });
  for (std::size_t k = 1; k < by_coord.size(); ++k) {
    if (by_coord[k - 1]->row == by_coord[k]->row &&
        by_coord[k - 1]->col == by_coord[k]->col) {
      throw ParseError(by_coord[k]->line,
                       "duplicate entry for (" +
                           std::to_string(by_coord[k]->row + 1) + ", " +
                           std::to_string(by_coord[k]->col + 1) + ")");
    }
  }

  std::vector<Triple> triples;
  triples.reserve(entries.size());
  for (const Entry& e : entries) triples.push_back({e.row, e.col, e.value});
  return Matrix(csr_from_triples(rows, cols, triples));
}

Matrix read_array(LineReader& reader, const Header& h) {
  if (h.size_fields.size() != 2) {
    throw ParseError(h.size_line, "array size line must be 'rows cols'");
  }
  const auto rows = parse_number<index_t>(h.size_fields[0], h.size_line, "row count");
  const auto cols = parse_number<index_t>(h.size_fields[1], h.size_line, "column count");
  const std::size_t count = static_cast<std::size_t>(rows) * cols;

  DenseMatrix m(rows, cols);
  std::string line;
  std::size_t filled = 0;
  while (filled < count) {
    if (!reader.next(line)) {
      throw ParseError(reader.lineno() + 1,
                       "unexpected end of file: expected " +
                           std::to_string(count) + " values, found " +
                           std::to_string(filled));
    }
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 1) {
      throw ParseError(reader.lineno(), "array lines carry one value each, found " +
                                            std::to_string(fields.size()));
    }
    const auto v = parse_number<Scalar>(fields[0], reader.lineno(), "value");
    // Column-major file order.
    const index_t i = static_cast<index_t>(filled % rows);
    const index_t j = static_cast<index_t>(filled / rows);
    m(i, j) = v;
    ++filled;
  }
  while (reader.next(line)) {
    if (!split_fields(line).empty()) {
      throw ParseError(reader.lineno(), "unexpected content after " +
                                            std::to_string(count) + " values");
    }
  }
  return Matrix(std::move(m));
}

}  // namespace

MatrixFileInfo write_matrix(const Matrix& a, std::ostream& out) {
  MatrixFileInfo info;
  info.rows = a.rows();
  info.cols = a.cols();
  if (a.is_sparse()) {
    info.kind = MatrixFileKind::coordinate;
    info.entries = a.csr().nnz();
    write_coordinate(a.csr(), out);
  } else {
    info.kind = MatrixFileKind::array;
    info.entries = static_cast<std::size_t>(a.rows()) * a.cols();
    write_array(a.dense(), out);
  }
  if (!out) throw Error("write failed");
  return info;
}

MatrixFileInfo write_matrix(const Matrix& a, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  MatrixFileInfo info = write_matrix(a, out);
  out.flush();
  if (!out) throw Error("write to '" + path.string() + "' failed");
  info.path = path;
  return info;
}

Matrix read_matrix(std::istream& in) {
  LineReader reader(in);
  const Header h = read_header(reader);
  return h.kind == MatrixFileKind::coordinate ? read_coordinate(reader, h)
                                              : read_array(reader, h);
}

Matrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return read_matrix(in);
}

}  // namespace semikern
