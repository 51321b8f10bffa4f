#include "latinlab/codec.hpp"

#include <charconv>
#include <sstream>
#include <string_view>

#include <json.hpp>

namespace latinlab {

namespace {

using nlohmann::json;

void append_row(std::string& out, std::span<const std::int32_t> row) {
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (c) out += ' ';
    out += std::to_string(row[c] + 1);
  }
  out += '\n';
}

struct LineReader {
  std::string_view text;
  std::size_t pos = 0;
  long line_no = 0;

  bool next(std::string_view& line) {
    if (pos >= text.size()) return false;
    const std::size_t nl = text.find('\n', pos);
    line = nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    return true;
  }
};

std::vector<int> parse_ints(std::string_view line, long line_no) {
  std::vector<int> values;
  const char* p = line.data();
  const char* end = line.data() + line.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p >= end) break;
    int value = 0;
    auto [next, ec] = std::from_chars(p, end, value);
    if (ec != std::errc())
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": expected integer", line_no);
    values.push_back(value);
    p = next;
  }
  return values;
}

std::vector<int> expect_ints(LineReader& reader, std::size_t count, const char* what) {
  std::string_view line;
  if (!reader.next(line))
    throw Error(Errc::ParseError, std::string("unexpected end of input reading ") + what, reader.line_no + 1);
  std::vector<int> values = parse_ints(line, reader.line_no);
  if (values.size() != count)
    throw Error(Errc::ParseError,
                "line " + std::to_string(reader.line_no) + ": expected " + std::to_string(count) + " integers",
                reader.line_no);
  return values;
}

std::vector<std::vector<int>> read_grid_lines(LineReader& reader, int k, int n) {
  std::vector<std::vector<int>> grid;
  grid.reserve(static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r) grid.push_back(expect_ints(reader, static_cast<std::size_t>(n), "grid row"));
  return grid;
}

[[noreturn]] void rethrow_as_parse(const Error& e, long line_no) {
  if (e.code() == Errc::ParseError) throw;
  throw Error(Errc::ParseError, std::string(e.what()) + " [" + errc_name(e.code()) + "]", line_no);
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::ParseError, "malformed JSON", 0);
  return j;
}

std::vector<std::vector<int>> json_cells(const json& j) {
  if (!j.contains("cells") || !j["cells"].is_array()) throw Error(Errc::ParseError, "missing cells array", 0);
  std::vector<std::vector<int>> grid;
  for (const auto& row : j["cells"]) {
    if (!row.is_array()) throw Error(Errc::ParseError, "cells rows must be arrays", 0);
    grid.push_back(row.get<std::vector<int>>());
  }
  return grid;
}

}  // namespace

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::DuplicateInRow: return "DuplicateInRow";
    case Errc::DuplicateInColumn: return "DuplicateInColumn";
    case Errc::SymbolOutOfRange: return "SymbolOutOfRange";
    case Errc::IncompleteCover: return "IncompleteCover";
    case Errc::ConflictingTriples: return "ConflictingTriples";
    case Errc::ParseError: return "ParseError";
    case Errc::NotAPermutation: return "NotAPermutation";
    case Errc::SizeGuard: return "SizeGuard";
    case Errc::KOutOfRange: return "KOutOfRange";
    case Errc::KTooSmall: return "KTooSmall";
    case Errc::MTooLarge: return "MTooLarge";
    case Errc::TooLargeForExact: return "TooLargeForExact";
    case Errc::NotAMatching: return "NotAMatching";
    case Errc::InvalidSwitching: return "InvalidSwitching";
    case Errc::RNonPositive: return "RNonPositive";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::InvalidAlpha: return "InvalidAlpha";
    case Errc::HTooLarge: return "HTooLarge";
    case Errc::CompletionFailed: return "CompletionFailed";
    case Errc::NTooSmall: return "NTooSmall";
  }
  return "Unknown";
}

std::string encode_grid(const LatinSquare& square) {
  std::string out = std::to_string(square.order()) + "\n";
  for (int r = 0; r < square.order(); ++r) append_row(out, square.row(r));
  return out;
}

std::string encode_grid(const LatinRectangle& rect) {
  std::string out = std::to_string(rect.rows_count()) + " " + std::to_string(rect.order()) + "\n";
  for (int r = 0; r < rect.rows_count(); ++r) append_row(out, rect.row(r));
  return out;
}

std::string encode_triples(const TripleSet& triples) {
  std::string out = std::to_string(triples.order()) + " " + std::to_string(triples.size()) + "\n";
  for (const Triple& t : triples.triples()) {
    out += std::to_string(t.row + 1);
    out += ' ';
    out += std::to_string(t.col + 1);
    out += ' ';
    out += std::to_string(t.sym + 1);
    out += '\n';
  }
  return out;
}

std::string encode_json(const LatinSquare& square) {
  json j;
  j["n"] = square.order();
  json rows = json::array();
  for (int r = 0; r < square.order(); ++r) {
    json row = json::array();
    for (int c = 0; c < square.order(); ++c) row.push_back(square.at(r, c) + 1);
    rows.push_back(std::move(row));
  }
  j["cells"] = std::move(rows);
  return j.dump();
}

std::string encode_json(const LatinRectangle& rect) {
  json j;
  j["n"] = rect.order();
  j["k"] = rect.rows_count();
  json rows = json::array();
  for (int r = 0; r < rect.rows_count(); ++r) {
    json row = json::array();
    for (int c = 0; c < rect.order(); ++c) row.push_back(rect.at(r, c) + 1);
    rows.push_back(std::move(row));
  }
  j["cells"] = std::move(rows);
  return j.dump();
}

std::string encode_json(const TripleSet& triples) {
  json j;
  j["n"] = triples.order();
  json edges = json::array();
  for (const Triple& t : triples.triples()) edges.push_back(json::array({t.row + 1, t.col + 1, t.sym + 1}));
  j["triples"] = std::move(edges);
  return j.dump();
}

LatinSquare decode_grid_square(const std::string& text) {
  LineReader reader{text};
  const int n = expect_ints(reader, 1, "order")[0];
  if (n < 1) throw Error(Errc::ParseError, "order must be positive", reader.line_no);
  try {
    return validate_square(read_grid_lines(reader, n, n));
  } catch (const Error& e) {
    rethrow_as_parse(e, reader.line_no);
  }
}

LatinRectangle decode_grid_rectangle(const std::string& text) {
  LineReader reader{text};
  const std::vector<int> header = expect_ints(reader, 2, "header");
  const int k = header[0];
  const int n = header[1];
  if (n < 1 || k < 1 || k > n) throw Error(Errc::ParseError, "need 1 <= k <= n", reader.line_no);
  try {
    return validate_rectangle(read_grid_lines(reader, k, n));
  } catch (const Error& e) {
    rethrow_as_parse(e, reader.line_no);
  }
}

TripleSet decode_triples(const std::string& text) {
  LineReader reader{text};
  const std::vector<int> header = expect_ints(reader, 2, "header");
  const int n = header[0];
  const int m = header[1];
  if (n < 0 || m < 0) throw Error(Errc::ParseError, "bad header", reader.line_no);
  std::vector<Triple> triples;
  triples.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const std::vector<int> row = expect_ints(reader, 3, "triple");
    for (int v : row)
      if (v < 1 || v > n)
        throw Error(Errc::ParseError, "line " + std::to_string(reader.line_no) + ": coordinate outside 1..n",
                    reader.line_no);
    triples.push_back({row[0] - 1, row[1] - 1, row[2] - 1});
  }
  try {
    return TripleSet(n, std::move(triples));
  } catch (const Error& e) {
    rethrow_as_parse(e, reader.line_no);
  }
}

LatinSquare decode_json_square(const std::string& text) {
  const json j = parse_json(text);
  try {
    return validate_square(json_cells(j));
  } catch (const Error& e) {
    rethrow_as_parse(e, 0);
  }
}

LatinRectangle decode_json_rectangle(const std::string& text) {
  const json j = parse_json(text);
  try {
    return validate_rectangle(json_cells(j));
  } catch (const Error& e) {
    rethrow_as_parse(e, 0);
  }
}

TripleSet decode_json_triples(const std::string& text) {
  const json j = parse_json(text);
  if (!j.contains("n") || !j["n"].is_number_integer()) throw Error(Errc::ParseError, "missing n", 0);
  const int n = j["n"].get<int>();
  if (!j.contains("triples") || !j["triples"].is_array()) throw Error(Errc::ParseError, "missing triples", 0);
  std::vector<Triple> triples;
  for (const auto& e : j["triples"]) {
    if (!e.is_array() || e.size() != 3) throw Error(Errc::ParseError, "triples entries must be [r,c,s]", 0);
    const int r = e[0].get<int>();
    const int c = e[1].get<int>();
    const int s = e[2].get<int>();
    if (r < 1 || r > n || c < 1 || c > n || s < 1 || s > n)
      throw Error(Errc::ParseError, "coordinate outside 1..n", 0);
    triples.push_back({r - 1, c - 1, s - 1});
  }
  try {
    return TripleSet(n, std::move(triples));
  } catch (const Error& e) {
    rethrow_as_parse(e, 0);
  }
}

}  // namespace latinlab
