#pragma once

#include <string>

#include "latinlab/triples.hpp"

namespace latinlab {

/// Text codecs. All three formats are bit-exact and 1-based:
///   grid:    "n\n" (or "k n\n") then one line per row of space-separated
///            symbols, LF endings.
///   triples: "n m\n" then m lines "r c s".
///   json:    {"n":..,"cells":[[..]]}, {"n":..,"k":..,"cells":[[..]]} or
///            {"n":..,"triples":[[r,c,s],..]}.
/// decode(encode(x)) == x; malformed input throws Errc::ParseError with the
/// 1-based line number (JSON: 0), wrapping validation rejections.
std::string encode_grid(const LatinSquare& square);
std::string encode_grid(const LatinRectangle& rect);
std::string encode_triples(const TripleSet& triples);
std::string encode_json(const LatinSquare& square);
std::string encode_json(const LatinRectangle& rect);
std::string encode_json(const TripleSet& triples);

LatinSquare decode_grid_square(const std::string& text);
LatinRectangle decode_grid_rectangle(const std::string& text);
TripleSet decode_triples(const std::string& text);
LatinSquare decode_json_square(const std::string& text);
LatinRectangle decode_json_rectangle(const std::string& text);
TripleSet decode_json_triples(const std::string& text);

}  // namespace latinlab
