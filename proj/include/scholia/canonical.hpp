#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace scholia {

using Json = nlohmann::json;

// Canonical JSON encoding: the single byte representation every hash and
// signature in the system is computed over.
//
//   - object keys sorted ascending by byte value
//   - minimal whitespace (no spaces, no newline)
//   - UTF-8 passed through unescaped except mandatory JSON escapes
//   - integers in base 10; floating point as the shortest decimal string
//     that round-trips to the same double
//   - NaN / infinity are not representable and raise an Encoding error
//
// encode(decode(line)) == line holds for every line this function produced.
std::string canonical_encode(const Json& value);

// Parse a canonical (or plain) JSON document. Throws an Encoding error on
// malformed input.
Json canonical_decode(std::string_view text);

// True when `line` is byte-identical to the canonical encoding of its own
// parse, i.e. the bytes could have been produced by canonical_encode.
bool is_canonical_line(std::string_view line);

}  // namespace scholia
