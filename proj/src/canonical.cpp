#include "scholia/canonical.hpp"

#include <cmath>

#include "scholia/errors.hpp"

namespace scholia {

namespace {

// nlohmann serializes non-finite doubles as `null`, which would silently
// change the value; reject them up front instead.
void reject_non_finite(const Json& value) {
  switch (value.type()) {
    case Json::value_t::number_float: {
      double d = value.get<double>();
      if (!std::isfinite(d)) {
        throw_error(ErrorKind::Encoding, "non-finite number is not canonically encodable");
      }
      break;
    }
    case Json::value_t::array:
    case Json::value_t::object:
      for (const auto& item : value) reject_non_finite(item);
      break;
    default:
      break;
  }
}

}  // namespace

std::string canonical_encode(const Json& value) {
  if (value.is_discarded()) {
    throw_error(ErrorKind::Encoding, "cannot encode a discarded JSON value");
  }
  reject_non_finite(value);
  // Objects are std::map-backed, so dump() already emits keys in ascending
  // byte order with minimal whitespace and shortest round-trip numbers.
  return value.dump();
}

Json canonical_decode(std::string_view text) {
  Json parsed = Json::parse(text, nullptr, false);
  if (parsed.is_discarded()) {
    throw_error(ErrorKind::Encoding, "malformed JSON document");
  }
  return parsed;
}

bool is_canonical_line(std::string_view line) {
  Json parsed = Json::parse(line, nullptr, false);
  if (parsed.is_discarded()) return false;
  try {
    return canonical_encode(parsed) == line;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace scholia
