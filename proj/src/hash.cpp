#include "scholia/hash.hpp"

#include <openssl/evp.h>

#include "scholia/errors.hpp"

namespace scholia {

namespace {

int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

constexpr char kHexDigits[] = "0123456789abcdef";

}  // namespace

std::string ContentHash::hex() const { return to_hex(bytes); }

ContentHash ContentHash::from_hex(std::string_view hex) {
  if (hex.size() != 64) {
    throw_error(ErrorKind::Argument, "content hash must be 64 hex characters");
  }
  ContentHash h;
  for (size_t i = 0; i < 32; i++) {
    int hi = hex_nibble(hex[2 * i]);
    int lo = hex_nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw_error(ErrorKind::Argument, "content hash contains non-hex character");
    }
    h.bytes[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return h;
}

bool ContentHash::is_zero() const {
  for (auto b : bytes) {
    if (b != 0) return false;
  }
  return true;
}

ContentHash sha256(std::span<const std::uint8_t> data) {
  ContentHash out;
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.bytes.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.bytes.size()) {
    throw_error(ErrorKind::Io, "SHA-256 computation failed");
  }
  return out;
}

ContentHash sha256(std::string_view data) {
  return sha256(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

ContentHash hash_with_domain(std::uint8_t domain, std::span<const std::uint8_t> data) {
  std::vector<std::uint8_t> buf;
  buf.reserve(data.size() + 1);
  buf.push_back(domain);
  buf.insert(buf.end(), data.begin(), data.end());
  return sha256(buf);
}

ContentHash hash_content(std::span<const std::uint8_t> data) {
  return hash_with_domain(kDomainContent, data);
}

ContentHash hash_content(std::string_view data) {
  return hash_content(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

ContentHash hash_envelope(std::span<const std::uint8_t> data) {
  return hash_with_domain(kDomainEnvelope, data);
}

ContentHash hash_envelope(std::string_view data) {
  return hash_envelope(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

ContentHash hash_merkle_node(const ContentHash& left, const ContentHash& right) {
  std::array<std::uint8_t, 65> buf;
  buf[0] = kDomainMerkleNode;
  std::copy(left.bytes.begin(), left.bytes.end(), buf.begin() + 1);
  std::copy(right.bytes.begin(), right.bytes.end(), buf.begin() + 33);
  return sha256(buf);
}

std::string to_hex(std::span<const std::uint8_t> data) {
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0x0f]);
  }
  return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw_error(ErrorKind::Argument, "hex string has odd length");
  }
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); i++) {
    int hi = hex_nibble(hex[2 * i]);
    int lo = hex_nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw_error(ErrorKind::Argument, "hex string contains non-hex character");
    }
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

}  // namespace scholia
