#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scholia {

// 32-byte digest used for content addressing throughout the ledger.
// Digests are carried around in binary and rendered as 64 lowercase hex
// characters at the serialization boundary.
struct ContentHash {
  std::array<std::uint8_t, 32> bytes{};

  auto operator<=>(const ContentHash&) const = default;

  std::string hex() const;
  static ContentHash from_hex(std::string_view hex);  // throws Argument on malformed input

  bool is_zero() const;
  static ContentHash zero() { return ContentHash{}; }  // genesis predecessor: all zero bytes
};

// Raw SHA-256 of the input bytes. This is the primitive every other hash
// below is built on; e.g. sha256("") =
//   e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855.
ContentHash sha256(std::span<const std::uint8_t> data);
ContentHash sha256(std::string_view data);

// Domain-separated hashing: a 1-byte prefix keeps content addresses,
// envelope hashes, and Merkle interior nodes from ever colliding across
// contexts, even on identical input bytes.
inline constexpr std::uint8_t kDomainContent = 0x00;
inline constexpr std::uint8_t kDomainEnvelope = 0x01;
inline constexpr std::uint8_t kDomainMerkleNode = 0x02;

ContentHash hash_with_domain(std::uint8_t domain, std::span<const std::uint8_t> data);

// Content addresses (event ids, key ids, stored artifact bytes).
ContentHash hash_content(std::span<const std::uint8_t> data);
ContentHash hash_content(std::string_view data);

// Hash of a serialized ledger envelope line (chains events together).
ContentHash hash_envelope(std::span<const std::uint8_t> data);
ContentHash hash_envelope(std::string_view data);

// Interior Merkle node over two child digests.
ContentHash hash_merkle_node(const ContentHash& left, const ContentHash& right);

// Hex helpers shared by keys and signatures.
std::string to_hex(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> from_hex(std::string_view hex);  // throws Argument on malformed input

}  // namespace scholia
