#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scholia/hash.hpp"

namespace scholia {

// Signature scheme pinned by this repository (recorded in every identity
// registration and in the governance config): Ed25519 with 32-byte seeds,
// 32-byte public keys, and 64-byte detached signatures.
inline constexpr const char* kSignatureScheme = "ed25519";

struct SecretKey {
  std::array<std::uint8_t, 32> seed{};  // Ed25519 seed; keypair re-derived on use
};

struct PublicKey {
  std::array<std::uint8_t, 32> bytes{};

  auto operator<=>(const PublicKey&) const = default;

  std::string hex() const { return to_hex(bytes); }
  static PublicKey from_hex(std::string_view hex);
};

struct Signature {
  std::array<std::uint8_t, 64> bytes{};

  auto operator<=>(const Signature&) const = default;

  std::string hex() const { return to_hex(bytes); }
  static Signature from_hex(std::string_view hex);
};

// Claim kinds an attestation may carry. "editor-role" is the one with
// ledger-level consequences: it authorizes retracting others' work.
inline constexpr const char* kAttestInstitutional = "institutional-credential";
inline constexpr const char* kAttestExternalId = "external-id";
inline constexpr const char* kAttestEditorRole = "editor-role";

bool is_attestation_kind(std::string_view kind);

// A signed statement another key makes about an identity.
struct Attestation {
  ContentHash issuer;       // key id of the attesting identity
  std::string claim_kind;   // one of the kAttest* kinds
  ContentHash payload_hash; // content hash of the off-ledger credential bytes
  Signature signature;      // issuer's signature over attestation_signing_bytes

  bool operator==(const Attestation&) const = default;
};

// The registered, attested view of one keypair.
struct IdentityRecord {
  ContentHash key_id;  // content hash of the public key bytes
  PublicKey public_key;
  std::int64_t created_at = 0;
  std::vector<Attestation> attestations;

  bool has_attestation(std::string_view claim_kind) const;
};

// Deterministic keypair when a 32-byte seed is supplied, fresh random keys
// otherwise. The same seed always yields the same keys.
std::pair<SecretKey, IdentityRecord> generate_identity(
    std::optional<std::span<const std::uint8_t>> seed = std::nullopt,
    std::int64_t created_at = 0);

ContentHash key_id_of(const PublicKey& key);

// Public half re-derived from a stored seed.
PublicKey public_key_of(const SecretKey& key);

// Detached, deterministic signature over arbitrary bytes.
Signature sign(std::span<const std::uint8_t> message, const SecretKey& key);
Signature sign(std::string_view message, const SecretKey& key);

// True iff `signature` was produced over `message` by the secret half of
// `key`. Never throws on a mere mismatch; malformed key material is caught
// at parse time by the fixed-size types.
bool verify_signature(std::span<const std::uint8_t> message, const Signature& signature,
                      const PublicKey& key);
bool verify_signature(std::string_view message, const Signature& signature,
                      const PublicKey& key);

// The bytes an attestation's signature covers: the canonical encoding of
// {"claim_kind":…,"payload_hash":…,"subject_key":…}.
std::string attestation_signing_bytes(const ContentHash& subject_key,
                                      std::string_view claim_kind,
                                      const ContentHash& payload_hash);

// Pure record update: validates the attestation signature against the
// issuer's public key and returns the record with the attestation added.
// Re-binding an identical attestation is a no-op (set semantics).
// Throws Identity on a bad signature, Argument on an unknown claim kind.
IdentityRecord bind_attestation(const IdentityRecord& record, const Attestation& attestation,
                                const PublicKey& issuer_key);

// Key files: one lowercase-hex-encoded key per file, trailing newline.
void write_key_file(const std::filesystem::path& path, std::span<const std::uint8_t> key_bytes);
std::vector<std::uint8_t> read_key_file(const std::filesystem::path& path, size_t expected_size);

SecretKey read_secret_key(const std::filesystem::path& path);
PublicKey read_public_key(const std::filesystem::path& path);

}  // namespace scholia
