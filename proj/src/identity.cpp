#include "scholia/identity.hpp"

#include <sodium.h>

#include <fstream>

#include "scholia/canonical.hpp"
#include "scholia/errors.hpp"

namespace scholia {

namespace {

void ensure_sodium() {
  static const int rc = sodium_init();
  if (rc < 0) {
    throw_error(ErrorKind::Io, "libsodium initialization failed");
  }
}

// Ed25519 secret keys as libsodium consumes them: 64 bytes = seed || public.
std::array<std::uint8_t, 64> expand_secret(const SecretKey& key) {
  ensure_sodium();
  std::array<std::uint8_t, 64> sk;
  std::array<std::uint8_t, 32> pk;
  crypto_sign_seed_keypair(pk.data(), sk.data(), key.seed.data());
  return sk;
}

}  // namespace

PublicKey PublicKey::from_hex(std::string_view hex) {
  auto bytes = scholia::from_hex(hex);
  if (bytes.size() != 32) {
    throw_error(ErrorKind::Argument, "public key must be 32 bytes (64 hex characters)");
  }
  PublicKey key;
  std::copy(bytes.begin(), bytes.end(), key.bytes.begin());
  return key;
}

Signature Signature::from_hex(std::string_view hex) {
  auto bytes = scholia::from_hex(hex);
  if (bytes.size() != 64) {
    throw_error(ErrorKind::Argument, "signature must be 64 bytes (128 hex characters)");
  }
  Signature sig;
  std::copy(bytes.begin(), bytes.end(), sig.bytes.begin());
  return sig;
}

bool is_attestation_kind(std::string_view kind) {
  return kind == kAttestInstitutional || kind == kAttestExternalId || kind == kAttestEditorRole;
}

bool IdentityRecord::has_attestation(std::string_view claim_kind) const {
  for (const auto& a : attestations) {
    if (a.claim_kind == claim_kind) return true;
  }
  return false;
}

std::pair<SecretKey, IdentityRecord> generate_identity(
    std::optional<std::span<const std::uint8_t>> seed, std::int64_t created_at) {
  ensure_sodium();
  SecretKey secret;
  if (seed) {
    if (seed->size() != secret.seed.size()) {
      throw_error(ErrorKind::Argument, "identity seed must be exactly 32 bytes");
    }
    std::copy(seed->begin(), seed->end(), secret.seed.begin());
  } else {
    randombytes_buf(secret.seed.data(), secret.seed.size());
  }

  std::array<std::uint8_t, 64> sk;
  PublicKey pub;
  crypto_sign_seed_keypair(pub.bytes.data(), sk.data(), secret.seed.data());

  IdentityRecord record;
  record.public_key = pub;
  record.key_id = key_id_of(pub);
  record.created_at = created_at;
  return {secret, record};
}

ContentHash key_id_of(const PublicKey& key) { return hash_content(key.bytes); }

PublicKey public_key_of(const SecretKey& key) {
  std::array<std::uint8_t, 64> sk;
  PublicKey pub;
  crypto_sign_seed_keypair(pub.bytes.data(), sk.data(), key.seed.data());
  return pub;
}

Signature sign(std::span<const std::uint8_t> message, const SecretKey& key) {
  auto sk = expand_secret(key);
  Signature sig;
  crypto_sign_detached(sig.bytes.data(), nullptr, message.data(), message.size(), sk.data());
  return sig;
}

Signature sign(std::string_view message, const SecretKey& key) {
  return sign(std::span<const std::uint8_t>(
                  reinterpret_cast<const std::uint8_t*>(message.data()), message.size()),
              key);
}

bool verify_signature(std::span<const std::uint8_t> message, const Signature& signature,
                      const PublicKey& key) {
  ensure_sodium();
  return crypto_sign_verify_detached(signature.bytes.data(), message.data(), message.size(),
                                     key.bytes.data()) == 0;
}

bool verify_signature(std::string_view message, const Signature& signature,
                      const PublicKey& key) {
  return verify_signature(
      std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(message.data()),
                                    message.size()),
      signature, key);
}

std::string attestation_signing_bytes(const ContentHash& subject_key,
                                      std::string_view claim_kind,
                                      const ContentHash& payload_hash) {
  Json doc = Json::object();
  doc["claim_kind"] = std::string(claim_kind);
  doc["payload_hash"] = payload_hash.hex();
  doc["subject_key"] = subject_key.hex();
  return canonical_encode(doc);
}

IdentityRecord bind_attestation(const IdentityRecord& record, const Attestation& attestation,
                                const PublicKey& issuer_key) {
  if (!is_attestation_kind(attestation.claim_kind)) {
    throw_error(ErrorKind::Argument, "unknown attestation claim kind: " + attestation.claim_kind);
  }
  if (attestation.issuer != key_id_of(issuer_key)) {
    throw_error(ErrorKind::Identity, "attestation issuer does not match supplied public key");
  }
  std::string bytes =
      attestation_signing_bytes(record.key_id, attestation.claim_kind, attestation.payload_hash);
  if (!verify_signature(bytes, attestation.signature, issuer_key)) {
    throw_error(ErrorKind::Identity, "attestation signature does not verify");
  }
  IdentityRecord updated = record;
  for (const auto& existing : updated.attestations) {
    if (existing == attestation) return updated;  // idempotent re-bind
  }
  updated.attestations.push_back(attestation);
  return updated;
}

void write_key_file(const std::filesystem::path& path, std::span<const std::uint8_t> key_bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw_error(ErrorKind::Io, "cannot open key file for writing: " + path.string());
  }
  out << to_hex(key_bytes) << "\n";
  if (!out) {
    throw_error(ErrorKind::Io, "failed writing key file: " + path.string());
  }
}

std::vector<std::uint8_t> read_key_file(const std::filesystem::path& path, size_t expected_size) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw_error(ErrorKind::Io, "cannot open key file: " + path.string());
  }
  std::string hex;
  in >> hex;
  auto bytes = from_hex(hex);
  if (bytes.size() != expected_size) {
    throw_error(ErrorKind::Argument, "key file " + path.string() + " holds " +
                                         std::to_string(bytes.size()) + " bytes, expected " +
                                         std::to_string(expected_size));
  }
  return bytes;
}

SecretKey read_secret_key(const std::filesystem::path& path) {
  auto bytes = read_key_file(path, 32);
  SecretKey key;
  std::copy(bytes.begin(), bytes.end(), key.seed.begin());
  return key;
}

PublicKey read_public_key(const std::filesystem::path& path) {
  auto bytes = read_key_file(path, 32);
  PublicKey key;
  std::copy(bytes.begin(), bytes.end(), key.bytes.begin());
  return key;
}

}  // namespace scholia
