#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "scholia/events.hpp"
#include "scholia/hash.hpp"
#include "scholia/identity.hpp"
#include "scholia/merkle.hpp"
#include "scholia/parallel.hpp"

namespace scholia {

// ── Envelope ────────────────────────────────────────────────────────────

// One signed, hash-chained ledger entry. Stored as a single canonical JSON
// line; re-serialization is byte-identical by construction.
struct LedgerEvent {
  ContentHash event_id;  // hash_content(canonical body)
  std::uint64_t seq = 0;
  ContentHash prev_hash;  // envelope hash of seq-1; all-zero for seq 0
  std::int64_t timestamp = 0;
  ContentHash author_key;  // key id of the signer
  Signature signature;     // over signing_bytes()
  EventBody body;

  Json to_json() const;
  static LedgerEvent from_json(const Json& doc);  // throws Encoding when malformed

  // The canonical envelope line (no trailing newline).
  std::string canonical_bytes() const;

  // Bytes the signature covers: canonical {author_key, body, prev_hash,
  // seq, timestamp}. Covering the whole header (not just the body) makes
  // every stored byte of an envelope — including the head event's metadata,
  // which no later prev_hash commits to — detectable under tampering.
  std::string signing_bytes() const;

  // Domain-separated hash of canonical_bytes(); the next event's prev_hash.
  ContentHash envelope_hash() const;
};

// ── Signature verification cache ────────────────────────────────────────

// Bounded memoization of successful signature checks, keyed by a digest of
// (public key ‖ message ‖ signature). Re-verifying an unchanged prefix after
// a tamper scan then costs hashing instead of a full Ed25519 verify; any
// altered byte changes the key and forces a real verification.
class SignatureCache {
public:
  explicit SignatureCache(std::size_t max_entries = 1 << 20) : max_entries_(max_entries) {}

  bool verify(std::span<const std::uint8_t> message, const Signature& signature,
              const PublicKey& key);
  bool verify(std::string_view message, const Signature& signature, const PublicKey& key);

  // Variant for callers that already hold a digest pinning the message (the
  // envelope hash covers every byte of the stored line, hence the signing
  // bytes derived from it). The message is only materialized on a miss, so
  // repeat verification of an unchanged line skips the re-encode entirely.
  // The 128-byte key material (key ‖ signature ‖ digest) cannot collide with
  // the variable-length form above because messages are never 32 bytes here.
  bool verify_keyed(const ContentHash& message_digest, const Signature& signature,
                    const PublicKey& key, const std::function<std::string()>& message);

private:
  std::size_t max_entries_;
  std::mutex mutex_;
  std::unordered_set<std::string> verified_;
};

// ── Ledger ──────────────────────────────────────────────────────────────

class Ledger {
public:
  const std::vector<LedgerEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  const LedgerEvent& at(std::uint64_t seq) const;

  // Envelope hash of the last event, or the all-zero genesis predecessor.
  ContentHash head_hash() const;

  // Build, sign, and append the envelope for `body`. Performs no state
  // validation — Repository::append is the validated entry point.
  const LedgerEvent& append(EventBody body, const SecretKey& signer_key,
                            const ContentHash& signer_id, std::int64_t timestamp);

  // Raw envelope append (replay / tests). Throws Argument when seq or
  // prev_hash do not extend this ledger.
  const LedgerEvent& append_envelope(LedgerEvent event);

  // Strict parse of a chain file: throws Encoding on any malformed line.
  // (Use verify_chain_file to *diagnose* a possibly tampered file.)
  static Ledger load(const std::filesystem::path& path);

  void save(const std::filesystem::path& path) const;  // rewrites whole file
  static void append_line(const std::filesystem::path& path, const LedgerEvent& event);

private:
  std::vector<LedgerEvent> events_;
};

// ── Verification ────────────────────────────────────────────────────────

struct ChainFailure {
  std::uint64_t seq = 0;
  std::string reason;
};

struct VerifyReport {
  bool ok = true;
  std::optional<ChainFailure> failure;

  static VerifyReport success() { return {}; }
  static VerifyReport fail(std::uint64_t seq, std::string reason) {
    return {false, ChainFailure{seq, std::move(reason)}};
  }
};

// Full integrity scan over serialized envelope lines:
//   every line canonical and parseable, seq dense from 0, event ids match
//   their bodies, event ids unique, authors registered before use (identity
//   registrations self-signed), signatures valid, hash links intact,
//   genesis prev_hash all-zero.
// Reports the smallest failing seq. Empty input verifies trivially.
VerifyReport verify_chain(std::span<const std::string> lines,
                          ExecMode mode = ExecMode::Parallel,
                          SignatureCache* cache = nullptr);

VerifyReport verify_chain(const Ledger& ledger, ExecMode mode = ExecMode::Parallel,
                          SignatureCache* cache = nullptr);

VerifyReport verify_chain_file(const std::filesystem::path& path,
                               ExecMode mode = ExecMode::Parallel,
                               SignatureCache* cache = nullptr);

// ── Anchors ─────────────────────────────────────────────────────────────

// Merkle root over the envelope hashes of a contiguous seq range; the
// compact external commitment to a chain segment.
struct AnchorRecord {
  std::uint64_t seq_from = 0;
  std::uint64_t seq_to = 0;  // inclusive
  ContentHash merkle_root;
  std::int64_t anchored_at = 0;

  Json to_json() const;
  static AnchorRecord from_json(const Json& doc);
};

class AnchorLog {
public:
  const std::vector<AnchorRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }

  void append(AnchorRecord record);

  static AnchorLog load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
  static void append_line(const std::filesystem::path& path, const AnchorRecord& record);

private:
  std::vector<AnchorRecord> records_;
};

// Root over envelope hashes of [seq_from, seq_to]; throws Argument on an
// empty or out-of-range span.
AnchorRecord make_anchor(const Ledger& ledger, std::uint64_t seq_from, std::uint64_t seq_to,
                         std::int64_t anchored_at, ExecMode mode = ExecMode::Parallel);

// Inclusion proof of event `seq` under `anchor` (sides + sibling hashes).
InclusionProof anchor_inclusion_proof(const Ledger& ledger, const AnchorRecord& anchor,
                                      std::uint64_t seq, ExecMode mode = ExecMode::Parallel);

// Anchors must start at seq 0, be contiguous and non-overlapping, stay in
// range, and carry roots that recompute exactly.
VerifyReport verify_anchors(const Ledger& ledger, const AnchorLog& anchors,
                            ExecMode mode = ExecMode::Parallel);

}  // namespace scholia
