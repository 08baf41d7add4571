#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scholia/events.hpp"
#include "scholia/ledger.hpp"

namespace scholia {

// ── Projected records ───────────────────────────────────────────────────

struct ArtifactInfo {
  ArtifactRegistration payload;
  ContentHash author;            // envelope author_key of the registration
  std::int64_t registered_at = 0;  // envelope timestamp
  std::uint64_t seq = 0;
};

// One node in a lineage's version graph. The root node is created by the
// lineage-starting registration; every other node by a version event.
struct VersionNode {
  ContentHash version_hash;
  std::optional<ContentHash> parent;   // empty only for the root
  std::string modification;            // empty for the root
  ContentHash author;                  // signer of the creating event
  std::int64_t tau = 0;                // release time (registration ts / event tau)
  std::uint64_t seq = 0;               // creating event seq (tie-break for liveness)
  bool retracted = false;
  std::optional<std::uint64_t> retraction_index;  // into LedgerState::retractions
};

struct LineageInfo {
  ContentHash root;
  std::map<ContentHash, VersionNode> nodes;
  std::vector<ContentHash> node_order;  // insertion order, deterministic
};

struct CommentaryInfo {
  CommentaryEvent payload;
  ContentHash event_id;
  ContentHash author;
  std::int64_t timestamp = 0;
  std::uint64_t seq = 0;
};

struct CitationInfo {
  CitationEvent payload;
  ContentHash event_id;
  ContentHash author;
  std::uint64_t seq = 0;
};

struct RetractionInfo {
  RetractionEvent payload;
  ContentHash event_id;
  ContentHash author;
  std::int64_t timestamp = 0;
  std::uint64_t seq = 0;
};

struct NullResultInfo {
  NullResultEvent payload;
  ContentHash event_id;
  ContentHash author;
  std::uint64_t seq = 0;
};

struct ReplicationInfo {
  ReplicationEvent payload;
  ContentHash event_id;
  ContentHash author;
  std::uint64_t seq = 0;
};

struct TransferUseInfo {
  TransferUseEvent payload;
  ContentHash event_id;
  ContentHash author;
  std::uint64_t seq = 0;
};

// ── State ───────────────────────────────────────────────────────────────

// Pure fold of the event log: applying the same events in the same order
// always lands on the same state, and applying an event never removes or
// mutates existing facts (retraction only flips the target's liveness flag
// forward). All collections iterate deterministically.
struct LedgerState {
  std::map<ContentHash, IdentityRecord> identities;  // key id → record
  std::map<ContentHash, ArtifactInfo> artifacts;     // artifact hash → info
  std::map<ContentHash, LineageInfo> lineages;       // lineage id → version graph
  std::map<ContentHash, ContentHash> version_lineage;  // version hash → lineage id

  std::map<ContentHash, CommentaryInfo> commentaries;  // event id → info
  std::vector<ContentHash> commentary_order;           // append order

  std::vector<CitationInfo> citations;
  std::vector<RetractionInfo> retractions;
  std::vector<NullResultInfo> null_results;
  std::vector<ReplicationInfo> replications;
  std::vector<TransferUseInfo> transfers;

  std::map<ContentHash, std::uint64_t> seen_event_ids;  // event id → seq
  std::uint64_t applied_count = 0;
  std::int64_t last_timestamp = 0;

  bool knows_artifact(const ContentHash& hash) const { return artifacts.count(hash) > 0; }
  bool knows_identity(const ContentHash& key_id) const { return identities.count(key_id) > 0; }
};

// Referential validation of `event` against the state the ledger would have
// right before appending it. Returns human-readable violations (field and
// rule), empty when the event is admissible. Includes the payload-level
// rules from validate_payload.
std::vector<std::string> validate_event(const LedgerState& state, const LedgerEvent& event);

// Applies one admissible event. Call validate_event first; apply_event only
// asserts cheap internal invariants. Deterministic and append-only.
void apply_event(LedgerState& state, const LedgerEvent& event);

// validate + apply for every event in order; throws Validation with the
// first violation encountered. The canonical way to rebuild state.
LedgerState replay(const Ledger& ledger);

}  // namespace scholia
