#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "scholia/state.hpp"

namespace scholia {

// ── Version liveness ────────────────────────────────────────────────────

// The version of `lineage_id` visible at time t: the latest non-retracted
// version with release time ≤ t, ties broken toward the larger creating
// seq. Retraction permanently removes a version from liveness, including
// for queries about earlier times — the visible record is the corrected
// one. Throws Argument for an unknown lineage, NotFound when nothing
// qualifies.
ContentHash live_version(const LedgerState& state, const ContentHash& lineage_id,
                         std::int64_t t);

// ── Retraction blast radius ─────────────────────────────────────────────

struct AffectedArtifact {
  ContentHash artifact;
  bool direct = false;  // cites the retracted version itself (else transitive)
  bool post_retraction_citation = false;  // direct edge made after t_retraction

  bool operator==(const AffectedArtifact&) const = default;
};

// Every artifact whose citation chain reaches the retracted version:
// reverse-reachability over citation edges. Sorted by artifact hash.
// Throws Argument when `retracted_version` is not a registered artifact.
std::vector<AffectedArtifact> retraction_affected_set(const LedgerState& state,
                                                      const ContentHash& retracted_version,
                                                      std::int64_t t_retraction);

// ── Commentary threads ──────────────────────────────────────────────────

struct TraceEntry {
  ContentHash event_id;
  std::int64_t tau = 0;
  ContentHash signer;
  std::string modality;
  int meta_depth = 1;  // commentary directly on the artifact = 1, replies +1

  bool operator==(const TraceEntry&) const = default;
};

// Complete ordered discussion of an artifact: every commentary whose target
// chain resolves to it, ordered by (tau, event_id).
// Throws Argument when the artifact is unknown.
std::vector<TraceEntry> commentary_trace(const LedgerState& state, const ContentHash& artifact);

// ── Reuse ───────────────────────────────────────────────────────────────

// Members of the reuse set at time t: hex hashes of distinct artifacts
// citing with a reuse modality (methodological-reuse, extension,
// replication), plus event ids of transfer-use events sourced at the
// artifact. An artifact citing twice still counts once.
std::set<std::string> reuse_set(const LedgerState& state, const ContentHash& artifact,
                                std::int64_t t);

// Growth of the reuse set per configured epoch over (t0, t1]:
//   (|R(t1)| − |R(t0)|) / ((t1 − t0) / epoch_seconds)
// Throws Argument when t1 ≤ t0 or the artifact is unknown.
double reuse_rate(const LedgerState& state, const GovernanceConfig& config,
                  const ContentHash& artifact, std::int64_t t0, std::int64_t t1);

// ── Lineage forks ───────────────────────────────────────────────────────

// All root-to-leaf version paths of a lineage, children visited in
// (tau, version_hash) order, so the result is deterministic.
// Throws Argument for an unknown lineage.
std::vector<std::vector<ContentHash>> fork_branches(const LedgerState& state,
                                                    const ContentHash& lineage_id);

// ── Exports ─────────────────────────────────────────────────────────────

// Citation edge list, one row per citation event in append order:
//   citing \t cited \t modality \t polarity \t integration_depth \t tau
std::string citation_graph_tsv(const LedgerState& state);

// Commentary trace rows for one artifact:
//   event_id \t tau \t signer \t modality \t meta_depth
std::string commentary_trace_tsv(const LedgerState& state, const ContentHash& artifact);

}  // namespace scholia
