#include "scholia/state.hpp"

#include "scholia/errors.hpp"

namespace scholia {

namespace {

// Resolve the public key a state-validated event must verify against.
const IdentityRecord* find_identity(const LedgerState& state, const ContentHash& key_id) {
  auto it = state.identities.find(key_id);
  return it == state.identities.end() ? nullptr : &it->second;
}

void validate_citation(const LedgerState& state, const CitationEvent& body,
                       std::vector<std::string>& v) {
  auto citing = state.artifacts.find(body.citing);
  auto cited = state.artifacts.find(body.cited);
  if (citing == state.artifacts.end()) {
    v.push_back("citing: artifact not registered");
  }
  if (cited == state.artifacts.end()) {
    v.push_back("cited: artifact not registered");
  }
  if (citing == state.artifacts.end() || cited == state.artifacts.end()) return;

  // Citations point backward in time: the citing artifact must have been
  // registered no earlier than the cited one, with the registration seq as
  // tie-break so the citation graph stays acyclic even on equal timestamps.
  if (citing->second.registered_at < cited->second.registered_at) {
    v.push_back("citing: registered earlier than cited artifact");
  } else if (citing->second.registered_at == cited->second.registered_at &&
             citing->second.seq <= cited->second.seq) {
    v.push_back("citing: registration does not follow cited artifact (seq tie-break)");
  }
}

void validate_retraction(const LedgerState& state, const LedgerEvent& event,
                         const RetractionEvent& body, std::vector<std::string>& v) {
  auto lin_it = state.version_lineage.find(body.target_version);
  if (lin_it == state.version_lineage.end()) {
    v.push_back("target_version: not a version of any lineage");
    return;
  }
  const LineageInfo& lineage = state.lineages.at(lin_it->second);
  const VersionNode& node = lineage.nodes.at(body.target_version);
  if (node.retracted) {
    v.push_back("target_version: already retracted");
  }

  // Author rule: the signer retracts their own work, or holds an
  // editor-role attestation.
  const ArtifactInfo& target = state.artifacts.at(body.target_version);
  if (target.author != event.author_key) {
    const IdentityRecord* signer = find_identity(state, event.author_key);
    if (signer == nullptr || !signer->has_attestation(kAttestEditorRole)) {
      v.push_back("author: only the version's author or an editor-role holder may retract");
    }
    if (body.voluntary) {
      v.push_back("voluntary: only the version's author may declare a retraction voluntary");
    }
  }
}

}  // namespace

std::vector<std::string> validate_event(const LedgerState& state, const LedgerEvent& event) {
  std::vector<std::string> v = validate_payload(event.body);

  if (state.seen_event_ids.count(event.event_id)) {
    v.push_back("event_id: duplicate of an already-appended event");
  }

  // Signer must be registered before use; identity registrations bootstrap
  // themselves (envelope author == key id of the embedded public key).
  if (const auto* reg = std::get_if<IdentityRegistration>(&event.body)) {
    if (event.author_key != key_id_of(reg->public_key)) {
      v.push_back("author_key: identity registration must be self-signed");
    }
    if (state.knows_identity(key_id_of(reg->public_key))) {
      v.push_back("public_key: identity already registered");
    }
    return v;
  }

  if (!state.knows_identity(event.author_key)) {
    v.push_back("author_key: signer is not a registered identity");
    return v;  // referential checks below assume a known signer
  }

  if (const auto* p = std::get_if<AttestationEvent>(&event.body)) {
    const IdentityRecord* subject = find_identity(state, p->subject_key);
    if (subject == nullptr) {
      v.push_back("subject_key: identity not registered");
    } else {
      const IdentityRecord* issuer = find_identity(state, event.author_key);
      std::string bytes =
          attestation_signing_bytes(p->subject_key, p->claim_kind, p->payload_hash);
      if (is_attestation_kind(p->claim_kind) &&
          !verify_signature(bytes, p->signature, issuer->public_key)) {
        v.push_back("signature: attestation signature does not verify against the issuer key");
      }
    }
  } else if (const auto* p = std::get_if<ArtifactRegistration>(&event.body)) {
    if (state.knows_artifact(p->artifact_hash)) {
      v.push_back("artifact_hash: already registered");
    }
    bool starts_lineage = (p->lineage_id == p->artifact_hash);
    if (starts_lineage) {
      if (state.lineages.count(p->lineage_id)) {
        v.push_back("lineage_id: lineage with this id already exists");
      }
    } else if (!state.lineages.count(p->lineage_id)) {
      v.push_back("lineage_id: must match an existing lineage or equal artifact_hash");
    }
    if (p->created_at > event.timestamp) {
      v.push_back("created_at: declared creation lies after registration time");
    }
  } else if (const auto* p = std::get_if<CommentaryEvent>(&event.body)) {
    if (!state.knows_artifact(p->target) && !state.commentaries.count(p->target)) {
      v.push_back("target: neither a registered artifact nor an existing commentary");
    }
  } else if (const auto* p = std::get_if<CitationEvent>(&event.body)) {
    validate_citation(state, *p, v);
  } else if (const auto* p = std::get_if<VersionEvent>(&event.body)) {
    auto lineage = state.lineages.find(p->lineage_id);
    if (lineage == state.lineages.end()) {
      v.push_back("lineage_id: unknown lineage");
    } else {
      auto artifact = state.artifacts.find(p->version_hash);
      if (artifact == state.artifacts.end()) {
        v.push_back("version_hash: artifact not registered");
      } else if (artifact->second.payload.lineage_id != p->lineage_id) {
        v.push_back("version_hash: artifact was registered under a different lineage");
      }
      if (state.version_lineage.count(p->version_hash)) {
        v.push_back("version_hash: already a version node");
      }
      if (p->parent_version && !lineage->second.nodes.count(*p->parent_version)) {
        v.push_back("parent_version: not a version of this lineage");
      }
    }
  } else if (const auto* p = std::get_if<RetractionEvent>(&event.body)) {
    validate_retraction(state, event, *p, v);
  } else if (const auto* p = std::get_if<ReplicationEvent>(&event.body)) {
    if (!state.knows_artifact(p->target)) {
      v.push_back("target: artifact not registered");
    }
  } else if (const auto* p = std::get_if<TransferUseEvent>(&event.body)) {
    if (!state.knows_artifact(p->source)) {
      v.push_back("source: artifact not registered");
    }
  }
  // NullResultEvent carries no ledger references beyond payload rules.

  return v;
}

void apply_event(LedgerState& state, const LedgerEvent& event) {
  state.seen_event_ids.emplace(event.event_id, event.seq);
  state.applied_count++;
  if (event.timestamp > state.last_timestamp) state.last_timestamp = event.timestamp;

  if (const auto* p = std::get_if<IdentityRegistration>(&event.body)) {
    IdentityRecord record;
    record.public_key = p->public_key;
    record.key_id = key_id_of(p->public_key);
    record.created_at = p->created_at;
    state.identities.emplace(record.key_id, std::move(record));
  } else if (const auto* p = std::get_if<AttestationEvent>(&event.body)) {
    auto& subject = state.identities.at(p->subject_key);
    Attestation attestation{event.author_key, p->claim_kind, p->payload_hash, p->signature};
    const IdentityRecord& issuer = state.identities.at(event.author_key);
    subject = bind_attestation(subject, attestation, issuer.public_key);
  } else if (const auto* p = std::get_if<ArtifactRegistration>(&event.body)) {
    ArtifactInfo info{*p, event.author_key, event.timestamp, event.seq};
    state.artifacts.emplace(p->artifact_hash, std::move(info));
    if (p->lineage_id == p->artifact_hash) {
      LineageInfo lineage;
      lineage.root = p->artifact_hash;
      VersionNode root;
      root.version_hash = p->artifact_hash;
      root.author = event.author_key;
      root.tau = event.timestamp;
      root.seq = event.seq;
      lineage.nodes.emplace(p->artifact_hash, std::move(root));
      lineage.node_order.push_back(p->artifact_hash);
      state.lineages.emplace(p->lineage_id, std::move(lineage));
      state.version_lineage.emplace(p->artifact_hash, p->lineage_id);
    }
  } else if (const auto* p = std::get_if<CommentaryEvent>(&event.body)) {
    CommentaryInfo info{*p, event.event_id, event.author_key, event.timestamp, event.seq};
    state.commentaries.emplace(event.event_id, std::move(info));
    state.commentary_order.push_back(event.event_id);
  } else if (const auto* p = std::get_if<CitationEvent>(&event.body)) {
    state.citations.push_back(CitationInfo{*p, event.event_id, event.author_key, event.seq});
  } else if (const auto* p = std::get_if<VersionEvent>(&event.body)) {
    auto& lineage = state.lineages.at(p->lineage_id);
    VersionNode node;
    node.version_hash = p->version_hash;
    node.parent = p->parent_version;
    node.modification = p->modification;
    node.author = event.author_key;
    node.tau = p->tau;
    node.seq = event.seq;
    lineage.nodes.emplace(p->version_hash, std::move(node));
    lineage.node_order.push_back(p->version_hash);
    state.version_lineage.emplace(p->version_hash, p->lineage_id);
  } else if (const auto* p = std::get_if<RetractionEvent>(&event.body)) {
    state.retractions.push_back(
        RetractionInfo{*p, event.event_id, event.author_key, event.timestamp, event.seq});
    auto& lineage = state.lineages.at(state.version_lineage.at(p->target_version));
    auto& node = lineage.nodes.at(p->target_version);
    node.retracted = true;
    node.retraction_index = state.retractions.size() - 1;
  } else if (const auto* p = std::get_if<NullResultEvent>(&event.body)) {
    state.null_results.push_back(
        NullResultInfo{*p, event.event_id, event.author_key, event.seq});
  } else if (const auto* p = std::get_if<ReplicationEvent>(&event.body)) {
    state.replications.push_back(
        ReplicationInfo{*p, event.event_id, event.author_key, event.seq});
  } else if (const auto* p = std::get_if<TransferUseEvent>(&event.body)) {
    state.transfers.push_back(
        TransferUseInfo{*p, event.event_id, event.author_key, event.seq});
  }
}

LedgerState replay(const Ledger& ledger) {
  LedgerState state;
  for (const auto& event : ledger.events()) {
    auto violations = validate_event(state, event);
    if (!violations.empty()) {
      std::string message = "event " + std::to_string(event.seq) + " invalid:";
      for (const auto& violation : violations) message += " [" + violation + "]";
      throw_error(ErrorKind::Validation, message);
    }
    apply_event(state, event);
  }
  return state;
}

}  // namespace scholia
