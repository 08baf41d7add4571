#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scholia/canonical.hpp"
#include "scholia/hash.hpp"
#include "scholia/identity.hpp"

namespace scholia {

// ── Claims ──────────────────────────────────────────────────────────────

// A single falsifiable assertion attached to an artifact, commentary, or
// transfer event. Two claims address the same question when their
// (subject, predicate, dataset_class) keys match.
struct Claim {
  std::string subject;
  std::string predicate;
  std::string direction;  // "positive" | "negative" | "zero"
  std::optional<double> magnitude;
  std::string dataset_class;
  std::string method_class;

  bool operator==(const Claim&) const = default;
};

bool is_claim_direction(std::string_view direction);

// ── Modality / enumeration vocabularies ─────────────────────────────────

// Commentary modalities.
const std::vector<std::string>& commentary_modalities();
// Citation modalities.
const std::vector<std::string>& citation_modalities();
// Version modification kinds.
const std::vector<std::string>& version_modifications();
// Retraction reason codes.
const std::vector<std::string>& retraction_reasons();

bool is_commentary_modality(std::string_view m);
bool is_citation_modality(std::string_view m);
bool is_version_modification(std::string_view m);
bool is_retraction_reason(std::string_view m);

// Modality key used for transfer-use events in the modality weight table.
inline constexpr const char* kTransferUseModality = "transfer-use";

// Citation modalities that constitute reuse (they populate the reuse set
// alongside transfer-use events).
const std::vector<std::string>& reuse_citation_modalities();

// ── Typed event payloads ────────────────────────────────────────────────

// Self-signed announcement of a public key; must be present in the ledger
// before the key signs anything else. `scheme` pins the signature scheme
// in-band so verification rules cannot drift.
struct IdentityRegistration {
  PublicKey public_key;
  std::string scheme;  // must equal the configured scheme ("ed25519")
  std::int64_t created_at = 0;

  bool operator==(const IdentityRegistration&) const = default;
};

// Issuer (the envelope author) vouches a claim about subject_key. The body
// carries the issuer's detached signature over attestation_signing_bytes so
// the attestation stays verifiable outside envelope context.
struct AttestationEvent {
  ContentHash subject_key;
  std::string claim_kind;  // institutional-credential | external-id | editor-role
  ContentHash payload_hash;
  Signature signature;

  bool operator==(const AttestationEvent&) const = default;
};

// Entry of an artifact into the ledger. lineage_id == artifact_hash starts
// a fresh lineage with this artifact as version 0; otherwise the artifact
// joins an existing lineage (and enters its version graph via a later
// version event).
struct ArtifactRegistration {
  ContentHash artifact_hash;
  ContentHash lineage_id;
  std::string title;
  std::vector<std::string> domain_tags;
  std::vector<Claim> claims;
  std::optional<ContentHash> data_hash;      // dataset the claims rest on
  std::optional<ContentHash> protocol_hash;  // method/protocol description
  std::int64_t created_at = 0;               // declared creation, ≤ registration time

  bool operator==(const ArtifactRegistration&) const = default;
};

// Commentary on an artifact or on another commentary (meta-commentary when
// target is a commentary event id).
struct CommentaryEvent {
  ContentHash target;
  std::string modality;
  std::vector<Claim> claims;
  ContentHash text_hash;  // content hash of the commentary text
  std::int64_t tau = 0;

  bool operator==(const CommentaryEvent&) const = default;
};

// Directed, typed, weighted citation. Citing must have been registered no
// earlier than cited, which keeps the citation graph acyclic.
struct CitationEvent {
  ContentHash citing;
  ContentHash cited;
  std::string modality;
  double polarity = 0.0;           // [-1, 1]
  double integration_depth = 0.0;  // [0, 1]
  std::int64_t tau = 0;

  bool operator==(const CitationEvent&) const = default;
};

// Adds a registered artifact to a lineage's version graph under a parent.
struct VersionEvent {
  ContentHash lineage_id;
  ContentHash version_hash;
  std::optional<ContentHash> parent_version;  // required: version 0 comes from registration
  std::string modification;  // corrigendum | retraction-notice | addendum | reanalysis | extension
  std::int64_t tau = 0;

  bool operator==(const VersionEvent&) const = default;
};

// Marks one version as retracted. Only the version's author, or a signer
// holding an editor-role attestation, may append this.
struct RetractionEvent {
  ContentHash target_version;
  std::vector<std::string> reasons;  // non-empty subset of retraction_reasons()
  bool voluntary = false;
  std::int64_t tau = 0;

  bool operator==(const RetractionEvent&) const = default;
};

// A first-class negative/absent finding for a hypothesis.
struct NullResultEvent {
  std::string hypothesis_id;
  std::string dataset_desc;
  std::string method_desc;
  double effect_size = 0.0;
  double confidence = 0.0;  // [0, 1]
  std::int64_t tau = 0;

  bool operator==(const NullResultEvent&) const = default;
};

// Outcome of re-running an artifact's work on a dataset variant.
struct ReplicationEvent {
  ContentHash target;
  std::string dataset_variant;
  double congruence = 0.0;  // [0, 1]
  std::int64_t tau = 0;

  bool operator==(const ReplicationEvent&) const = default;
};

// A method/result carried into a new domain, with the claim that resulted.
struct TransferUseEvent {
  ContentHash source;
  std::string new_domain;
  std::string dataset;
  std::string protocol;
  Claim resulting_claim;
  std::int64_t tau = 0;

  bool operator==(const TransferUseEvent&) const = default;
};

using EventBody =
    std::variant<IdentityRegistration, AttestationEvent, ArtifactRegistration, CommentaryEvent,
                 CitationEvent, VersionEvent, RetractionEvent, NullResultEvent, ReplicationEvent,
                 TransferUseEvent>;

// The `type` discriminator string each payload serializes under.
std::string event_type(const EventBody& body);

// JSON (de)serialization of payloads. body_from_json throws Encoding on a
// structurally malformed document (missing field, wrong type, unknown
// `type` tag). Semantic field rules live in validate_payload.
Json body_to_json(const EventBody& body);
EventBody body_from_json(const Json& doc);

Json claim_to_json(const Claim& claim);
Claim claim_from_json(const Json& doc);

// Field-level rules that need no ledger state: enum membership, numeric
// ranges, non-empty requirements. Returns human-readable violations, empty
// when the payload is well-formed.
std::vector<std::string> validate_payload(const EventBody& body);

// ── Governance configuration ────────────────────────────────────────────

// Every tunable weight in one place. Reports embed hash_of() so any two
// numbers can be traced to the exact parameter set that produced them.
struct GovernanceConfig {
  int config_version = 1;
  std::string sig_scheme = kSignatureScheme;
  std::int64_t epoch_seconds = 604800;  // one week

  // reputation = alpha·validated + beta·endorsed + gamma/(1 + involuntary retractions)
  double reputation_alpha = 1.0;
  double reputation_beta = 1.0;
  double reputation_gamma = 1.0;

  // trust delta per epoch: +lambda_endorse·E − lambda_flag·F + lambda_replication·R
  double trust_lambda_endorse = 0.5;
  double trust_lambda_flag = 1.0;
  double trust_lambda_replication = 0.5;

  double dampening_lambda = 0.9;  // (0,1): prior multiplier per confident null result

  // impact weight = alpha_pos·positive_citations + beta_null·null_confirmations,
  // beta_null ≥ alpha_pos > 0 so confirmed absence never counts below presence.
  double impact_alpha_pos = 1.0;
  double impact_beta_null = 1.0;

  // ethics score weights: proactive (voluntary) vs responsive (involuntary
  // self-signed) retraction.
  double ethics_beta_proactive = 1.0;
  double ethics_gamma_responsive = 0.5;

  // overlap thresholds on semantic / method distance
  double overlap_eps_semantic = 0.3;
  double overlap_eps_method = 0.3;

  // novelty = lambda_entropy·E + lambda_claims·C + lambda_latency·L
  double novelty_lambda_entropy = 0.4;
  double novelty_lambda_claims = 0.4;
  double novelty_lambda_latency = 0.2;
  double novelty_horizon_seconds = 2592000.0;  // 30 days
  double softmax_temperature = 1.0;

  double influence_decay = 0.5;  // rho in (0,1): weight of citer influence feedback

  double congruent_replication_min = 0.5;  // delta at or above counts as congruent

  // review quality weights, must sum to 1
  double rqi_w_claims = 0.25;
  double rqi_w_confirmation = 0.5;
  double rqi_w_meta = 0.25;

  int embedding_dim = 64;

  // modality weight table m_mu: every commentary and citation modality plus
  // "transfer-use" must be present.
  std::map<std::string, double> modality_weights;

  bool operator==(const GovernanceConfig&) const = default;

  static GovernanceConfig defaults();

  double modality_weight(std::string_view modality) const;  // throws Config when missing

  Json to_json() const;
  static GovernanceConfig from_json(const Json& doc);  // throws Encoding / Config

  // Canonical-bytes hash identifying this exact parameter set.
  ContentHash hash_of() const;
};

// Throws Config with the first violated rule, if any.
void validate_config(const GovernanceConfig& config);

GovernanceConfig load_config(const std::filesystem::path& path);
void save_config(const GovernanceConfig& config, const std::filesystem::path& path);

}  // namespace scholia
