#include "scholia/events.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "scholia/errors.hpp"

namespace scholia {

// ── Vocabularies ────────────────────────────────────────────────────────

bool is_claim_direction(std::string_view d) {
  return d == "positive" || d == "negative" || d == "zero";
}

const std::vector<std::string>& commentary_modalities() {
  static const std::vector<std::string> kinds = {
      "criticism", "endorsement", "reinterpretation", "derivation", "error-flag",
      "replication-note"};
  return kinds;
}

const std::vector<std::string>& citation_modalities() {
  static const std::vector<std::string> kinds = {
      "foundational", "critique", "replication", "methodological-reuse", "extension",
      "contradiction"};
  return kinds;
}

const std::vector<std::string>& version_modifications() {
  static const std::vector<std::string> kinds = {
      "corrigendum", "retraction-notice", "addendum", "reanalysis", "extension"};
  return kinds;
}

const std::vector<std::string>& retraction_reasons() {
  static const std::vector<std::string> kinds = {
      "methodological-flaw", "ethical-breach", "data-falsity", "superseded"};
  return kinds;
}

namespace {
bool contains(const std::vector<std::string>& xs, std::string_view x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}
}  // namespace

bool is_commentary_modality(std::string_view m) { return contains(commentary_modalities(), m); }
bool is_citation_modality(std::string_view m) { return contains(citation_modalities(), m); }
bool is_version_modification(std::string_view m) { return contains(version_modifications(), m); }
bool is_retraction_reason(std::string_view m) { return contains(retraction_reasons(), m); }

const std::vector<std::string>& reuse_citation_modalities() {
  static const std::vector<std::string> kinds = {"methodological-reuse", "extension",
                                                 "replication"};
  return kinds;
}

// ── JSON field helpers ──────────────────────────────────────────────────

namespace {

[[noreturn]] void malformed(const std::string& what) { throw_error(ErrorKind::Encoding, what); }

const Json& need(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) malformed(std::string("missing field: ") + key);
  return *it;
}

std::string need_str(const Json& doc, const char* key) {
  const Json& v = need(doc, key);
  if (!v.is_string()) malformed(std::string("field must be a string: ") + key);
  return v.get<std::string>();
}

std::int64_t need_i64(const Json& doc, const char* key) {
  const Json& v = need(doc, key);
  if (!v.is_number_integer()) malformed(std::string("field must be an integer: ") + key);
  return v.get<std::int64_t>();
}

double need_num(const Json& doc, const char* key) {
  const Json& v = need(doc, key);
  if (!v.is_number()) malformed(std::string("field must be a number: ") + key);
  return v.get<double>();
}

bool need_bool(const Json& doc, const char* key) {
  const Json& v = need(doc, key);
  if (!v.is_boolean()) malformed(std::string("field must be a boolean: ") + key);
  return v.get<bool>();
}

ContentHash need_hash(const Json& doc, const char* key) {
  std::string hex = need_str(doc, key);
  try {
    return ContentHash::from_hex(hex);
  } catch (const Error&) {
    malformed(std::string("field is not a 64-hex digest: ") + key);
  }
}

std::vector<std::string> need_str_array(const Json& doc, const char* key) {
  const Json& v = need(doc, key);
  if (!v.is_array()) malformed(std::string("field must be an array: ") + key);
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) malformed(std::string("array items must be strings: ") + key);
    out.push_back(item.get<std::string>());
  }
  return out;
}

// Unknown fields would be silently dropped on re-encode, breaking the
// byte-identity guarantee, so they are rejected outright.
void only_fields(const Json& doc, std::initializer_list<const char*> keys) {
  if (!doc.is_object()) malformed("payload must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool known = false;
    for (const char* k : keys) {
      if (it.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) malformed("unknown field: " + it.key());
  }
}

}  // namespace

// ── Claims ──────────────────────────────────────────────────────────────

Json claim_to_json(const Claim& claim) {
  Json doc = Json::object();
  doc["subject"] = claim.subject;
  doc["predicate"] = claim.predicate;
  doc["direction"] = claim.direction;
  if (claim.magnitude) doc["magnitude"] = *claim.magnitude;
  doc["dataset_class"] = claim.dataset_class;
  doc["method_class"] = claim.method_class;
  return doc;
}

Claim claim_from_json(const Json& doc) {
  only_fields(doc, {"subject", "predicate", "direction", "magnitude", "dataset_class",
                    "method_class"});
  Claim claim;
  claim.subject = need_str(doc, "subject");
  claim.predicate = need_str(doc, "predicate");
  claim.direction = need_str(doc, "direction");
  if (doc.contains("magnitude")) claim.magnitude = need_num(doc, "magnitude");
  claim.dataset_class = need_str(doc, "dataset_class");
  claim.method_class = need_str(doc, "method_class");
  return claim;
}

namespace {

Json claims_to_json(const std::vector<Claim>& claims) {
  Json arr = Json::array();
  for (const auto& c : claims) arr.push_back(claim_to_json(c));
  return arr;
}

std::vector<Claim> claims_from_json(const Json& doc, const char* key) {
  const Json& v = need(doc, key);
  if (!v.is_array()) malformed(std::string("field must be an array: ") + key);
  std::vector<Claim> out;
  for (const auto& item : v) out.push_back(claim_from_json(item));
  return out;
}

void validate_claim(const Claim& claim, const std::string& where,
                    std::vector<std::string>& violations) {
  if (!is_claim_direction(claim.direction)) {
    violations.push_back(where + ".direction: must be positive, negative, or zero");
  }
  if (claim.magnitude && !std::isfinite(*claim.magnitude)) {
    violations.push_back(where + ".magnitude: must be finite");
  }
  if (claim.subject.empty()) violations.push_back(where + ".subject: must be non-empty");
  if (claim.predicate.empty()) violations.push_back(where + ".predicate: must be non-empty");
}

}  // namespace

// ── Payload (de)serialization ───────────────────────────────────────────

std::string event_type(const EventBody& body) {
  struct Visitor {
    std::string operator()(const IdentityRegistration&) const { return "identity-registration"; }
    std::string operator()(const AttestationEvent&) const { return "attestation"; }
    std::string operator()(const ArtifactRegistration&) const { return "artifact-registration"; }
    std::string operator()(const CommentaryEvent&) const { return "commentary"; }
    std::string operator()(const CitationEvent&) const { return "citation"; }
    std::string operator()(const VersionEvent&) const { return "version"; }
    std::string operator()(const RetractionEvent&) const { return "retraction"; }
    std::string operator()(const NullResultEvent&) const { return "null-result"; }
    std::string operator()(const ReplicationEvent&) const { return "replication"; }
    std::string operator()(const TransferUseEvent&) const { return "transfer-use"; }
  };
  return std::visit(Visitor{}, body);
}

Json body_to_json(const EventBody& body) {
  Json doc = Json::object();
  doc["type"] = event_type(body);

  if (const auto* p = std::get_if<IdentityRegistration>(&body)) {
    doc["public_key"] = p->public_key.hex();
    doc["scheme"] = p->scheme;
    doc["created_at"] = p->created_at;
  } else if (const auto* p = std::get_if<AttestationEvent>(&body)) {
    doc["subject_key"] = p->subject_key.hex();
    doc["claim_kind"] = p->claim_kind;
    doc["payload_hash"] = p->payload_hash.hex();
    doc["signature"] = p->signature.hex();
  } else if (const auto* p = std::get_if<ArtifactRegistration>(&body)) {
    doc["artifact_hash"] = p->artifact_hash.hex();
    doc["lineage_id"] = p->lineage_id.hex();
    doc["title"] = p->title;
    doc["domain_tags"] = p->domain_tags;
    doc["claims"] = claims_to_json(p->claims);
    if (p->data_hash) doc["data_hash"] = p->data_hash->hex();
    if (p->protocol_hash) doc["protocol_hash"] = p->protocol_hash->hex();
    doc["created_at"] = p->created_at;
  } else if (const auto* p = std::get_if<CommentaryEvent>(&body)) {
    doc["target"] = p->target.hex();
    doc["modality"] = p->modality;
    doc["claims"] = claims_to_json(p->claims);
    doc["text_hash"] = p->text_hash.hex();
    doc["tau"] = p->tau;
  } else if (const auto* p = std::get_if<CitationEvent>(&body)) {
    doc["citing"] = p->citing.hex();
    doc["cited"] = p->cited.hex();
    doc["modality"] = p->modality;
    doc["polarity"] = p->polarity;
    doc["integration_depth"] = p->integration_depth;
    doc["tau"] = p->tau;
  } else if (const auto* p = std::get_if<VersionEvent>(&body)) {
    doc["lineage_id"] = p->lineage_id.hex();
    doc["version_hash"] = p->version_hash.hex();
    if (p->parent_version) doc["parent_version"] = p->parent_version->hex();
    doc["modification"] = p->modification;
    doc["tau"] = p->tau;
  } else if (const auto* p = std::get_if<RetractionEvent>(&body)) {
    doc["target_version"] = p->target_version.hex();
    doc["reasons"] = p->reasons;
    doc["voluntary"] = p->voluntary;
    doc["tau"] = p->tau;
  } else if (const auto* p = std::get_if<NullResultEvent>(&body)) {
    doc["hypothesis_id"] = p->hypothesis_id;
    doc["dataset_desc"] = p->dataset_desc;
    doc["method_desc"] = p->method_desc;
    doc["effect_size"] = p->effect_size;
    doc["confidence"] = p->confidence;
    doc["tau"] = p->tau;
  } else if (const auto* p = std::get_if<ReplicationEvent>(&body)) {
    doc["target"] = p->target.hex();
    doc["dataset_variant"] = p->dataset_variant;
    doc["congruence"] = p->congruence;
    doc["tau"] = p->tau;
  } else if (const auto* p = std::get_if<TransferUseEvent>(&body)) {
    doc["source"] = p->source.hex();
    doc["new_domain"] = p->new_domain;
    doc["dataset"] = p->dataset;
    doc["protocol"] = p->protocol;
    doc["resulting_claim"] = claim_to_json(p->resulting_claim);
    doc["tau"] = p->tau;
  }
  return doc;
}

EventBody body_from_json(const Json& doc) {
  if (!doc.is_object()) malformed("event body must be a JSON object");
  std::string type = need_str(doc, "type");

  if (type == "identity-registration") {
    only_fields(doc, {"type", "public_key", "scheme", "created_at"});
    IdentityRegistration p;
    p.public_key = PublicKey::from_hex(need_str(doc, "public_key"));
    p.scheme = need_str(doc, "scheme");
    p.created_at = need_i64(doc, "created_at");
    return p;
  }
  if (type == "attestation") {
    only_fields(doc, {"type", "subject_key", "claim_kind", "payload_hash", "signature"});
    AttestationEvent p;
    p.subject_key = need_hash(doc, "subject_key");
    p.claim_kind = need_str(doc, "claim_kind");
    p.payload_hash = need_hash(doc, "payload_hash");
    try {
      p.signature = Signature::from_hex(need_str(doc, "signature"));
    } catch (const Error&) {
      malformed("attestation signature is not 128 hex characters");
    }
    return p;
  }
  if (type == "artifact-registration") {
    only_fields(doc, {"type", "artifact_hash", "lineage_id", "title", "domain_tags", "claims",
                      "data_hash", "protocol_hash", "created_at"});
    ArtifactRegistration p;
    p.artifact_hash = need_hash(doc, "artifact_hash");
    p.lineage_id = need_hash(doc, "lineage_id");
    p.title = need_str(doc, "title");
    p.domain_tags = need_str_array(doc, "domain_tags");
    p.claims = claims_from_json(doc, "claims");
    if (doc.contains("data_hash")) p.data_hash = need_hash(doc, "data_hash");
    if (doc.contains("protocol_hash")) p.protocol_hash = need_hash(doc, "protocol_hash");
    p.created_at = need_i64(doc, "created_at");
    return p;
  }
  if (type == "commentary") {
    only_fields(doc, {"type", "target", "modality", "claims", "text_hash", "tau"});
    CommentaryEvent p;
    p.target = need_hash(doc, "target");
    p.modality = need_str(doc, "modality");
    p.claims = claims_from_json(doc, "claims");
    p.text_hash = need_hash(doc, "text_hash");
    p.tau = need_i64(doc, "tau");
    return p;
  }
  if (type == "citation") {
    only_fields(doc, {"type", "citing", "cited", "modality", "polarity", "integration_depth",
                      "tau"});
    CitationEvent p;
    p.citing = need_hash(doc, "citing");
    p.cited = need_hash(doc, "cited");
    p.modality = need_str(doc, "modality");
    p.polarity = need_num(doc, "polarity");
    p.integration_depth = need_num(doc, "integration_depth");
    p.tau = need_i64(doc, "tau");
    return p;
  }
  if (type == "version") {
    only_fields(doc, {"type", "lineage_id", "version_hash", "parent_version", "modification",
                      "tau"});
    VersionEvent p;
    p.lineage_id = need_hash(doc, "lineage_id");
    p.version_hash = need_hash(doc, "version_hash");
    if (doc.contains("parent_version")) p.parent_version = need_hash(doc, "parent_version");
    p.modification = need_str(doc, "modification");
    p.tau = need_i64(doc, "tau");
    return p;
  }
  if (type == "retraction") {
    only_fields(doc, {"type", "target_version", "reasons", "voluntary", "tau"});
    RetractionEvent p;
    p.target_version = need_hash(doc, "target_version");
    p.reasons = need_str_array(doc, "reasons");
    p.voluntary = need_bool(doc, "voluntary");
    p.tau = need_i64(doc, "tau");
    return p;
  }
  if (type == "null-result") {
    only_fields(doc, {"type", "hypothesis_id", "dataset_desc", "method_desc", "effect_size",
                      "confidence", "tau"});
    NullResultEvent p;
    p.hypothesis_id = need_str(doc, "hypothesis_id");
    p.dataset_desc = need_str(doc, "dataset_desc");
    p.method_desc = need_str(doc, "method_desc");
    p.effect_size = need_num(doc, "effect_size");
    p.confidence = need_num(doc, "confidence");
    p.tau = need_i64(doc, "tau");
    return p;
  }
  if (type == "replication") {
    only_fields(doc, {"type", "target", "dataset_variant", "congruence", "tau"});
    ReplicationEvent p;
    p.target = need_hash(doc, "target");
    p.dataset_variant = need_str(doc, "dataset_variant");
    p.congruence = need_num(doc, "congruence");
    p.tau = need_i64(doc, "tau");
    return p;
  }
  if (type == "transfer-use") {
    only_fields(doc, {"type", "source", "new_domain", "dataset", "protocol", "resulting_claim",
                      "tau"});
    TransferUseEvent p;
    p.source = need_hash(doc, "source");
    p.new_domain = need_str(doc, "new_domain");
    p.dataset = need_str(doc, "dataset");
    p.protocol = need_str(doc, "protocol");
    p.resulting_claim = claim_from_json(need(doc, "resulting_claim"));
    p.tau = need_i64(doc, "tau");
    return p;
  }
  malformed("unknown event type: " + type);
}

// ── Payload validation ──────────────────────────────────────────────────

std::vector<std::string> validate_payload(const EventBody& body) {
  std::vector<std::string> v;

  if (const auto* p = std::get_if<IdentityRegistration>(&body)) {
    if (p->scheme != kSignatureScheme) {
      v.push_back("scheme: must be \"" + std::string(kSignatureScheme) + "\"");
    }
  } else if (const auto* p = std::get_if<AttestationEvent>(&body)) {
    if (!is_attestation_kind(p->claim_kind)) {
      v.push_back("claim_kind: unknown attestation kind: " + p->claim_kind);
    }
  } else if (const auto* p = std::get_if<ArtifactRegistration>(&body)) {
    if (p->artifact_hash.is_zero()) v.push_back("artifact_hash: must be non-zero");
    if (p->lineage_id.is_zero()) v.push_back("lineage_id: must be non-zero");
    for (size_t i = 0; i < p->claims.size(); i++) {
      validate_claim(p->claims[i], "claims[" + std::to_string(i) + "]", v);
    }
  } else if (const auto* p = std::get_if<CommentaryEvent>(&body)) {
    if (!is_commentary_modality(p->modality)) {
      v.push_back("modality: unknown commentary modality: " + p->modality);
    }
    for (size_t i = 0; i < p->claims.size(); i++) {
      validate_claim(p->claims[i], "claims[" + std::to_string(i) + "]", v);
    }
  } else if (const auto* p = std::get_if<CitationEvent>(&body)) {
    if (!is_citation_modality(p->modality)) {
      v.push_back("modality: unknown citation modality: " + p->modality);
    }
    if (!(p->polarity >= -1.0 && p->polarity <= 1.0)) {
      v.push_back("polarity: must lie in [-1, 1]");
    }
    if (!(p->integration_depth >= 0.0 && p->integration_depth <= 1.0)) {
      v.push_back("integration_depth: must lie in [0, 1]");
    }
    if (p->citing == p->cited) v.push_back("citing: artifact cannot cite itself");
  } else if (const auto* p = std::get_if<VersionEvent>(&body)) {
    if (!is_version_modification(p->modification)) {
      v.push_back("modification: unknown modification kind: " + p->modification);
    }
    if (!p->parent_version) {
      v.push_back("parent_version: required (version 0 is created by registration)");
    }
  } else if (const auto* p = std::get_if<RetractionEvent>(&body)) {
    if (p->reasons.empty()) v.push_back("reasons: must be non-empty");
    std::set<std::string> seen;
    for (const auto& r : p->reasons) {
      if (!is_retraction_reason(r)) v.push_back("reasons: unknown reason code: " + r);
      if (!seen.insert(r).second) v.push_back("reasons: duplicate reason code: " + r);
    }
  } else if (const auto* p = std::get_if<NullResultEvent>(&body)) {
    if (p->hypothesis_id.empty()) v.push_back("hypothesis_id: must be non-empty");
    if (!std::isfinite(p->effect_size)) v.push_back("effect_size: must be finite");
    if (!(p->confidence >= 0.0 && p->confidence <= 1.0)) {
      v.push_back("confidence: must lie in [0, 1]");
    }
  } else if (const auto* p = std::get_if<ReplicationEvent>(&body)) {
    if (!(p->congruence >= 0.0 && p->congruence <= 1.0)) {
      v.push_back("congruence: must lie in [0, 1]");
    }
  } else if (const auto* p = std::get_if<TransferUseEvent>(&body)) {
    if (p->new_domain.empty()) v.push_back("new_domain: must be non-empty");
    validate_claim(p->resulting_claim, "resulting_claim", v);
  }
  return v;
}

// ── Governance configuration ────────────────────────────────────────────

GovernanceConfig GovernanceConfig::defaults() {
  GovernanceConfig c;
  for (const auto& m : commentary_modalities()) c.modality_weights[m] = 1.0;
  for (const auto& m : citation_modalities()) c.modality_weights[m] = 1.0;
  c.modality_weights[kTransferUseModality] = 1.0;
  return c;
}

double GovernanceConfig::modality_weight(std::string_view modality) const {
  auto it = modality_weights.find(std::string(modality));
  if (it == modality_weights.end()) {
    throw_error(ErrorKind::Config,
                "modality weight table is missing entry: " + std::string(modality));
  }
  return it->second;
}

Json GovernanceConfig::to_json() const {
  Json doc = Json::object();
  doc["config_version"] = config_version;
  doc["sig_scheme"] = sig_scheme;
  doc["epoch_seconds"] = epoch_seconds;
  doc["reputation"] = {{"alpha", reputation_alpha},
                       {"beta", reputation_beta},
                       {"gamma", reputation_gamma}};
  doc["trust"] = {{"lambda_endorse", trust_lambda_endorse},
                  {"lambda_flag", trust_lambda_flag},
                  {"lambda_replication", trust_lambda_replication}};
  doc["dampening_lambda"] = dampening_lambda;
  doc["impact"] = {{"alpha_pos", impact_alpha_pos}, {"beta_null", impact_beta_null}};
  doc["ethics"] = {{"beta_proactive", ethics_beta_proactive},
                   {"gamma_responsive", ethics_gamma_responsive}};
  doc["overlap"] = {{"eps_semantic", overlap_eps_semantic}, {"eps_method", overlap_eps_method}};
  doc["novelty"] = {{"lambda_entropy", novelty_lambda_entropy},
                    {"lambda_claims", novelty_lambda_claims},
                    {"lambda_latency", novelty_lambda_latency},
                    {"horizon_seconds", novelty_horizon_seconds},
                    {"softmax_temperature", softmax_temperature}};
  doc["influence_decay"] = influence_decay;
  doc["replication"] = {{"congruent_min", congruent_replication_min}};
  doc["rqi"] = {{"w_claims", rqi_w_claims},
                {"w_confirmation", rqi_w_confirmation},
                {"w_meta", rqi_w_meta}};
  doc["embedding_dim"] = embedding_dim;
  doc["modality_weights"] = modality_weights;
  return doc;
}

GovernanceConfig GovernanceConfig::from_json(const Json& doc) {
  only_fields(doc, {"config_version", "sig_scheme", "epoch_seconds", "reputation", "trust",
                    "dampening_lambda", "impact", "ethics", "overlap", "novelty",
                    "influence_decay", "replication", "rqi", "embedding_dim",
                    "modality_weights"});
  GovernanceConfig c;
  c.config_version = static_cast<int>(need_i64(doc, "config_version"));
  c.sig_scheme = need_str(doc, "sig_scheme");
  c.epoch_seconds = need_i64(doc, "epoch_seconds");

  const Json& rep = need(doc, "reputation");
  c.reputation_alpha = need_num(rep, "alpha");
  c.reputation_beta = need_num(rep, "beta");
  c.reputation_gamma = need_num(rep, "gamma");

  const Json& trust = need(doc, "trust");
  c.trust_lambda_endorse = need_num(trust, "lambda_endorse");
  c.trust_lambda_flag = need_num(trust, "lambda_flag");
  c.trust_lambda_replication = need_num(trust, "lambda_replication");

  c.dampening_lambda = need_num(doc, "dampening_lambda");

  const Json& impact = need(doc, "impact");
  c.impact_alpha_pos = need_num(impact, "alpha_pos");
  c.impact_beta_null = need_num(impact, "beta_null");

  const Json& ethics = need(doc, "ethics");
  c.ethics_beta_proactive = need_num(ethics, "beta_proactive");
  c.ethics_gamma_responsive = need_num(ethics, "gamma_responsive");

  const Json& overlap = need(doc, "overlap");
  c.overlap_eps_semantic = need_num(overlap, "eps_semantic");
  c.overlap_eps_method = need_num(overlap, "eps_method");

  const Json& novelty = need(doc, "novelty");
  c.novelty_lambda_entropy = need_num(novelty, "lambda_entropy");
  c.novelty_lambda_claims = need_num(novelty, "lambda_claims");
  c.novelty_lambda_latency = need_num(novelty, "lambda_latency");
  c.novelty_horizon_seconds = need_num(novelty, "horizon_seconds");
  c.softmax_temperature = need_num(novelty, "softmax_temperature");

  c.influence_decay = need_num(doc, "influence_decay");

  const Json& repl = need(doc, "replication");
  c.congruent_replication_min = need_num(repl, "congruent_min");

  const Json& rqi = need(doc, "rqi");
  c.rqi_w_claims = need_num(rqi, "w_claims");
  c.rqi_w_confirmation = need_num(rqi, "w_confirmation");
  c.rqi_w_meta = need_num(rqi, "w_meta");

  c.embedding_dim = static_cast<int>(need_i64(doc, "embedding_dim"));

  const Json& weights = need(doc, "modality_weights");
  if (!weights.is_object()) malformed("modality_weights must be an object");
  for (auto it = weights.begin(); it != weights.end(); ++it) {
    if (!it.value().is_number()) malformed("modality weight must be a number: " + it.key());
    c.modality_weights[it.key()] = it.value().get<double>();
  }

  validate_config(c);
  return c;
}

ContentHash GovernanceConfig::hash_of() const { return hash_content(canonical_encode(to_json())); }

void validate_config(const GovernanceConfig& c) {
  auto fail = [](const std::string& rule) { throw_error(ErrorKind::Config, rule); };
  auto finite = [&](double x, const char* name) {
    if (!std::isfinite(x)) fail(std::string(name) + " must be finite");
  };
  auto nonneg = [&](double x, const char* name) {
    finite(x, name);
    if (x < 0.0) fail(std::string(name) + " must be non-negative");
  };

  if (c.sig_scheme != kSignatureScheme) {
    fail("sig_scheme must be \"" + std::string(kSignatureScheme) + "\"");
  }
  if (c.epoch_seconds <= 0) fail("epoch_seconds must be positive");

  nonneg(c.reputation_alpha, "reputation.alpha");
  nonneg(c.reputation_beta, "reputation.beta");
  nonneg(c.reputation_gamma, "reputation.gamma");
  nonneg(c.trust_lambda_endorse, "trust.lambda_endorse");
  nonneg(c.trust_lambda_flag, "trust.lambda_flag");
  nonneg(c.trust_lambda_replication, "trust.lambda_replication");

  finite(c.dampening_lambda, "dampening_lambda");
  if (!(c.dampening_lambda > 0.0 && c.dampening_lambda < 1.0)) {
    fail("dampening_lambda must lie strictly inside (0, 1)");
  }

  finite(c.impact_alpha_pos, "impact.alpha_pos");
  finite(c.impact_beta_null, "impact.beta_null");
  if (!(c.impact_alpha_pos > 0.0)) fail("impact.alpha_pos must be positive");
  if (!(c.impact_beta_null >= c.impact_alpha_pos)) {
    fail("impact.beta_null must be at least impact.alpha_pos");
  }

  nonneg(c.ethics_beta_proactive, "ethics.beta_proactive");
  nonneg(c.ethics_gamma_responsive, "ethics.gamma_responsive");
  nonneg(c.overlap_eps_semantic, "overlap.eps_semantic");
  nonneg(c.overlap_eps_method, "overlap.eps_method");

  nonneg(c.novelty_lambda_entropy, "novelty.lambda_entropy");
  nonneg(c.novelty_lambda_claims, "novelty.lambda_claims");
  nonneg(c.novelty_lambda_latency, "novelty.lambda_latency");
  finite(c.novelty_horizon_seconds, "novelty.horizon_seconds");
  if (!(c.novelty_horizon_seconds > 0.0)) fail("novelty.horizon_seconds must be positive");
  finite(c.softmax_temperature, "novelty.softmax_temperature");
  if (!(c.softmax_temperature > 0.0)) fail("novelty.softmax_temperature must be positive");

  finite(c.influence_decay, "influence_decay");
  if (!(c.influence_decay > 0.0 && c.influence_decay < 1.0)) {
    fail("influence_decay must lie strictly inside (0, 1)");
  }

  finite(c.congruent_replication_min, "replication.congruent_min");
  if (!(c.congruent_replication_min >= 0.0 && c.congruent_replication_min <= 1.0)) {
    fail("replication.congruent_min must lie in [0, 1]");
  }

  nonneg(c.rqi_w_claims, "rqi.w_claims");
  nonneg(c.rqi_w_confirmation, "rqi.w_confirmation");
  nonneg(c.rqi_w_meta, "rqi.w_meta");
  double rqi_sum = c.rqi_w_claims + c.rqi_w_confirmation + c.rqi_w_meta;
  if (std::abs(rqi_sum - 1.0) > 1e-9) fail("rqi weights must sum to 1");

  if (c.embedding_dim < 1) fail("embedding_dim must be at least 1");

  for (const auto& m : commentary_modalities()) {
    if (!c.modality_weights.count(m)) fail("modality_weights missing entry: " + m);
  }
  for (const auto& m : citation_modalities()) {
    if (!c.modality_weights.count(m)) fail("modality_weights missing entry: " + m);
  }
  if (!c.modality_weights.count(kTransferUseModality)) {
    fail(std::string("modality_weights missing entry: ") + kTransferUseModality);
  }
  for (const auto& [name, weight] : c.modality_weights) {
    if (!std::isfinite(weight) || weight < 0.0) {
      fail("modality weight must be finite and non-negative: " + name);
    }
  }
}

GovernanceConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw_error(ErrorKind::Io, "cannot open config file: " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return GovernanceConfig::from_json(canonical_decode(text));
}

void save_config(const GovernanceConfig& config, const std::filesystem::path& path) {
  validate_config(config);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw_error(ErrorKind::Io, "cannot open config file for writing: " + path.string());
  }
  out << canonical_encode(config.to_json()) << "\n";
  if (!out) {
    throw_error(ErrorKind::Io, "failed writing config file: " + path.string());
  }
}

}  // namespace scholia
