#include "scholia/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>

#include "scholia/errors.hpp"
#include "scholia/hash.hpp"

namespace scholia {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void append_tokens(std::vector<std::string>& out, std::string_view text) {
  std::vector<std::string> toks = tokenize(text);
  out.insert(out.end(), toks.begin(), toks.end());
}

}  // namespace

// ── Text embedding ──────────────────────────────────────────────────────

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::size_t token_bucket(const std::string& token, int dim) {
  if (dim < 2) throw_error(ErrorKind::Argument, "embedding dimension must be at least 2");
  ContentHash h = sha256(token);
  std::uint64_t value = 0;
  for (int i = 0; i < 8; ++i) value = (value << 8) | h.bytes[i];
  return static_cast<std::size_t>(value % static_cast<std::uint64_t>(dim));
}

double token_sign(const std::string& token) {
  return (sha256(token).bytes[8] & 1) != 0 ? -1.0 : 1.0;
}

std::vector<double> baseline_embedding(const std::vector<std::string>& tokens, int dim) {
  if (dim < 2) throw_error(ErrorKind::Argument, "embedding dimension must be at least 2");
  std::vector<double> v(static_cast<std::size_t>(dim), 0.0);
  for (const std::string& token : tokens) {
    v[token_bucket(token, dim)] += token_sign(token);
  }
  double norm_sq = 0.0;
  for (double x : v) norm_sq += x * x;
  if (norm_sq > 0.0) {
    double norm = std::sqrt(norm_sq);
    for (double& x : v) x /= norm;
  }
  return v;
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw_error(ErrorKind::Argument, "embedding dimension mismatch");
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<std::string> artifact_tokens(const ArtifactRegistration& artifact) {
  std::vector<std::string> tokens;
  append_tokens(tokens, artifact.title);
  for (const std::string& tag : artifact.domain_tags) append_tokens(tokens, tag);
  for (const Claim& claim : artifact.claims) {
    append_tokens(tokens, claim.subject);
    append_tokens(tokens, claim.predicate);
  }
  return tokens;
}

std::vector<double> artifact_embedding(const ArtifactRegistration& artifact, int dim) {
  return baseline_embedding(artifact_tokens(artifact), dim);
}

// ── Claim comparison ────────────────────────────────────────────────────

ClaimKey claim_key(const Claim& claim) {
  return {claim.subject, claim.predicate, claim.dataset_class};
}

double claim_distance(const Claim& a, const Claim& b) {
  int mismatches = 0;
  if (a.subject != b.subject) mismatches++;
  if (a.predicate != b.predicate) mismatches++;
  if (a.direction != b.direction) mismatches++;
  if (a.dataset_class != b.dataset_class) mismatches++;
  if (a.method_class != b.method_class) mismatches++;
  return mismatches / 5.0;
}

double claim_set_distance(const std::vector<Claim>& a, const std::vector<Claim>& b) {
  if (a.empty() || b.empty()) return 1.0;
  double best = 1.0;
  for (const Claim& ca : a) {
    for (const Claim& cb : b) {
      best = std::min(best, claim_distance(ca, cb));
    }
  }
  return best;
}

// ── Contradiction ───────────────────────────────────────────────────────

ContradictionResult contradiction_flag(const std::vector<Claim>& first,
                                       const std::vector<Claim>& second) {
  ContradictionResult result;
  for (const Claim& a : first) {
    for (const Claim& b : second) {
      if (claim_key(a) != claim_key(b)) continue;
      bool opposite = (a.direction == "positive" && b.direction == "negative") ||
                      (a.direction == "negative" && b.direction == "positive");
      if (opposite) result.witnesses.emplace_back(a, b);
    }
  }
  result.flag = !result.witnesses.empty();
  return result;
}

// ── Overlap ─────────────────────────────────────────────────────────────

std::set<std::string> method_fingerprint(const ArtifactRegistration& artifact) {
  std::set<std::string> fingerprint;
  for (const Claim& claim : artifact.claims) {
    if (!claim.method_class.empty()) fingerprint.insert(lower(claim.method_class));
  }
  if (artifact.protocol_hash.has_value()) fingerprint.insert(artifact.protocol_hash->hex());
  return fingerprint;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t intersection = 0;
  for (const std::string& x : a) intersection += b.count(x);
  std::size_t unions = a.size() + b.size() - intersection;
  return static_cast<double>(intersection) / static_cast<double>(unions);
}

OverlapResult overlap_flag(const LedgerState& state, const GovernanceConfig& config,
                           const ContentHash& a, const ContentHash& b) {
  auto ia = state.artifacts.find(a);
  auto ib = state.artifacts.find(b);
  if (ia == state.artifacts.end()) throw_error(ErrorKind::Argument, "unknown artifact: " + a.hex());
  if (ib == state.artifacts.end()) throw_error(ErrorKind::Argument, "unknown artifact: " + b.hex());

  OverlapResult result;
  result.semantic_distance =
      1.0 - cosine_similarity(artifact_embedding(ia->second.payload, config.embedding_dim),
                              artifact_embedding(ib->second.payload, config.embedding_dim));
  result.method_distance =
      1.0 - jaccard(method_fingerprint(ia->second.payload), method_fingerprint(ib->second.payload));
  result.flag = result.semantic_distance < config.overlap_eps_semantic &&
                result.method_distance < config.overlap_eps_method;
  return result;
}

// ── Novelty ─────────────────────────────────────────────────────────────

NoveltyBreakdown novelty(const LedgerState& state, const GovernanceConfig& config,
                         const ContentHash& artifact, ExecMode mode) {
  auto it = state.artifacts.find(artifact);
  if (it == state.artifacts.end()) {
    throw_error(ErrorKind::Argument, "unknown artifact: " + artifact.hex());
  }
  const ArtifactInfo& target = it->second;

  // Prior corpus: everything registered before this artifact, in
  // registration order.
  std::vector<const ArtifactInfo*> priors;
  for (const auto& [hash, info] : state.artifacts) {
    if (info.seq < target.seq) priors.push_back(&info);
  }
  std::sort(priors.begin(), priors.end(),
            [](const ArtifactInfo* x, const ArtifactInfo* y) { return x->seq < y->seq; });

  NoveltyBreakdown out;

  // E: concentration of similarity mass. With no prior (or a single prior,
  // where the one-point softmax is trivially uniform) there is nothing to
  // concentrate on: maximal novelty.
  const std::size_t n = priors.size();
  if (n <= 1) {
    out.entropy_term = 1.0;
  } else {
    std::vector<double> target_vec = artifact_embedding(target.payload, config.embedding_dim);
    std::vector<std::vector<double>> corpus(n);
    parallel_for(n, mode, [&](std::size_t i) {
      corpus[i] = artifact_embedding(priors[i]->payload, config.embedding_dim);
    });
    std::vector<double> sims = similarity_row(target_vec, corpus, mode);

    double mass = 0.0;
    std::vector<double> weights(n);
    for (std::size_t i = 0; i < n; ++i) {
      weights[i] = std::exp(sims[i] / config.softmax_temperature);
      mass += weights[i];
    }
    double entropy = 0.0;
    for (double w : weights) {
      double p = w / mass;
      if (p > 0.0) entropy -= p * std::log(p);
    }
    out.entropy_term = entropy / std::log(static_cast<double>(n));
  }

  // C: distance to the nearest prior claim; 1 when nothing is comparable.
  out.claims_term = 1.0;
  for (const ArtifactInfo* prior : priors) {
    out.claims_term = std::min(
        out.claims_term, claim_set_distance(target.payload.claims, prior->payload.claims));
  }

  // L: prompt registration scores high, a delay past the horizon scores 0.
  double delay = static_cast<double>(target.registered_at - target.payload.created_at);
  out.latency_term = 1.0 - std::min(1.0, delay / config.novelty_horizon_seconds);

  out.value = config.novelty_lambda_entropy * out.entropy_term +
              config.novelty_lambda_claims * out.claims_term +
              config.novelty_lambda_latency * out.latency_term;
  return out;
}

// ── Version deltas ──────────────────────────────────────────────────────

std::string delta_class_name(DeltaClass klass) {
  switch (klass) {
    case DeltaClass::Minor: return "minor";
    case DeltaClass::Major: return "major";
    case DeltaClass::Critical: return "critical";
  }
  throw_error(ErrorKind::Argument, "invalid delta class");
}

std::set<ClaimKey> critically_changed_claim_keys(const std::vector<Claim>& prev,
                                                 const std::vector<Claim>& next) {
  std::map<ClaimKey, const Claim*> after;
  for (const Claim& claim : next) after.emplace(claim_key(claim), &claim);

  std::set<ClaimKey> changed;
  for (const Claim& claim : prev) {
    ClaimKey key = claim_key(claim);
    auto it = after.find(key);
    if (it == after.end()) {
      changed.insert(key);  // claim withdrawn
    } else if (it->second->direction != claim.direction ||
               it->second->magnitude != claim.magnitude) {
      changed.insert(key);  // assertion itself changed
    }
  }
  return changed;
}

DeltaClass classify_delta(const ArtifactRegistration& prev, const ArtifactRegistration& next) {
  if (prev.lineage_id != next.lineage_id) {
    throw_error(ErrorKind::Argument, "versions belong to different lineages");
  }

  if (!critically_changed_claim_keys(prev.claims, next.claims).empty()) {
    return DeltaClass::Critical;
  }

  if (prev.protocol_hash != next.protocol_hash || prev.data_hash != next.data_hash) {
    return DeltaClass::Major;
  }
  std::map<ClaimKey, const Claim*> after;
  for (const Claim& claim : next.claims) after.emplace(claim_key(claim), &claim);
  for (const Claim& claim : prev.claims) {
    auto it = after.find(claim_key(claim));
    if (it != after.end() && it->second->method_class != claim.method_class) {
      return DeltaClass::Major;
    }
  }

  return DeltaClass::Minor;
}

// ── Batch kernels ───────────────────────────────────────────────────────

std::vector<double> similarity_row(const std::vector<double>& target,
                                   const std::vector<std::vector<double>>& corpus,
                                   ExecMode mode) {
  std::vector<double> out(corpus.size(), 0.0);
  parallel_for(corpus.size(), mode,
               [&](std::size_t i) { out[i] = cosine_similarity(target, corpus[i]); });
  return out;
}

}  // namespace scholia
