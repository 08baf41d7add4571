#include "scholia/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>

#include "scholia/analysis.hpp"
#include "scholia/errors.hpp"

namespace scholia {

namespace {

// Unbounded trust mapped into [0,1) for use as a multiplicative weight.
double trust_weight(double trust) { return trust >= 0.0 ? trust / (1.0 + trust) : 0.0; }

// Author of whatever a commentary points at: an artifact's registrant or a
// commentary's signer. Empty when the target is unknown (cannot happen on
// replayed state; defensive for hand-built ones).
const ContentHash* target_author(const LedgerState& state, const ContentHash& target) {
  if (auto it = state.artifacts.find(target); it != state.artifacts.end()) {
    return &it->second.author;
  }
  if (auto it = state.commentaries.find(target); it != state.commentaries.end()) {
    return &it->second.author;
  }
  return nullptr;
}

void require_identity(const LedgerState& state, const ContentHash& identity) {
  if (!state.knows_identity(identity)) {
    throw_error(ErrorKind::Argument, "unknown identity: " + identity.hex());
  }
}

void require_artifact(const LedgerState& state, const ContentHash& artifact) {
  if (!state.knows_artifact(artifact)) {
    throw_error(ErrorKind::Argument, "unknown artifact: " + artifact.hex());
  }
}

bool has_congruent_replication(const LedgerState& state, const GovernanceConfig& config,
                               const ContentHash& artifact) {
  for (const ReplicationInfo& r : state.replications) {
    if (r.payload.target == artifact && r.payload.congruence >= config.congruent_replication_min) {
      return true;
    }
  }
  return false;
}

// The version node a retraction hit, or nullptr when the target is not in
// any lineage (cannot happen on replayed state).
const VersionNode* retracted_node(const LedgerState& state, const ContentHash& version) {
  auto lin = state.version_lineage.find(version);
  if (lin == state.version_lineage.end()) return nullptr;
  const LineageInfo& lineage = state.lineages.at(lin->second);
  auto node = lineage.nodes.find(version);
  return node == lineage.nodes.end() ? nullptr : &node->second;
}

}  // namespace

// ── Pure update rules ───────────────────────────────────────────────────

double reputation_formula(int validated_claims, int endorsed_reviews, int involuntary_retractions,
                          const GovernanceConfig& config) {
  if (validated_claims < 0 || endorsed_reviews < 0 || involuntary_retractions < 0) {
    throw_error(ErrorKind::Argument, "reputation counts must be non-negative");
  }
  return config.reputation_alpha * validated_claims + config.reputation_beta * endorsed_reviews +
         config.reputation_gamma / (1.0 + involuntary_retractions);
}

double trust_update(double trust, int endorsements, int flagged_errors, int replication_support,
                    const GovernanceConfig& config) {
  if (endorsements < 0 || flagged_errors < 0 || replication_support < 0) {
    throw_error(ErrorKind::Argument, "trust counts must be non-negative");
  }
  return trust + config.trust_lambda_endorse * endorsements -
         config.trust_lambda_flag * flagged_errors +
         config.trust_lambda_replication * replication_support;
}

double impact_weight(double positive_citations, double null_confirmations,
                     const GovernanceConfig& config) {
  if (positive_citations < 0 || null_confirmations < 0) {
    throw_error(ErrorKind::Argument, "impact counts must be non-negative");
  }
  return config.impact_alpha_pos * positive_citations +
         config.impact_beta_null * null_confirmations;
}

double dampened_prior(double prior, int confident_null_count, const GovernanceConfig& config) {
  if (!(prior > 0.0 && prior <= 1.0)) {
    throw_error(ErrorKind::Argument, "prior must lie in (0, 1]");
  }
  if (confident_null_count < 0) {
    throw_error(ErrorKind::Argument, "null count must be non-negative");
  }
  return prior * std::pow(config.dampening_lambda, confident_null_count);
}

// ── State-derived scores ────────────────────────────────────────────────

ReputationInputs reputation_inputs(const LedgerState& state, const GovernanceConfig& config,
                                   const ContentHash& identity) {
  ReputationInputs inputs;

  // A congruent replication of an artifact validates every claim it makes.
  for (const auto& [hash, info] : state.artifacts) {
    if (info.author != identity || info.payload.claims.empty()) continue;
    if (has_congruent_replication(state, config, hash)) {
      inputs.validated_claims += static_cast<int>(info.payload.claims.size());
    }
  }

  // A review counts once, however many endorsement replies it collects.
  for (const ContentHash& id : state.commentary_order) {
    const CommentaryInfo& review = state.commentaries.at(id);
    if (review.author != identity) continue;
    for (const ContentHash& reply_id : state.commentary_order) {
      const CommentaryInfo& reply = state.commentaries.at(reply_id);
      if (reply.payload.target == id && reply.payload.modality == "endorsement") {
        inputs.endorsed_reviews++;
        break;
      }
    }
  }

  for (const RetractionInfo& r : state.retractions) {
    if (r.payload.voluntary) continue;
    const VersionNode* node = retracted_node(state, r.payload.target_version);
    if (node != nullptr && node->author == identity) {
      inputs.involuntary_retractions++;
    }
  }

  return inputs;
}

double reputation(const LedgerState& state, const GovernanceConfig& config,
                  const ContentHash& identity) {
  require_identity(state, identity);
  ReputationInputs in = reputation_inputs(state, config, identity);
  return reputation_formula(in.validated_claims, in.endorsed_reviews, in.involuntary_retractions,
                            config);
}

double trust_at(const LedgerState& state, const GovernanceConfig& config,
                const ContentHash& identity, std::int64_t t) {
  require_identity(state, identity);

  int endorsements = 0;
  int flags = 0;
  for (const ContentHash& id : state.commentary_order) {
    const CommentaryInfo& c = state.commentaries.at(id);
    if (c.payload.tau > t) continue;
    if (c.payload.modality != "endorsement" && c.payload.modality != "error-flag") continue;
    const ContentHash* author = target_author(state, c.payload.target);
    if (author == nullptr || *author != identity) continue;
    (c.payload.modality == "endorsement" ? endorsements : flags)++;
  }

  int support = 0;
  for (const ReplicationInfo& r : state.replications) {
    if (r.payload.tau > t) continue;
    if (r.payload.congruence < config.congruent_replication_min) continue;
    auto it = state.artifacts.find(r.payload.target);
    if (it != state.artifacts.end() && it->second.author == identity) support++;
  }

  // The per-epoch update is affine, so folding it over every epoch up to t
  // telescopes into one application on the cumulative counts.
  return trust_update(0.0, endorsements, flags, support, config);
}

double replication_trust(const LedgerState& state, const ContentHash& artifact) {
  require_artifact(state, artifact);
  double sum = 0.0;
  int n = 0;
  for (const ReplicationInfo& r : state.replications) {
    if (r.payload.target == artifact) {
      sum += r.payload.congruence;
      n++;
    }
  }
  if (n == 0) {
    throw_error(ErrorKind::NotFound, "artifact has no replications: " + artifact.hex());
  }
  return sum / n;
}

double null_dampening(const LedgerState& state, const GovernanceConfig& config, double prior,
                      const std::string& hypothesis_id) {
  int k = 0;
  for (const NullResultInfo& n : state.null_results) {
    if (n.payload.hypothesis_id == hypothesis_id && n.payload.confidence >= kConfidentNullMin) {
      k++;
    }
  }
  return dampened_prior(prior, k, config);
}

// ── Influence propagation ───────────────────────────────────────────────

std::map<ContentHash, double> influence_all(const LedgerState& state,
                                            const GovernanceConfig& config, std::int64_t t,
                                            ExecMode mode) {
  std::vector<ContentHash> order;
  std::map<ContentHash, std::size_t> index;
  order.reserve(state.artifacts.size());
  for (const auto& [hash, info] : state.artifacts) {
    index.emplace(hash, order.size());
    order.push_back(hash);
  }
  const std::size_t n = order.size();

  struct Edge {
    std::size_t citer;
    double base;  // m_modality · (1 + polarity)/2 · integration_depth
  };
  std::vector<std::vector<Edge>> in_edges(n);
  for (const CitationInfo& c : state.citations) {
    if (c.payload.tau > t) continue;
    auto cited = index.find(c.payload.cited);
    auto citing = index.find(c.payload.citing);
    if (cited == index.end() || citing == index.end()) continue;
    double base = config.modality_weight(c.payload.modality) * (1.0 + c.payload.polarity) / 2.0 *
                  c.payload.integration_depth;
    in_edges[cited->second].push_back({citing->second, base});
  }

  // Fixpoint iteration from all-zeros. Each artifact's new value depends
  // only on the previous iterate, so the parallel sweep is bit-identical
  // to the serial one (per-node sums run in fixed edge order).
  std::vector<double> current(n, 0.0);
  std::vector<double> next(n, 0.0);
  for (int iter = 0; iter < kInfluenceMaxIterations; ++iter) {
    double max_influence = 0.0;
    for (double v : current) max_influence = std::max(max_influence, v);

    parallel_for(n, mode, [&](std::size_t b) {
      double sum = 0.0;
      for (const Edge& e : in_edges[b]) {
        double normalized = max_influence > 0.0 ? current[e.citer] / max_influence : 0.0;
        sum += e.base * (1.0 + config.influence_decay * normalized);
      }
      next[b] = sum;
    });

    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta = std::max(delta, std::abs(next[i] - current[i]));
    std::swap(current, next);
    if (delta < kInfluenceTolerance) break;
  }

  std::map<ContentHash, double> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace(order[i], current[i]);
  return out;
}

double influence(const LedgerState& state, const GovernanceConfig& config,
                 const ContentHash& artifact, std::int64_t t, ExecMode mode) {
  require_artifact(state, artifact);
  return influence_all(state, config, t, mode).at(artifact);
}

// ── Correction behavior ─────────────────────────────────────────────────

CorrectionScores correction_scores(const LedgerState& state, const GovernanceConfig& config,
                                   const ContentHash& identity, ExecMode mode) {
  require_identity(state, identity);
  CorrectionScores scores;
  for (const RetractionInfo& r : state.retractions) {
    if (r.author != identity) continue;
    const VersionNode* node = retracted_node(state, r.payload.target_version);
    if (r.payload.voluntary) {
      scores.ethics += config.ethics_beta_proactive;
      // What the record was worth when its author struck it.
      auto all = influence_all(state, config, r.payload.tau, mode);
      auto it = all.find(r.payload.target_version);
      if (it != all.end()) scores.rectification += it->second;
    } else if (node != nullptr && node->author == identity) {
      scores.ethics += config.ethics_gamma_responsive;
    }
    // Involuntary retraction of someone else's work (editor action) scores
    // neither: it is the subject's correction record, not the editor's.
  }
  return scores;
}

double epistemic_influence(const LedgerState& state, const GovernanceConfig& config,
                           const ContentHash& identity, std::int64_t t, ExecMode mode) {
  require_identity(state, identity);

  // Artifacts the identity formally corrected: retracted, or amended via a
  // corrigendum/reanalysis version it signed (the parent is the corrected
  // record).
  std::set<ContentHash> corrected;
  for (const RetractionInfo& r : state.retractions) {
    if (r.author == identity) corrected.insert(r.payload.target_version);
  }
  for (const auto& [lineage_id, lineage] : state.lineages) {
    for (const ContentHash& vh : lineage.node_order) {
      const VersionNode& node = lineage.nodes.at(vh);
      if (node.author != identity || !node.parent.has_value()) continue;
      if (node.modification == "corrigendum" || node.modification == "reanalysis") {
        corrected.insert(*node.parent);
      }
    }
  }

  auto all = influence_all(state, config, t, mode);
  double total = 0.0;
  for (const auto& [hash, info] : state.artifacts) {
    double role_weight = 0.0;
    if (info.author == identity) {
      role_weight = 1.0;  // authorship wins over correction
    } else if (corrected.count(hash) > 0) {
      role_weight = 0.5;
    } else {
      continue;
    }
    total += role_weight * all.at(hash);
  }
  return total;
}

// ── Valuation and use ───────────────────────────────────────────────────

std::map<std::string, double> agent_valuation(
    const std::vector<ReviewAgentProfile>& profiles,
    const std::map<std::string, std::map<std::string, double>>& scores_by_agent) {
  std::map<std::string, double> kappa;
  for (const ReviewAgentProfile& p : profiles) {
    if (p.kappa < 0.0) {
      throw_error(ErrorKind::Argument, "credential weight must be non-negative: " + p.agent);
    }
    if (!kappa.emplace(p.agent, p.kappa).second) {
      throw_error(ErrorKind::Argument, "duplicate agent profile: " + p.agent);
    }
  }

  std::map<std::string, double> weighted;  // dimension → Σ κ·score
  std::map<std::string, double> weight;    // dimension → Σ κ
  for (const auto& [agent, scores] : scores_by_agent) {
    auto k = kappa.find(agent);
    if (k == kappa.end()) {
      throw_error(ErrorKind::Argument, "scoring agent has no profile: " + agent);
    }
    for (const auto& [dimension, score] : scores) {
      if (!(score >= 0.0 && score <= 1.0)) {
        throw_error(ErrorKind::Argument, "score out of [0, 1] for dimension " + dimension);
      }
      weighted[dimension] += k->second * score;
      weight[dimension] += k->second;
    }
  }

  std::map<std::string, double> out;
  for (const auto& [dimension, total] : weight) {
    if (total <= 0.0) {
      throw_error(ErrorKind::Argument, "degenerate weights for dimension " + dimension);
    }
    out.emplace(dimension, weighted.at(dimension) / total);
  }
  return out;
}

UseSignal use_signal(const LedgerState& state, const GovernanceConfig& config,
                     const ContentHash& artifact, std::int64_t t) {
  require_artifact(state, artifact);
  const std::vector<Claim>& artifact_claims = state.artifacts.at(artifact).payload.claims;

  UseSignal signal;
  // Memoize signer trust: trust_at scans the whole state per identity.
  std::map<ContentHash, double> trust_by_signer;
  auto add = [&](const ContentHash& signer, const std::string& modality,
                 const std::vector<Claim>& event_claims) {
    auto it = trust_by_signer.find(signer);
    if (it == trust_by_signer.end()) {
      it = trust_by_signer.emplace(signer, trust_at(state, config, signer, t)).first;
    }
    double w = config.modality_weight(modality) * trust_weight(it->second);
    double s = claim_set_distance(event_claims, artifact_claims);
    signal.total += w;
    signal.interpretative += w * s;
  };

  const std::vector<std::string>& reuse = reuse_citation_modalities();
  for (const CitationInfo& c : state.citations) {
    if (c.payload.tau > t || c.payload.cited != artifact) continue;
    if (std::find(reuse.begin(), reuse.end(), c.payload.modality) == reuse.end()) continue;
    add(c.author, c.payload.modality, {});  // citations carry no claims
  }
  for (const TransferUseInfo& tr : state.transfers) {
    if (tr.payload.tau > t || tr.payload.source != artifact) continue;
    add(tr.author, kTransferUseModality, {tr.payload.resulting_claim});
  }
  for (const ContentHash& id : state.commentary_order) {
    const CommentaryInfo& c = state.commentaries.at(id);
    if (c.payload.tau > t || c.payload.target != artifact) continue;
    if (c.payload.modality != "reinterpretation" && c.payload.modality != "derivation") continue;
    add(c.author, c.payload.modality, c.payload.claims);
  }
  return signal;
}

CommentaryVectorCounts commentary_vector(const LedgerState& state, const GovernanceConfig& config,
                                         const ContentHash& artifact) {
  require_artifact(state, artifact);
  CommentaryVectorCounts counts;
  for (const ContentHash& id : state.commentary_order) {
    const CommentaryInfo& c = state.commentaries.at(id);
    if (c.payload.target != artifact) continue;
    if (c.payload.modality == "endorsement") counts.endorsements++;
    if (c.payload.modality == "derivation") counts.extensions++;
    if (c.payload.modality == "error-flag") counts.error_flags++;
  }
  for (const CitationInfo& c : state.citations) {
    if (c.payload.cited == artifact && c.payload.modality == "extension") counts.extensions++;
  }
  for (const ReplicationInfo& r : state.replications) {
    if (r.payload.target == artifact && r.payload.congruence >= config.congruent_replication_min) {
      counts.replications++;
    }
  }
  return counts;
}

double review_quality(const LedgerState& state, const GovernanceConfig& config,
                      const ContentHash& commentary_event_id) {
  auto it = state.commentaries.find(commentary_event_id);
  if (it == state.commentaries.end()) {
    throw_error(ErrorKind::Argument, "not a commentary event: " + commentary_event_id.hex());
  }
  const CommentaryInfo& review = it->second;

  double claims_term = std::min(1.0, static_cast<double>(review.payload.claims.size()) / 5.0);

  int meta = 0;
  for (const ContentHash& id : state.commentary_order) {
    const CommentaryInfo& c = state.commentaries.at(id);
    if (c.payload.target == commentary_event_id && c.payload.modality == "endorsement") meta++;
  }
  double meta_term = std::min(1.0, meta / 3.0);

  // Confirmation: only error-flag reviews stake claims that history can
  // grade. A claim is confirmed when, at or after the review, the target
  // version is retracted or a version transition in its lineage critically
  // changes a claim with the same key.
  double confirmation_rate = 1.0;
  if (review.payload.modality == "error-flag" && !review.payload.claims.empty()) {
    const ContentHash& target = review.payload.target;

    bool retracted_later = false;
    for (const RetractionInfo& r : state.retractions) {
      if (r.payload.target_version == target && r.payload.tau >= review.payload.tau) {
        retracted_later = true;
        break;
      }
    }

    std::set<ClaimKey> changed;
    if (!retracted_later) {
      auto lin = state.version_lineage.find(target);
      auto reg = state.artifacts.find(target);
      if (lin != state.version_lineage.end() && reg != state.artifacts.end()) {
        const LineageInfo& lineage = state.lineages.at(lin->second);
        const std::vector<Claim>& before = reg->second.payload.claims;
        for (const ContentHash& vh : lineage.node_order) {
          const VersionNode& node = lineage.nodes.at(vh);
          if (vh == target || node.tau < review.payload.tau) continue;
          auto after = state.artifacts.find(vh);
          if (after == state.artifacts.end()) continue;
          for (const ClaimKey& key :
               critically_changed_claim_keys(before, after->second.payload.claims)) {
            changed.insert(key);
          }
        }
      }
    }

    int confirmed = 0;
    for (const Claim& claim : review.payload.claims) {
      if (retracted_later || changed.count(claim_key(claim)) > 0) confirmed++;
    }
    confirmation_rate = static_cast<double>(confirmed) / review.payload.claims.size();
  }

  return config.rqi_w_claims * claims_term + config.rqi_w_confirmation * confirmation_rate +
         config.rqi_w_meta * meta_term;
}

// ── Reports ─────────────────────────────────────────────────────────────

Json ScoreReport::to_json() const {
  Json scores_doc = Json::object();
  for (const auto& [name, value] : scores) scores_doc[name] = value;
  return Json{{"subject_kind", subject_kind},
              {"subject", subject},
              {"computed_at", computed_at},
              {"config_hash", config_hash.hex()},
              {"scores", scores_doc}};
}

ScoreReport score_identity(const LedgerState& state, const GovernanceConfig& config,
                           const ContentHash& identity, std::int64_t t, ExecMode mode) {
  require_identity(state, identity);
  ScoreReport report;
  report.subject_kind = "identity";
  report.subject = identity.hex();
  report.computed_at = t;
  report.config_hash = config.hash_of();

  ReputationInputs in = reputation_inputs(state, config, identity);
  CorrectionScores correction = correction_scores(state, config, identity, mode);
  report.scores["reputation"] = reputation_formula(
      in.validated_claims, in.endorsed_reviews, in.involuntary_retractions, config);
  report.scores["validated_claims"] = in.validated_claims;
  report.scores["endorsed_reviews"] = in.endorsed_reviews;
  report.scores["involuntary_retractions"] = in.involuntary_retractions;
  report.scores["trust"] = trust_at(state, config, identity, t);
  report.scores["rectification"] = correction.rectification;
  report.scores["ethics"] = correction.ethics;
  report.scores["epistemic_influence"] = epistemic_influence(state, config, identity, t, mode);
  return report;
}

ScoreReport score_artifact(const LedgerState& state, const GovernanceConfig& config,
                           const ContentHash& artifact, std::int64_t t, ExecMode mode) {
  require_artifact(state, artifact);
  ScoreReport report;
  report.subject_kind = "artifact";
  report.subject = artifact.hex();
  report.computed_at = t;
  report.config_hash = config.hash_of();

  report.scores["influence"] = influence(state, config, artifact, t, mode);

  NoveltyBreakdown nov = novelty(state, config, artifact, mode);
  report.scores["novelty"] = nov.value;

  UseSignal use = use_signal(state, config, artifact, t);
  report.scores["use_total"] = use.total;
  report.scores["use_interpretative"] = use.interpretative;

  CommentaryVectorCounts counts = commentary_vector(state, config, artifact);
  report.scores["endorsements"] = counts.endorsements;
  report.scores["extensions"] = counts.extensions;
  report.scores["congruent_replications"] = counts.replications;
  report.scores["error_flags"] = counts.error_flags;

  // "No replications" is a distinct outcome, not a zero score.
  try {
    report.scores["replication_trust"] = replication_trust(state, artifact);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotFound) throw;
  }
  return report;
}

ScoreReport score_commentary(const LedgerState& state, const GovernanceConfig& config,
                             const ContentHash& commentary_event_id, std::int64_t t) {
  ScoreReport report;
  report.subject_kind = "commentary";
  report.subject = commentary_event_id.hex();
  report.computed_at = t;
  report.config_hash = config.hash_of();
  report.scores["review_quality"] = review_quality(state, config, commentary_event_id);
  return report;
}

}  // namespace scholia
