#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "scholia/parallel.hpp"
#include "scholia/state.hpp"

namespace scholia {

// Fixpoint iteration bounds for influence propagation.
inline constexpr double kInfluenceTolerance = 1e-9;
inline constexpr int kInfluenceMaxIterations = 50;

// Null results only dampen a prior when reported with at least this much
// confidence.
inline constexpr double kConfidentNullMin = 0.5;

// ── Pure update rules ───────────────────────────────────────────────────

// alpha·validated_claims + beta·endorsed_reviews + gamma/(1 + involuntary_retractions)
double reputation_formula(int validated_claims, int endorsed_reviews,
                          int involuntary_retractions, const GovernanceConfig& config);

// One epoch of trust evolution:
// T + lambda_endorse·endorsements − lambda_flag·flagged_errors + lambda_replication·support
double trust_update(double trust, int endorsements, int flagged_errors, int replication_support,
                    const GovernanceConfig& config);

// alpha_pos·positive_citations + beta_null·null_confirmations (beta ≥ alpha > 0
// enforced by config validation: confirmed absence never counts below presence).
double impact_weight(double positive_citations, double null_confirmations,
                     const GovernanceConfig& config);

// prior · dampening_lambda^k. Throws Argument when prior is outside (0, 1]
// or the count is negative.
double dampened_prior(double prior, int confident_null_count, const GovernanceConfig& config);

// ── State-derived scores ────────────────────────────────────────────────

struct ReputationInputs {
  int validated_claims = 0;        // claims on authored artifacts with a congruent replication
  int endorsed_reviews = 0;        // authored commentaries holding an endorsement reply
  int involuntary_retractions = 0; // involuntary retractions of authored versions
};

ReputationInputs reputation_inputs(const LedgerState& state, const GovernanceConfig& config,
                                   const ContentHash& identity);

// Throws Argument for an unknown identity.
double reputation(const LedgerState& state, const GovernanceConfig& config,
                  const ContentHash& identity);

// Trust accumulated by `identity` over events with tau ≤ t. The per-epoch
// update rule is affine, so the fold telescopes to a single application on
// cumulative counts: endorsement commentaries on their artifacts or
// commentaries, error-flag commentaries likewise, congruent replications of
// their artifacts. Starts at 0; throws Argument for an unknown identity.
double trust_at(const LedgerState& state, const GovernanceConfig& config,
                const ContentHash& identity, std::int64_t t);

// Mean replication congruence of an artifact over all its replications.
// Throws Argument for an unknown artifact, NotFound when none exist —
// "no replications" is distinct from congruence 0.
double replication_trust(const LedgerState& state, const ContentHash& artifact);

// prior · lambda^k where k counts null results for hypothesis_id with
// confidence ≥ kConfidentNullMin. Unknown hypothesis ids count zero nulls.
double null_dampening(const LedgerState& state, const GovernanceConfig& config, double prior,
                      const std::string& hypothesis_id);

// ── Influence propagation ───────────────────────────────────────────────

// Fixpoint of
//   I(B) = Σ over citations into B with tau ≤ t of
//            m_modality · (1 + polarity)/2 · integration_depth · (1 + rho·Î(citer))
// where Î is the previous iterate normalized by its maximum (0 when all
// zero). Iterates from all-zero until the largest change < kInfluenceTolerance
// or kInfluenceMaxIterations. Returns a value for every registered artifact.
std::map<ContentHash, double> influence_all(const LedgerState& state,
                                            const GovernanceConfig& config, std::int64_t t,
                                            ExecMode mode = ExecMode::Parallel);

// Influence of one artifact; throws Argument when unknown.
double influence(const LedgerState& state, const GovernanceConfig& config,
                 const ContentHash& artifact, std::int64_t t,
                 ExecMode mode = ExecMode::Parallel);

// ── Correction behavior ─────────────────────────────────────────────────

struct CorrectionScores {
  double rectification = 0.0;  // Σ influence-at-retraction over voluntary retractions
  double ethics = 0.0;         // beta per proactive + gamma per responsive self-retraction
};

// Retractions signed by `identity`: voluntary ones add the target's
// influence at retraction time to rectification and beta_proactive to
// ethics; involuntary retractions of their *own* work (responsive) add
// gamma_responsive. Editor retractions of others' work score neither.
CorrectionScores correction_scores(const LedgerState& state, const GovernanceConfig& config,
                                   const ContentHash& identity,
                                   ExecMode mode = ExecMode::Parallel);

// Σ role_weight · influence(artifact, t) over artifacts the identity
// authored (weight 1.0) or formally corrected — signed a retraction of, or
// a corrigendum/reanalysis whose parent it was (weight 0.5; authorship
// wins when both apply).
double epistemic_influence(const LedgerState& state, const GovernanceConfig& config,
                           const ContentHash& identity, std::int64_t t,
                           ExecMode mode = ExecMode::Parallel);

// ── Valuation and use ───────────────────────────────────────────────────

struct ReviewAgentProfile {
  std::string agent;  // key id hex or any stable label
  std::vector<std::string> ontology_tags;
  double kappa = 0.0;  // credential weight, ≥ 0
};

// Per-dimension kappa-weighted mean of agent scores. Every score must lie
// in [0, 1]; every scoring agent needs a profile; a dimension whose
// contributors all carry kappa 0 is degenerate. All are Argument errors.
std::map<std::string, double> agent_valuation(
    const std::vector<ReviewAgentProfile>& profiles,
    const std::map<std::string, std::map<std::string, double>>& scores_by_agent);

struct UseSignal {
  double total = 0.0;           // Σ w_i
  double interpretative = 0.0;  // Σ w_i · s_i (claim-distance weighted)
};

// Use events for an artifact up to t: reuse-modality citations, transfer
// events sourced at it, and reinterpretation/derivation commentaries on it.
// Each contributes w = m_modality · T/(1+T) (signer trust at t, clamped to
// [0,1); negative trust clamps to 0). s is the minimum pairwise claim
// distance between the event's claims and the artifact's (1 when either
// side carries none). Throws Argument for an unknown artifact.
UseSignal use_signal(const LedgerState& state, const GovernanceConfig& config,
                     const ContentHash& artifact, std::int64_t t);

struct CommentaryVectorCounts {
  int endorsements = 0;   // endorsement commentaries on the artifact
  int extensions = 0;     // derivation commentaries + extension citations
  int replications = 0;   // replications with congruence ≥ configured minimum
  int error_flags = 0;    // error-flag commentaries on the artifact

  bool operator==(const CommentaryVectorCounts&) const = default;
};

CommentaryVectorCounts commentary_vector(const LedgerState& state,
                                         const GovernanceConfig& config,
                                         const ContentHash& artifact);

// Review quality index of one commentary event:
//   w_claims·min(1, claims/5) + w_confirmation·confirmation_rate + w_meta·min(1, meta/3)
// where meta counts endorsement replies to the review and confirmation_rate
// is the fraction of the review's error-flag claims later matched by a
// retraction of the target or a critical claim change in its lineage
// (vacuously 1 when the review carries no error-flag claims).
// Throws Argument when event_id is not a commentary.
double review_quality(const LedgerState& state, const GovernanceConfig& config,
                      const ContentHash& commentary_event_id);

// ── Reports ─────────────────────────────────────────────────────────────

struct ScoreReport {
  std::string subject_kind;  // "identity" | "artifact" | "commentary"
  std::string subject;       // hex id
  std::int64_t computed_at = 0;
  ContentHash config_hash;
  std::map<std::string, double> scores;

  Json to_json() const;
};

ScoreReport score_identity(const LedgerState& state, const GovernanceConfig& config,
                           const ContentHash& identity, std::int64_t t,
                           ExecMode mode = ExecMode::Parallel);

// Artifact report; replication_trust is omitted when no replications exist.
ScoreReport score_artifact(const LedgerState& state, const GovernanceConfig& config,
                           const ContentHash& artifact, std::int64_t t,
                           ExecMode mode = ExecMode::Parallel);

ScoreReport score_commentary(const LedgerState& state, const GovernanceConfig& config,
                             const ContentHash& commentary_event_id, std::int64_t t);

}  // namespace scholia
