#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "scholia/parallel.hpp"
#include "scholia/state.hpp"

namespace scholia {

// ── Text embedding (hashed bag of tokens) ───────────────────────────────

// Lowercased alphanumeric runs; everything else separates tokens.
std::vector<std::string> tokenize(std::string_view text);

// Feature-hash location of a token: bucket from the first 8 bytes of
// sha256(token) (big-endian) mod dim, sign from the low bit of byte 8.
std::size_t token_bucket(const std::string& token, int dim);
double token_sign(const std::string& token);

// Signed token counts per bucket, L2-normalized. No tokens → zero vector.
// Throws Argument when dim < 2.
std::vector<double> baseline_embedding(const std::vector<std::string>& tokens, int dim);

// Cosine similarity; 0 when either vector is zero. Throws Argument on
// dimension mismatch.
double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

// Tokens an artifact exposes to semantic comparison: title, domain tags,
// claim subjects and predicates.
std::vector<std::string> artifact_tokens(const ArtifactRegistration& artifact);
std::vector<double> artifact_embedding(const ArtifactRegistration& artifact, int dim);

// ── Claim comparison ────────────────────────────────────────────────────

// Identity of the question a claim addresses.
using ClaimKey = std::tuple<std::string, std::string, std::string>;  // subject, predicate, dataset_class
ClaimKey claim_key(const Claim& claim);

// Fraction of differing fields among subject, predicate, direction,
// dataset_class, method_class. Identical claims → 0; fully disjoint → 1.
double claim_distance(const Claim& a, const Claim& b);

// Minimum pairwise distance between two claim sets; 1 when either is empty
// (no comparable claims).
double claim_set_distance(const std::vector<Claim>& a, const std::vector<Claim>& b);

// ── Contradiction ───────────────────────────────────────────────────────

struct ContradictionResult {
  bool flag = false;
  // Every witnessing pair (claim from the first set, claim from the second).
  std::vector<std::pair<Claim, Claim>> witnesses;
};

// Claims contradict when they share (subject, predicate, dataset_class)
// and carry opposite non-zero directions. Symmetric in its arguments.
ContradictionResult contradiction_flag(const std::vector<Claim>& first,
                                       const std::vector<Claim>& second);

// ── Overlap ─────────────────────────────────────────────────────────────

// Case-folded method descriptors: claim method_class values plus the
// protocol hash when present.
std::set<std::string> method_fingerprint(const ArtifactRegistration& artifact);

// |A∩B| / |A∪B|; two empty sets are identical (1).
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

struct OverlapResult {
  bool flag = false;
  double semantic_distance = 0.0;  // 1 − cosine of artifact embeddings
  double method_distance = 0.0;    // 1 − Jaccard of method fingerprints
};

// Flags when both distances fall below their configured thresholds.
// Throws Argument when either artifact is unknown.
OverlapResult overlap_flag(const LedgerState& state, const GovernanceConfig& config,
                           const ContentHash& a, const ContentHash& b);

// ── Novelty ─────────────────────────────────────────────────────────────

struct NoveltyBreakdown {
  double entropy_term = 0.0;  // E: normalized softmax entropy over prior similarities
  double claims_term = 0.0;   // C: min claim distance against prior claims
  double latency_term = 0.0;  // L: 1 − min(1, registration delay / horizon)
  double value = 0.0;         // lambda-weighted sum
};

// Prior corpus = artifacts registered strictly before this one. E is 1 for
// an empty prior corpus and for a single prior (a one-point distribution is
// uniform); otherwise Shannon entropy of the temperature-scaled softmax
// over similarities, normalized by log N. Throws Argument when unknown.
NoveltyBreakdown novelty(const LedgerState& state, const GovernanceConfig& config,
                         const ContentHash& artifact, ExecMode mode = ExecMode::Parallel);

// ── Version deltas ──────────────────────────────────────────────────────

enum class DeltaClass { Minor, Major, Critical };

std::string delta_class_name(DeltaClass klass);

// Claim keys whose assertion changed between two claim lists: key removed,
// direction changed, or magnitude changed.
std::set<ClaimKey> critically_changed_claim_keys(const std::vector<Claim>& prev,
                                                 const std::vector<Claim>& next);

// Critical: any claim direction/magnitude change or claim removal.
// Major: protocol, data, or a shared claim's method class changed.
// Minor: everything else. Throws Argument when the payloads belong to
// different lineages.
DeltaClass classify_delta(const ArtifactRegistration& prev, const ArtifactRegistration& next);

// ── Batch kernels ───────────────────────────────────────────────────────

// similarities[i] = cosine(target, corpus[i]); the parallel path computes
// rows independently and bit-identically to the serial one.
std::vector<double> similarity_row(const std::vector<double>& target,
                                   const std::vector<std::vector<double>>& corpus,
                                   ExecMode mode = ExecMode::Parallel);

}  // namespace scholia
