#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "scholia/events.hpp"
#include "scholia/parallel.hpp"

namespace scholia {

// ── Scenario definition ─────────────────────────────────────────────────

struct ScenarioConfig {
  int n_agents = 100;
  double troll_fraction = 0.2;  // [0, 1]; troll count = round(n_agents · fraction)
  double p_m0 = 0.5;            // initial malicious-review probability, [0, 1]
  double q = 1.0;               // expected degradation per malicious review, ≥ 0
  double eta = 1.0;             // penalty sensitivity, ≥ 0
  int epochs = 100;             // ≥ 1
  std::uint64_t seed = 0;
  bool identity_penalties = true;

  bool operator==(const ScenarioConfig&) const = default;

  Json to_json() const;
  static ScenarioConfig from_json(const Json& doc);  // throws Encoding on malformed input
};

// Throws Argument on the first out-of-bounds field.
void validate_scenario(const ScenarioConfig& config);

// ── Deterministic randomness ────────────────────────────────────────────

// Stateless counter-based generator: every draw is a pure function of
// (seed, stream, counter), so simulation arms that share a seed see the
// same underlying randomness regardless of what else they compute.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t counter_cell(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);  // [0,1)

// ── Dynamics ────────────────────────────────────────────────────────────

// n · p_m · q. Throws Argument on out-of-range inputs.
double epistemic_loss(int n, double p_m, double q);

struct SimMetrics {
  // Per-epoch series, all of length ScenarioConfig::epochs.
  std::vector<double> loss;             // realized epistemic loss L(t)
  std::vector<double> mean_p_m;         // mean troll p_m in force during epoch t
  std::vector<double> rep_honest;       // honest-cohort mean standing after epoch t
  std::vector<double> rep_troll;        // troll-cohort mean standing after epoch t
  std::vector<int> malicious_counts;    // realized malicious reviews in epoch t

  bool operator==(const SimMetrics&) const = default;
};

// One seeded run. Per epoch every troll posts a malicious review with its
// current p_m (honest agents never do). Under identity linkage every
// malicious review is attributed and flagged: the agent takes a standing
// penalty (the configured flag weight) and decays p_m by exp(−eta·penalty);
// honest reviews earn the endorsement weight. Under anonymity nothing
// attaches to anyone: flags and endorsements alike have no one to land on,
// so p_m stays at p_m0 and standings stay 0. Deterministic given the seed.
SimMetrics run_scenario(const ScenarioConfig& scenario, const GovernanceConfig& config);

// Independent scenarios differing only in seed; rows ordered like `seeds`.
std::vector<SimMetrics> run_seed_sweep(const ScenarioConfig& scenario,
                                       const GovernanceConfig& config,
                                       const std::vector<std::uint64_t>& seeds,
                                       ExecMode mode = ExecMode::Parallel);

// ── Output ──────────────────────────────────────────────────────────────

// CSV with header `epoch,loss,p_m,rep_honest,rep_troll`, one row per epoch,
// numbers in shortest round-trip form.
std::string metrics_csv(const SimMetrics& metrics);
void write_metrics_csv(const SimMetrics& metrics, const std::filesystem::path& path);

}  // namespace scholia
