// Benchmark of every kernel that carries both a serial reference path and
// an OpenMP path: chain verification, Merkle construction, the influence
// fixpoint, pairwise similarity, and simulation seed sweeps. Each section
// reports both timings and asserts the two paths return identical results.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "scholia/analysis.hpp"
#include "scholia/ledger.hpp"
#include "scholia/scoring.hpp"
#include "scholia/simulate.hpp"
#include "scholia/state.hpp"

namespace {

using namespace scholia;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename F>
double timed(F&& fn) {
  auto start = Clock::now();
  fn();
  return ms_since(start);
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-24s serial %9.2f ms   parallel %9.2f ms   identical: %s\n", name, serial_ms,
              parallel_ms, identical ? "yes" : "NO");
  if (!identical) std::exit(1);
}

// A synthetic chain: one identity, then registrations and citations.
std::vector<std::string> build_chain_lines(std::size_t events) {
  std::mt19937_64 rng(7);
  auto seed_span = [](std::array<std::uint8_t, 32>& buf, std::mt19937_64& r) {
    for (auto& b : buf) b = static_cast<std::uint8_t>(r());
  };
  std::array<std::uint8_t, 32> seed{};
  seed_span(seed, rng);
  auto [secret, record] = generate_identity(std::span<const std::uint8_t>(seed), 0);

  Ledger ledger;
  ledger.append(IdentityRegistration{record.public_key, kSignatureScheme, 0}, secret,
                record.key_id, 0);

  std::vector<ContentHash> artifacts;
  for (std::size_t i = 1; i < events; ++i) {
    std::int64_t t = static_cast<std::int64_t>(i);
    if (artifacts.size() < 2 || rng() % 2 == 0) {
      ArtifactRegistration body;
      std::array<std::uint8_t, 32> content{};
      seed_span(content, rng);
      body.artifact_hash = hash_content(content);
      body.lineage_id = body.artifact_hash;
      body.title = "artifact " + std::to_string(i);
      body.created_at = t;
      artifacts.push_back(body.artifact_hash);
      ledger.append(body, secret, record.key_id, t);
    } else {
      CitationEvent body;
      // Later registrations cite earlier ones, so edges always run back in
      // time and the graph stays acyclic.
      std::size_t citing = 1 + rng() % (artifacts.size() - 1);
      std::size_t cited = rng() % citing;
      body.citing = artifacts[citing];
      body.cited = artifacts[cited];
      body.modality = "foundational";
      body.polarity = 1.0;
      body.integration_depth = 0.5;
      body.tau = t;
      ledger.append(body, secret, record.key_id, t);
    }
  }

  std::vector<std::string> lines;
  lines.reserve(ledger.size());
  for (const LedgerEvent& event : ledger.events()) lines.push_back(event.canonical_bytes());
  return lines;
}

}  // namespace

int main() {
  // Chain verification. Fresh caches per run so both paths do full work.
  {
    std::vector<std::string> lines = build_chain_lines(2000);
    VerifyReport serial_report, parallel_report;
    SignatureCache serial_cache, parallel_cache;
    double s = timed([&] { serial_report = verify_chain(lines, ExecMode::Serial, &serial_cache); });
    double p =
        timed([&] { parallel_report = verify_chain(lines, ExecMode::Parallel, &parallel_cache); });
    report("verify_chain/2000", s, p, serial_report.ok == parallel_report.ok);
  }

  // Merkle construction over random leaves.
  {
    std::mt19937_64 rng(11);
    std::vector<ContentHash> leaves(1 << 15);
    for (auto& leaf : leaves) {
      std::array<std::uint8_t, 32> buf{};
      for (auto& b : buf) b = static_cast<std::uint8_t>(rng());
      leaf = hash_content(buf);
    }
    MerkleTree serial_tree, parallel_tree;
    double s = timed([&] { serial_tree = MerkleTree::build(leaves, ExecMode::Serial); });
    double p = timed([&] { parallel_tree = MerkleTree::build(leaves, ExecMode::Parallel); });
    report("merkle_build/32768", s, p, serial_tree.root() == parallel_tree.root());
  }

  // Influence fixpoint over a replayed state.
  {
    std::vector<std::string> lines = build_chain_lines(2000);
    Ledger ledger;
    for (const std::string& line : lines) {
      ledger.append_envelope(LedgerEvent::from_json(canonical_decode(line)));
    }
    LedgerState state = replay(ledger);
    GovernanceConfig config = GovernanceConfig::defaults();
    std::map<ContentHash, double> serial_result, parallel_result;
    double s = timed([&] { serial_result = influence_all(state, config, 1 << 20, ExecMode::Serial); });
    double p =
        timed([&] { parallel_result = influence_all(state, config, 1 << 20, ExecMode::Parallel); });
    report("influence_all", s, p, serial_result == parallel_result);
  }

  // Pairwise similarity row.
  {
    std::mt19937_64 rng(13);
    auto random_tokens = [&rng] {
      std::vector<std::string> tokens;
      std::size_t n = 4 + rng() % 12;
      for (std::size_t i = 0; i < n; ++i) tokens.push_back("tok" + std::to_string(rng() % 512));
      return tokens;
    };
    std::vector<double> target = baseline_embedding(random_tokens(), 256);
    std::vector<std::vector<double>> corpus(4000);
    for (auto& row : corpus) row = baseline_embedding(random_tokens(), 256);
    std::vector<double> serial_row, parallel_row;
    double s = timed([&] { serial_row = similarity_row(target, corpus, ExecMode::Serial); });
    double p = timed([&] { parallel_row = similarity_row(target, corpus, ExecMode::Parallel); });
    report("similarity_row/4000", s, p, serial_row == parallel_row);
  }

  // Simulation seed sweep.
  {
    ScenarioConfig scenario;
    scenario.n_agents = 100;
    scenario.epochs = 100;
    GovernanceConfig config = GovernanceConfig::defaults();
    std::vector<std::uint64_t> seeds(100);
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i + 1;
    std::vector<SimMetrics> serial_sweep, parallel_sweep;
    double s =
        timed([&] { serial_sweep = run_seed_sweep(scenario, config, seeds, ExecMode::Serial); });
    double p =
        timed([&] { parallel_sweep = run_seed_sweep(scenario, config, seeds, ExecMode::Parallel); });
    report("seed_sweep/100", s, p, serial_sweep == parallel_sweep);
  }

  std::puts("all kernels: serial and parallel paths agree");
  return 0;
}
