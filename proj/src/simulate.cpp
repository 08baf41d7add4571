#include "scholia/simulate.hpp"

#include <cmath>
#include <fstream>

#include "scholia/errors.hpp"
#include "scholia/scoring.hpp"

namespace scholia {

// ── Scenario definition ─────────────────────────────────────────────────

Json ScenarioConfig::to_json() const {
  return Json{{"n_agents", n_agents},
              {"troll_fraction", troll_fraction},
              {"p_m0", p_m0},
              {"q", q},
              {"eta", eta},
              {"epochs", epochs},
              {"seed", seed},
              {"identity_penalties", identity_penalties}};
}

ScenarioConfig ScenarioConfig::from_json(const Json& doc) {
  if (!doc.is_object()) throw_error(ErrorKind::Encoding, "scenario: expected an object");
  ScenarioConfig out;
  try {
    out.n_agents = doc.at("n_agents").get<int>();
    out.troll_fraction = doc.at("troll_fraction").get<double>();
    out.p_m0 = doc.at("p_m0").get<double>();
    out.q = doc.at("q").get<double>();
    out.eta = doc.at("eta").get<double>();
    out.epochs = doc.at("epochs").get<int>();
    out.seed = doc.at("seed").get<std::uint64_t>();
    out.identity_penalties = doc.at("identity_penalties").get<bool>();
  } catch (const Json::exception& e) {
    throw_error(ErrorKind::Encoding, std::string("scenario: ") + e.what());
  }
  return out;
}

void validate_scenario(const ScenarioConfig& config) {
  if (config.n_agents < 1) throw_error(ErrorKind::Argument, "n_agents must be at least 1");
  if (!(config.troll_fraction >= 0.0 && config.troll_fraction <= 1.0)) {
    throw_error(ErrorKind::Argument, "troll_fraction must lie in [0, 1]");
  }
  if (!(config.p_m0 >= 0.0 && config.p_m0 <= 1.0)) {
    throw_error(ErrorKind::Argument, "p_m0 must lie in [0, 1]");
  }
  if (!(config.q >= 0.0)) throw_error(ErrorKind::Argument, "q must be non-negative");
  if (!(config.eta >= 0.0)) throw_error(ErrorKind::Argument, "eta must be non-negative");
  if (config.epochs < 1) throw_error(ErrorKind::Argument, "epochs must be at least 1");
}

// ── Deterministic randomness ────────────────────────────────────────────

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t counter_cell(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ counter);
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  // Top 53 bits → dyadic rational in [0, 1).
  return static_cast<double>(counter_cell(seed, stream, counter) >> 11) *
         (1.0 / 9007199254740992.0);
}

// ── Dynamics ────────────────────────────────────────────────────────────

double epistemic_loss(int n, double p_m, double q) {
  if (n < 0) throw_error(ErrorKind::Argument, "n must be non-negative");
  if (!(p_m >= 0.0 && p_m <= 1.0)) throw_error(ErrorKind::Argument, "p_m must lie in [0, 1]");
  if (!(q >= 0.0)) throw_error(ErrorKind::Argument, "q must be non-negative");
  return n * p_m * q;
}

namespace {

// Stream id for the one random decision in the model: does troll `agent`
// post a malicious review in epoch `t`? Independent of identity_penalties,
// so paired arms of an experiment share their randomness.
constexpr std::uint64_t kStreamMalicious = 1;

double mean_of(const std::vector<double>& values, std::size_t from, std::size_t to) {
  if (from >= to) return 0.0;
  double sum = 0.0;
  for (std::size_t i = from; i < to; ++i) sum += values[i];
  return sum / static_cast<double>(to - from);
}

}  // namespace

SimMetrics run_scenario(const ScenarioConfig& scenario, const GovernanceConfig& config) {
  validate_scenario(scenario);

  const std::size_t n = static_cast<std::size_t>(scenario.n_agents);
  const std::size_t n_trolls =
      static_cast<std::size_t>(std::llround(scenario.n_agents * scenario.troll_fraction));

  // Agents [0, n_trolls) are trolls, the rest honest.
  std::vector<double> p_m(n_trolls, scenario.p_m0);
  std::vector<double> standing(n, 0.0);

  SimMetrics metrics;
  metrics.loss.reserve(static_cast<std::size_t>(scenario.epochs));
  metrics.mean_p_m.reserve(static_cast<std::size_t>(scenario.epochs));
  metrics.rep_honest.reserve(static_cast<std::size_t>(scenario.epochs));
  metrics.rep_troll.reserve(static_cast<std::size_t>(scenario.epochs));
  metrics.malicious_counts.reserve(static_cast<std::size_t>(scenario.epochs));

  for (int epoch = 0; epoch < scenario.epochs; ++epoch) {
    // The probability in force during this epoch, before any feedback.
    metrics.mean_p_m.push_back(mean_of(p_m, 0, n_trolls));

    int malicious = 0;
    for (std::size_t agent = 0; agent < n; ++agent) {
      bool is_troll = agent < n_trolls;
      bool posts_malicious =
          is_troll && counter_uniform(scenario.seed, kStreamMalicious,
                                      static_cast<std::uint64_t>(epoch) * n + agent) < p_m[agent];

      if (posts_malicious) {
        malicious++;
        if (scenario.identity_penalties) {
          // Attributed and flagged: standing takes the flag penalty and the
          // agent backs off exponentially in it.
          double penalty = config.trust_lambda_flag;
          standing[agent] = trust_update(standing[agent], 0, 1, 0, config);
          p_m[agent] *= std::exp(-scenario.eta * penalty);
        }
        // Anonymous malicious reviews are unattributable: no flag, no decay.
      } else if (scenario.identity_penalties) {
        // An honest, signed review accrues to its author.
        standing[agent] = trust_update(standing[agent], 1, 0, 0, config);
      }
    }

    metrics.malicious_counts.push_back(malicious);
    double realized_frequency = static_cast<double>(malicious) / static_cast<double>(n);
    metrics.loss.push_back(epistemic_loss(scenario.n_agents, realized_frequency, scenario.q));
    metrics.rep_troll.push_back(mean_of(standing, 0, n_trolls));
    metrics.rep_honest.push_back(mean_of(standing, n_trolls, n));
  }

  return metrics;
}

std::vector<SimMetrics> run_seed_sweep(const ScenarioConfig& scenario,
                                       const GovernanceConfig& config,
                                       const std::vector<std::uint64_t>& seeds, ExecMode mode) {
  validate_scenario(scenario);
  std::vector<SimMetrics> results(seeds.size());
  parallel_for(seeds.size(), mode, [&](std::size_t i) {
    ScenarioConfig run = scenario;
    run.seed = seeds[i];
    results[i] = run_scenario(run, config);
  });
  return results;
}

// ── Output ──────────────────────────────────────────────────────────────

std::string metrics_csv(const SimMetrics& metrics) {
  std::string out = "epoch,loss,p_m,rep_honest,rep_troll\n";
  auto number = [](double x) { return Json(x).dump(); };
  for (std::size_t t = 0; t < metrics.loss.size(); ++t) {
    out += std::to_string(t);
    out += ',';
    out += number(metrics.loss[t]);
    out += ',';
    out += number(metrics.mean_p_m[t]);
    out += ',';
    out += number(metrics.rep_honest[t]);
    out += ',';
    out += number(metrics.rep_troll[t]);
    out += '\n';
  }
  return out;
}

void write_metrics_csv(const SimMetrics& metrics, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw_error(ErrorKind::Io, "cannot open for writing: " + path.string());
  file << metrics_csv(metrics);
  if (!file.good()) throw_error(ErrorKind::Io, "write failed: " + path.string());
}

}  // namespace scholia
