// Semantic analysis: hashed-token embeddings (cross-checked against the
// reference SHA-256), cosine kernels, claim distance and contradiction,
// method overlap, novelty decomposition, and version delta classification.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fixture_ledger.hpp"
#include "mini_ledger.hpp"
#include "oracles.hpp"
#include "scholia/analysis.hpp"
#include "scholia/errors.hpp"
#include "scholia/hash.hpp"
#include "scholia/state.hpp"

using namespace scholia;

namespace {

template <typename Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a scholia::Error to be thrown");
  return ErrorKind::Io;  // unreachable
}

const testutil::Fixture& fixture() {
  static const testutil::Fixture fx = testutil::build_fixture();
  return fx;
}

ContentHash unknown_hash() { return hash_content("nobody registered this"); }

// Minimal registration payload for kernel-level tests.
ArtifactRegistration make_artifact(const std::string& title,
                                   std::vector<std::string> tags = {},
                                   std::vector<Claim> claims = {}) {
  ArtifactRegistration a;
  a.artifact_hash = hash_content("analysis artifact " + title);
  a.lineage_id = a.artifact_hash;
  a.title = title;
  a.domain_tags = std::move(tags);
  a.claims = std::move(claims);
  a.created_at = 100;
  return a;
}

// Fabricated registration corpus: novelty and overlap read only the
// artifacts map, so states can be assembled without signing anything.
struct FabricatedCorpus {
  LedgerState state;

  ContentHash add(const ArtifactRegistration& payload, std::int64_t registered_at,
                  std::uint64_t seq) {
    ArtifactInfo info;
    info.payload = payload;
    info.author = hash_content("fabricated author");
    info.registered_at = registered_at;
    info.seq = seq;
    state.artifacts.emplace(payload.artifact_hash, info);
    return payload.artifact_hash;
  }
};

}  // namespace

// ── Tokenization ────────────────────────────────────────────────────────

TEST_CASE("tokenize lowercases alphanumeric runs and drops the rest") {
  CHECK(tokenize("Ion transport in doped membranes!") ==
        std::vector<std::string>{"ion", "transport", "in", "doped", "membranes"});
  CHECK(tokenize("CO2 uptake") == std::vector<std::string>{"co2", "uptake"});
  CHECK(tokenize("a--b__c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(tokenize("  spaced \t out\n") == std::vector<std::string>{"spaced", "out"});
  CHECK(tokenize("...!?") == std::vector<std::string>{});
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(tokenize("MiXeD42case") == std::vector<std::string>{"mixed42case"});
}

TEST_CASE("token bucket and sign derive from the token's digest") {
  const std::vector<int> dims = {2, 7, 64, 4096};
  std::mt19937 rng(0xaa87);
  for (int trial = 0; trial < 100; ++trial) {
    std::string token = "token-" + std::to_string(trial) + "-" + std::to_string(rng());
    std::vector<std::uint8_t> digest = testutil::ref_sha256(token);
    std::uint64_t value = 0;
    for (int i = 0; i < 8; ++i) value = (value << 8) | digest[i];
    for (int dim : dims) {
      CHECK(token_bucket(token, dim) == value % static_cast<std::uint64_t>(dim));
    }
    CHECK(token_sign(token) == ((digest[8] & 1) != 0 ? -1.0 : 1.0));
  }

  CHECK(kind_of([] { token_bucket("x", 1); }) == ErrorKind::Argument);
  CHECK(kind_of([] { token_bucket("x", 0); }) == ErrorKind::Argument);
}

TEST_CASE("baseline embedding is a normalized signed bucket count") {
  // A single token occupies exactly its bucket at unit weight.
  std::vector<double> single = baseline_embedding({"alpha"}, 64);
  REQUIRE(single.size() == 64);
  std::size_t bucket = token_bucket("alpha", 64);
  CHECK(single[bucket] == token_sign("alpha"));
  for (std::size_t i = 0; i < single.size(); ++i) {
    if (i != bucket) CHECK(single[i] == 0.0);
  }

  // Repeating a token rescales but cannot rotate the vector.
  CHECK(baseline_embedding({"alpha", "alpha"}, 64) == single);

  // Two tokens in distinct buckets split the mass at 1/√2 each.
  REQUIRE(token_bucket("alpha", 64) != token_bucket("beta", 64));
  std::vector<double> pair = baseline_embedding({"alpha", "beta"}, 64);
  CHECK(std::abs(pair[token_bucket("alpha", 64)]) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(pair[token_bucket("beta", 64)]) == doctest::Approx(1.0 / std::sqrt(2.0)));

  // Unit norm whenever any mass survives; the empty input stays zero.
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> tokens;
    int count = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < count; ++i) tokens.push_back("w" + std::to_string(rng() % 40));
    std::vector<double> v = baseline_embedding(tokens, 256);
    double norm_sq = 0.0;
    for (double x : v) norm_sq += x * x;
    if (norm_sq > 0.0) CHECK(std::sqrt(norm_sq) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(baseline_embedding(tokens, 256) == v);  // deterministic
  }
  std::vector<double> empty = baseline_embedding({}, 16);
  CHECK(std::count(empty.begin(), empty.end(), 0.0) == 16);

  CHECK(kind_of([] { baseline_embedding({"x"}, 1); }) == ErrorKind::Argument);
}

TEST_CASE("cosine similarity handles zero vectors and rejects dimension mismatch") {
  std::vector<double> e0 = {1.0, 0.0, 0.0};
  std::vector<double> e1 = {0.0, 1.0, 0.0};
  CHECK(cosine_similarity(e0, e0) == 1.0);
  CHECK(cosine_similarity(e0, e1) == 0.0);
  CHECK(cosine_similarity(e0, {-1.0, 0.0, 0.0}) == -1.0);
  CHECK(cosine_similarity({1.0, 1.0, 0.0}, e0) == doctest::Approx(1.0 / std::sqrt(2.0)));

  std::vector<double> zero = {0.0, 0.0, 0.0};
  CHECK(cosine_similarity(zero, e0) == 0.0);
  CHECK(cosine_similarity(e0, zero) == 0.0);
  CHECK(cosine_similarity(zero, zero) == 0.0);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(8), b(8);
    for (int i = 0; i < 8; ++i) {
      a[i] = coord(rng);
      b[i] = coord(rng);
    }
    double ab = cosine_similarity(a, b);
    CHECK(ab == doctest::Approx(cosine_similarity(b, a)).epsilon(1e-12));
    CHECK(ab >= -1.0 - 1e-12);
    CHECK(ab <= 1.0 + 1e-12);
  }

  CHECK(kind_of([&] { cosine_similarity(e0, {1.0, 0.0}); }) == ErrorKind::Argument);
}

TEST_CASE("artifact tokens cover title, tags, and claim text") {
  Claim claim = testutil::mini_claim("ion-flux", "raises conductivity", "positive", "lab-2025",
                                     "simulation");
  ArtifactRegistration artifact =
      make_artifact("Ion Transport Studies", {"electro-chemistry"}, {claim});
  CHECK(artifact_tokens(artifact) ==
        std::vector<std::string>{"ion", "transport", "studies", "electro", "chemistry", "ion",
                                 "flux", "raises", "conductivity"});

  // Direction, dataset, and method never leak into the text embedding.
  Claim relabeled = claim;
  relabeled.direction = "negative";
  relabeled.dataset_class = "field-2026";
  relabeled.method_class = "observational";
  ArtifactRegistration variant =
      make_artifact("Ion Transport Studies", {"electro-chemistry"}, {relabeled});
  CHECK(artifact_tokens(variant) == artifact_tokens(artifact));

  CHECK(artifact_embedding(artifact, 64) == baseline_embedding(artifact_tokens(artifact), 64));
}

// ── Claim comparison ────────────────────────────────────────────────────

TEST_CASE("claim distance counts mismatched fields and ignores magnitude") {
  Claim base = testutil::mini_claim("grazing", "limits-algae", "positive", "reef", "field", 0.5);
  CHECK(claim_distance(base, base) == 0.0);

  Claim magnitude_only = base;
  magnitude_only.magnitude = 0.9;
  CHECK(claim_distance(base, magnitude_only) == 0.0);
  Claim magnitude_dropped = base;
  magnitude_dropped.magnitude = std::nullopt;
  CHECK(claim_distance(base, magnitude_dropped) == 0.0);

  // Each of the five compared fields contributes exactly one fifth.
  auto mutate = [&](int field) {
    Claim c = base;
    switch (field) {
      case 0: c.subject = "sediment"; break;
      case 1: c.predicate = "tracks-rainfall"; break;
      case 2: c.direction = "negative"; break;
      case 3: c.dataset_class = "catchment"; break;
      case 4: c.method_class = "sediment-trap"; break;
    }
    return c;
  };
  double accumulated = 0.0;
  Claim drifted = base;
  for (int field = 0; field < 5; ++field) {
    Claim single = mutate(field);
    CHECK(claim_distance(base, single) == 0.2);
    CHECK(claim_distance(single, base) == 0.2);  // symmetric
    drifted = mutate(field);
    // apply cumulatively on a copy
  }
  Claim all = base;
  all.subject = "sediment";
  all.predicate = "tracks-rainfall";
  all.direction = "negative";
  all.dataset_class = "catchment";
  all.method_class = "sediment-trap";
  CHECK(claim_distance(base, all) == 1.0);
  (void)accumulated;
}

TEST_CASE("claim set distance is the closest pair, vacuously one") {
  Claim a = testutil::mini_claim("grazing", "limits-algae", "positive", "reef", "field");
  Claim b = testutil::mini_claim("sediment", "tracks-rainfall", "positive", "catchment", "trap");
  Claim near_a = a;
  near_a.direction = "negative";  // distance 0.2 from a

  CHECK(claim_set_distance({}, {}) == 1.0);
  CHECK(claim_set_distance({a}, {}) == 1.0);
  CHECK(claim_set_distance({}, {a}) == 1.0);
  CHECK(claim_set_distance({a}, {a}) == 0.0);
  CHECK(claim_set_distance({a, b}, {near_a}) == 0.2);
  // b shares only its direction with a (0.8) and nothing with near_a (1.0).
  CHECK(claim_set_distance({b}, {near_a, a}) == doctest::Approx(0.8));
  CHECK(claim_set_distance({a, b}, {a, b}) == 0.0);
}

// ── Contradiction ───────────────────────────────────────────────────────

TEST_CASE("claims contradict only on a shared key with opposite non-zero directions") {
  const std::vector<std::string> directions = {"positive", "negative", "zero"};
  Claim base = testutil::mini_claim("grazing", "limits-algae", "positive", "reef", "field");

  for (const std::string& da : directions) {
    for (const std::string& db : directions) {
      Claim a = base;
      a.direction = da;
      Claim b = base;
      b.direction = db;
      b.method_class = "remote-sensing";  // key ignores the method
      bool expected = (da == "positive" && db == "negative") ||
                      (da == "negative" && db == "positive");
      CHECK(contradiction_flag({a}, {b}).flag == expected);

      // Any key-field mismatch clears the contradiction.
      for (int field = 0; field < 3; ++field) {
        Claim off = b;
        if (field == 0) off.subject = "sediment";
        if (field == 1) off.predicate = "tracks-rainfall";
        if (field == 2) off.dataset_class = "catchment";
        CHECK_FALSE(contradiction_flag({a}, {off}).flag);
      }
    }
  }
}

TEST_CASE("contradiction reports every witnessing pair in scan order") {
  Claim pos = testutil::mini_claim("grazing", "limits-algae", "positive", "reef", "field");
  Claim neg = pos;
  neg.direction = "negative";
  Claim unrelated = testutil::mini_claim("sediment", "tracks-rainfall", "positive", "catchment",
                                         "trap");

  ContradictionResult result = contradiction_flag({pos, neg, unrelated}, {neg, pos});
  CHECK(result.flag);
  REQUIRE(result.witnesses.size() == 2);
  CHECK(result.witnesses[0].first == pos);
  CHECK(result.witnesses[0].second == neg);
  CHECK(result.witnesses[1].first == neg);
  CHECK(result.witnesses[1].second == pos);

  // A set holding both signs of one claim contradicts itself; a clean set
  // does not.
  CHECK(contradiction_flag({pos, neg}, {pos, neg}).flag);
  CHECK_FALSE(contradiction_flag({pos, unrelated}, {pos, unrelated}).flag);
  CHECK_FALSE(contradiction_flag({}, {pos}).flag);

  // Symmetry of the flag and the witness count under argument swap.
  std::mt19937 rng(23);
  const std::vector<std::string> directions = {"positive", "negative", "zero"};
  for (int trial = 0; trial < 1000; ++trial) {
    auto random_set = [&] {
      std::vector<Claim> claims;
      int count = static_cast<int>(rng() % 4);
      for (int i = 0; i < count; ++i) {
        claims.push_back(testutil::mini_claim("s" + std::to_string(rng() % 3), "p",
                                              directions[rng() % 3],
                                              "d" + std::to_string(rng() % 2), "m"));
      }
      return claims;
    };
    std::vector<Claim> first = random_set();
    std::vector<Claim> second = random_set();
    ContradictionResult forward = contradiction_flag(first, second);
    ContradictionResult backward = contradiction_flag(second, first);
    CHECK(forward.flag == backward.flag);
    CHECK(forward.witnesses.size() == backward.witnesses.size());
  }
}

// ── Overlap ─────────────────────────────────────────────────────────────

TEST_CASE("method fingerprints fold case and include the protocol hash") {
  Claim c1 = testutil::mini_claim("a", "p", "positive", "d", "Hierarchical-Bayes");
  Claim c2 = testutil::mini_claim("b", "p", "positive", "d", "hierarchical-bayes");
  Claim bare = testutil::mini_claim("c", "p", "positive", "d", "");
  ArtifactRegistration artifact = make_artifact("Methods", {}, {c1, c2, bare});
  CHECK(method_fingerprint(artifact) == std::set<std::string>{"hierarchical-bayes"});

  artifact.protocol_hash = hash_content("protocol text");
  CHECK(method_fingerprint(artifact) ==
        std::set<std::string>{"hierarchical-bayes", hash_content("protocol text").hex()});

  CHECK(jaccard({}, {}) == 1.0);
  CHECK(jaccard({"a"}, {}) == 0.0);
  CHECK(jaccard({"a", "b"}, {"b", "c"}) == doctest::Approx(1.0 / 3.0));
  CHECK(jaccard({"a", "b"}, {"a", "b"}) == 1.0);
}

TEST_CASE("overlap flags near-duplicates under strict thresholds") {
  Claim shared = testutil::mini_claim("grazing", "limits-algae", "positive", "reef", "field");
  FabricatedCorpus corpus;
  ArtifactRegistration original = make_artifact("Grazing survey methods", {"ecology"}, {shared});
  ArtifactRegistration duplicate = original;
  duplicate.artifact_hash = hash_content("analysis artifact duplicate");
  duplicate.lineage_id = duplicate.artifact_hash;
  ArtifactRegistration distinct =
      make_artifact("Quantum spin lattice dynamics", {"physics"},
                    {testutil::mini_claim("spin", "orders", "positive", "lattice", "dmrg")});
  ContentHash a = corpus.add(original, 100, 0);
  ContentHash b = corpus.add(duplicate, 110, 1);
  ContentHash c = corpus.add(distinct, 120, 2);

  const GovernanceConfig config = GovernanceConfig::defaults();  // eps 0.3 / 0.3
  OverlapResult same = overlap_flag(corpus.state, config, a, b);
  CHECK(same.flag);
  CHECK(same.semantic_distance == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(same.method_distance == 0.0);

  OverlapResult far = overlap_flag(corpus.state, config, a, c);
  CHECK_FALSE(far.flag);
  CHECK(far.method_distance == 1.0);
  CHECK(far.semantic_distance ==
        1.0 - cosine_similarity(artifact_embedding(original, config.embedding_dim),
                                artifact_embedding(distinct, config.embedding_dim)));

  // The comparison is strict: a distance exactly at the threshold does
  // not flag.
  GovernanceConfig zero_eps = config;
  zero_eps.overlap_eps_semantic = 0.0;
  zero_eps.overlap_eps_method = 0.0;
  CHECK_FALSE(overlap_flag(corpus.state, zero_eps, a, b).flag);
  GovernanceConfig hair_above = config;
  hair_above.overlap_eps_semantic = std::nextafter(0.0, 1.0);
  hair_above.overlap_eps_method = std::nextafter(0.0, 1.0);
  CHECK(overlap_flag(corpus.state, hair_above, a, b).flag);

  // Same text but a different registered protocol keeps them apart on the
  // method axis.
  ArtifactRegistration reprotocol = original;
  reprotocol.artifact_hash = hash_content("analysis artifact reprotocol");
  reprotocol.lineage_id = reprotocol.artifact_hash;
  original.protocol_hash = hash_content("protocol one");
  reprotocol.protocol_hash = hash_content("protocol two");
  FabricatedCorpus versioned;
  a = versioned.add(original, 100, 0);
  b = versioned.add(reprotocol, 110, 1);
  OverlapResult split = overlap_flag(versioned.state, config, a, b);
  CHECK(split.semantic_distance == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(split.method_distance == doctest::Approx(2.0 / 3.0));
  CHECK_FALSE(split.flag);

  CHECK(kind_of([&] { overlap_flag(corpus.state, config, unknown_hash(), a); }) ==
        ErrorKind::Argument);
  CHECK(kind_of([&] { overlap_flag(corpus.state, config, a, unknown_hash()); }) ==
        ErrorKind::Argument);
}

TEST_CASE("fixture overlap distances recompute from first principles") {
  const LedgerState& state = fixture().state;
  const GovernanceConfig& config = fixture().config;

  auto expected = [&](const std::string& x, const std::string& y) {
    const ArtifactRegistration& px = state.artifacts.at(fixture().names.at(x)).payload;
    const ArtifactRegistration& py = state.artifacts.at(fixture().names.at(y)).payload;
    OverlapResult r;
    r.semantic_distance =
        1.0 - cosine_similarity(artifact_embedding(px, config.embedding_dim),
                                artifact_embedding(py, config.embedding_dim));
    r.method_distance = 1.0 - jaccard(method_fingerprint(px), method_fingerprint(py));
    r.flag = r.semantic_distance < config.overlap_eps_semantic &&
             r.method_distance < config.overlap_eps_method;
    return r;
  };

  for (const auto& [x, y] : std::vector<std::pair<std::string, std::string>>{
           {"B1", "B1b"}, {"A1", "A2"}, {"C1", "D1"}, {"B2", "C1"}}) {
    OverlapResult want = expected(x, y);
    OverlapResult got = overlap_flag(state, config, fixture().names.at(x),
                                     fixture().names.at(y));
    CHECK(got.flag == want.flag);
    CHECK(got.semantic_distance == want.semantic_distance);
    CHECK(got.method_distance == want.method_distance);
  }

  // B1b restates B1's claim with the same method class: method distance 0.
  OverlapResult b1 = overlap_flag(state, config, fixture().names.at("B1"),
                                  fixture().names.at("B1b"));
  CHECK(b1.method_distance == 0.0);
}

// ── Novelty ─────────────────────────────────────────────────────────────

TEST_CASE("novelty of the first artifact is maximal") {
  const LedgerState& state = fixture().state;
  const GovernanceConfig& config = fixture().config;

  // A1 opened the corpus and was registered the instant it was created.
  NoveltyBreakdown first = novelty(state, config, fixture().names.at("A1"));
  CHECK(first.entropy_term == 1.0);
  CHECK(first.claims_term == 1.0);
  CHECK(first.latency_term == 1.0);
  CHECK(first.value == 1.0);

  // D1 has exactly one prior: a one-point similarity distribution is
  // uniform, so the entropy term stays 1.
  NoveltyBreakdown second = novelty(state, config, fixture().names.at("D1"));
  CHECK(second.entropy_term == 1.0);

  CHECK(kind_of([&] { novelty(state, config, unknown_hash()); }) == ErrorKind::Argument);
}

TEST_CASE("novelty entropy separates a duplicate from an orthogonal corpus") {
  // Priors: one artifact identical to the target (similarity 1) and one
  // with a disjoint token set (similarity 0). The softmax at temperature 1
  // puts p = e/(1+e) on the duplicate, giving entropy ln(1+e) − e/(1+e).
  FabricatedCorpus corpus;
  ArtifactRegistration twin = make_artifact("alpha");
  ArtifactRegistration other = make_artifact("beta");
  ArtifactRegistration target = make_artifact("alpha");
  target.artifact_hash = hash_content("analysis artifact target");
  target.lineage_id = target.artifact_hash;
  target.created_at = 120;  // registered the instant it exists: no latency
  corpus.add(twin, 100, 0);
  corpus.add(other, 110, 1);
  ContentHash t = corpus.add(target, 120, 2);

  REQUIRE(token_bucket("alpha", 64) != token_bucket("beta", 64));

  GovernanceConfig config = GovernanceConfig::defaults();
  NoveltyBreakdown breakdown = novelty(corpus.state, config, t);
  const double e = std::exp(1.0);
  double expected_entropy = (std::log(1.0 + e) - e / (1.0 + e)) / std::log(2.0);
  CHECK(breakdown.entropy_term == doctest::Approx(expected_entropy).epsilon(1e-9));
  CHECK(breakdown.claims_term == 1.0);  // nobody stakes claims
  CHECK(breakdown.latency_term == 1.0);
  CHECK(breakdown.value == doctest::Approx(config.novelty_lambda_entropy * expected_entropy +
                                           config.novelty_lambda_claims +
                                           config.novelty_lambda_latency)
                               .epsilon(1e-9));

  // Raising the temperature flattens the softmax toward uniform: entropy
  // can only grow.
  GovernanceConfig hot = config;
  hot.softmax_temperature = 10.0;
  CHECK(novelty(corpus.state, hot, t).entropy_term > breakdown.entropy_term);

  // An identical twin among the priors drives the claims term to zero
  // when it also restates the claims.
  Claim c = testutil::mini_claim("grazing", "limits-algae", "positive", "reef", "field");
  FabricatedCorpus claimed;
  ArtifactRegistration prior_with_claim = make_artifact("alpha", {}, {c});
  ArtifactRegistration target_with_claim = make_artifact("gamma", {}, {c});
  claimed.add(prior_with_claim, 100, 0);
  t = claimed.add(target_with_claim, 110, 1);
  CHECK(novelty(claimed.state, config, t).claims_term == 0.0);
}

TEST_CASE("novelty latency decays linearly to the horizon") {
  GovernanceConfig config = GovernanceConfig::defaults();
  config.novelty_horizon_seconds = 1000.0;

  auto latency_term = [&](std::int64_t created, std::int64_t registered) {
    FabricatedCorpus corpus;
    ArtifactRegistration artifact = make_artifact("solo");
    artifact.created_at = created;
    ContentHash t = corpus.add(artifact, registered, 0);
    return novelty(corpus.state, config, t).latency_term;
  };

  CHECK(latency_term(100, 100) == 1.0);
  CHECK(latency_term(100, 600) == 0.5);
  CHECK(latency_term(100, 850) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(latency_term(100, 1100) == 0.0);
  CHECK(latency_term(100, 5000) == 0.0);  // clamped past the horizon
}

TEST_CASE("novelty weights its terms in configuration order") {
  const LedgerState& state = fixture().state;
  GovernanceConfig config = fixture().config;
  config.novelty_lambda_entropy = 0.5;
  config.novelty_lambda_claims = 0.3;
  config.novelty_lambda_latency = 0.2;

  for (const std::string label : {"A1", "D1", "B1", "C1", "B1b"}) {
    NoveltyBreakdown b = novelty(state, config, fixture().names.at(label));
    CHECK(b.value == 0.5 * b.entropy_term + 0.3 * b.claims_term + 0.2 * b.latency_term);
    CHECK(b.entropy_term >= 0.0);
    CHECK(b.entropy_term <= 1.0 + 1e-12);
    CHECK(b.claims_term >= 0.0);
    CHECK(b.claims_term <= 1.0);
    CHECK(b.latency_term >= 0.0);
    CHECK(b.latency_term <= 1.0);
  }

  // The serial and parallel sweeps are bit-identical.
  for (const auto& [label, hash] : fixture().names) {
    if (state.artifacts.count(hash) == 0) continue;
    NoveltyBreakdown serial = novelty(state, fixture().config, hash, ExecMode::Serial);
    NoveltyBreakdown parallel = novelty(state, fixture().config, hash, ExecMode::Parallel);
    CHECK(serial.entropy_term == parallel.entropy_term);
    CHECK(serial.claims_term == parallel.claims_term);
    CHECK(serial.latency_term == parallel.latency_term);
    CHECK(serial.value == parallel.value);
  }
}

// ── Version deltas ──────────────────────────────────────────────────────

TEST_CASE("critically changed claim keys track withdrawals and flips") {
  Claim c1 = testutil::mini_claim("grazing", "limits-algae", "positive", "reef", "field", 0.5);
  Claim c2 = testutil::mini_claim("sediment", "tracks-rainfall", "positive", "catchment", "trap");

  CHECK(critically_changed_claim_keys({c1, c2}, {c1, c2}).empty());
  CHECK(critically_changed_claim_keys({}, {c1}).empty());  // additions are not critical

  CHECK(critically_changed_claim_keys({c1, c2}, {c2}) ==
        std::set<ClaimKey>{claim_key(c1)});

  Claim flipped = c1;
  flipped.direction = "negative";
  CHECK(critically_changed_claim_keys({c1, c2}, {flipped, c2}) ==
        std::set<ClaimKey>{claim_key(c1)});

  Claim louder = c1;
  louder.magnitude = 0.9;
  CHECK(critically_changed_claim_keys({c1}, {louder}) == std::set<ClaimKey>{claim_key(c1)});
  Claim silent = c1;
  silent.magnitude = std::nullopt;
  CHECK(critically_changed_claim_keys({c1}, {silent}) == std::set<ClaimKey>{claim_key(c1)});

  // Method changes share the key, so they are not critical here.
  Claim remethod = c1;
  remethod.method_class = "remote-sensing";
  CHECK(critically_changed_claim_keys({c1}, {remethod}).empty());
}

TEST_CASE("version deltas classify by the severity ladder") {
  Claim c1 = testutil::mini_claim("grazing", "limits-algae", "positive", "reef", "field", 0.5);
  Claim c2 = testutil::mini_claim("sediment", "tracks-rainfall", "positive", "catchment", "trap");
  ArtifactRegistration prev = make_artifact("Grazing effects, v1", {"ecology"}, {c1, c2});
  prev.protocol_hash = hash_content("protocol v1");
  prev.data_hash = hash_content("data v1");

  auto next_like = [&] {
    ArtifactRegistration next = prev;
    next.artifact_hash = hash_content("analysis artifact v2");
    next.title = "Grazing effects, v2";
    return next;
  };

  CHECK(classify_delta(prev, next_like()) == DeltaClass::Minor);  // title alone

  ArtifactRegistration retagged = next_like();
  retagged.domain_tags.push_back("marine-biology");
  CHECK(classify_delta(prev, retagged) == DeltaClass::Minor);

  ArtifactRegistration added = next_like();
  added.claims.push_back(testutil::mini_claim("new", "claim", "positive", "d", "m"));
  CHECK(classify_delta(prev, added) == DeltaClass::Minor);

  ArtifactRegistration reprotocol = next_like();
  reprotocol.protocol_hash = hash_content("protocol v2");
  CHECK(classify_delta(prev, reprotocol) == DeltaClass::Major);

  ArtifactRegistration redata = next_like();
  redata.data_hash = std::nullopt;
  CHECK(classify_delta(prev, redata) == DeltaClass::Major);

  ArtifactRegistration remethod = next_like();
  remethod.claims[0].method_class = "remote-sensing";
  CHECK(classify_delta(prev, remethod) == DeltaClass::Major);

  ArtifactRegistration withdrawn = next_like();
  withdrawn.claims = {c2};
  CHECK(classify_delta(prev, withdrawn) == DeltaClass::Critical);

  ArtifactRegistration flipped = next_like();
  flipped.claims[0].direction = "negative";
  CHECK(classify_delta(prev, flipped) == DeltaClass::Critical);

  ArtifactRegistration rescaled = next_like();
  rescaled.claims[0].magnitude = 0.9;
  CHECK(classify_delta(prev, rescaled) == DeltaClass::Critical);

  // Critical outranks major when both apply.
  ArtifactRegistration both = next_like();
  both.claims[0].direction = "negative";
  both.protocol_hash = hash_content("protocol v3");
  CHECK(classify_delta(prev, both) == DeltaClass::Critical);

  // Claim order is irrelevant on either side.
  ArtifactRegistration shuffled = next_like();
  std::reverse(shuffled.claims.begin(), shuffled.claims.end());
  CHECK(classify_delta(prev, shuffled) == DeltaClass::Minor);
  ArtifactRegistration shuffled_critical = flipped;
  std::reverse(shuffled_critical.claims.begin(), shuffled_critical.claims.end());
  CHECK(classify_delta(prev, shuffled_critical) == DeltaClass::Critical);

  ArtifactRegistration foreign = next_like();
  foreign.lineage_id = hash_content("someone else's lineage");
  CHECK(kind_of([&] { classify_delta(prev, foreign); }) == ErrorKind::Argument);

  CHECK(delta_class_name(DeltaClass::Minor) == "minor");
  CHECK(delta_class_name(DeltaClass::Major) == "major");
  CHECK(delta_class_name(DeltaClass::Critical) == "critical");
}

TEST_CASE("fixture lineage B1 → B1b is a minor delta") {
  const LedgerState& state = fixture().state;
  const ArtifactRegistration& b1 = state.artifacts.at(fixture().names.at("B1")).payload;
  const ArtifactRegistration& b1b = state.artifacts.at(fixture().names.at("B1b")).payload;
  CHECK(classify_delta(b1, b1b) == DeltaClass::Minor);  // addendum restates the claim
}

// ── Batch kernels ───────────────────────────────────────────────────────

TEST_CASE("similarity rows match elementwise cosine in both exec modes") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  auto random_vec = [&](int dim) {
    std::vector<double> v(dim);
    for (double& x : v) x = coord(rng);
    return v;
  };

  std::vector<double> target = random_vec(16);
  std::vector<std::vector<double>> corpus;
  for (int i = 0; i < 33; ++i) corpus.push_back(random_vec(16));
  corpus.push_back(std::vector<double>(16, 0.0));  // zero row → similarity 0

  std::vector<double> serial = similarity_row(target, corpus, ExecMode::Serial);
  std::vector<double> parallel = similarity_row(target, corpus, ExecMode::Parallel);
  REQUIRE(serial.size() == corpus.size());
  CHECK(serial == parallel);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(serial[i] == cosine_similarity(target, corpus[i]));
  }
  CHECK(serial.back() == 0.0);

  CHECK(similarity_row(target, {}).empty());

  // A ragged corpus surfaces as an error from either execution mode; the
  // parallel sweep re-throws on the calling thread rather than aborting.
  std::vector<std::vector<double>> ragged = {random_vec(16), random_vec(8)};
  CHECK(kind_of([&] { similarity_row(target, ragged, ExecMode::Serial); }) ==
        ErrorKind::Argument);
  CHECK(kind_of([&] { similarity_row(target, ragged, ExecMode::Parallel); }) ==
        ErrorKind::Argument);
}
