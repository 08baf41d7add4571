// Envelope chain: canonical serialization, hash links, signature checks,
// tamper detection, verification failure ordering, anchors, and the
// repository directory layout built on top of it.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fixture_ledger.hpp"
#include "oracles.hpp"
#include "scholia/canonical.hpp"
#include "scholia/errors.hpp"
#include "scholia/events.hpp"
#include "scholia/hash.hpp"
#include "scholia/identity.hpp"
#include "scholia/ledger.hpp"
#include "scholia/repository.hpp"

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

std::vector<std::string> fixture_lines() {
  std::vector<std::string> lines;
  for (const auto& event : fixture().ledger.events()) lines.push_back(event.canonical_bytes());
  return lines;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::filesystem::path temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("scholia_ledger_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Hand-assembled, correctly signed envelope with caller-chosen seq and
// prev_hash; lets tests put structurally valid events in invalid positions.
LedgerEvent make_signed_event(EventBody body, const SecretKey& signer,
                              const ContentHash& author_key, std::uint64_t seq,
                              const ContentHash& prev_hash, std::int64_t timestamp) {
  LedgerEvent event;
  event.seq = seq;
  event.prev_hash = prev_hash;
  event.timestamp = timestamp;
  event.author_key = author_key;
  event.body = std::move(body);
  event.event_id = hash_content(canonical_encode(body_to_json(event.body)));
  event.signature = sign(event.signing_bytes(), signer);
  return event;
}

ContentHash oracle_hash(std::uint8_t domain, std::string_view payload) {
  std::string input;
  input.push_back(static_cast<char>(domain));
  input.append(payload);
  auto digest = testutil::ref_sha256(input);
  ContentHash out;
  std::copy(digest.begin(), digest.end(), out.bytes.begin());
  return out;
}

}  // namespace

TEST_CASE("rebuilding the fixture reproduces the committed chain byte-for-byte") {
  auto dir = temp_dir("regen");
  fixture().ledger.save(dir / "chain.jsonl");
  CHECK(read_file(dir / "chain.jsonl") ==
        read_file(std::filesystem::path(SCHOLIA_FIXTURE_DIR) / "chain.jsonl"));
  // Two independent builds agree as well (deterministic keys + signatures).
  testutil::Fixture again = testutil::build_fixture();
  REQUIRE(again.ledger.size() == fixture().ledger.size());
  for (std::size_t k = 0; k < again.ledger.size(); ++k) {
    CHECK(again.ledger.at(k).canonical_bytes() == fixture().ledger.at(k).canonical_bytes());
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("envelopes derive ids, hashes, and signing bytes as documented") {
  const Ledger& ledger = fixture().ledger;
  REQUIRE(ledger.size() == 42);
  CHECK(ledger.at(0).prev_hash.is_zero());
  CHECK(ledger.head_hash() == ledger.at(41).envelope_hash());
  CHECK(Ledger{}.head_hash().is_zero());
  CHECK(kind_of([&] { ledger.at(42); }) == ErrorKind::Argument);

  for (const auto& event : ledger.events()) {
    std::string line = event.canonical_bytes();
    CHECK(is_canonical_line(line));
    // event_id = content hash of the canonical body; envelope hash uses the
    // envelope domain over the full line. Both checked against the oracle.
    CHECK(event.event_id == oracle_hash(0x00, canonical_encode(body_to_json(event.body))));
    CHECK(event.envelope_hash() == oracle_hash(0x01, line));
    if (event.seq > 0) {
      CHECK(event.prev_hash == ledger.at(event.seq - 1).envelope_hash());
    }

    // Signing bytes cover exactly the five header fields, canonically.
    Json signed_doc = canonical_decode(event.signing_bytes());
    CHECK(canonical_encode(signed_doc) == event.signing_bytes());
    REQUIRE(signed_doc.size() == 5);
    CHECK(signed_doc.at("author_key") == event.author_key.hex());
    CHECK(signed_doc.at("prev_hash") == event.prev_hash.hex());
    CHECK(signed_doc.at("seq") == event.seq);
    CHECK(signed_doc.at("timestamp") == event.timestamp);
    CHECK(signed_doc.at("body") == body_to_json(event.body));

    // Serialization round trip preserves every byte.
    CHECK(LedgerEvent::from_json(canonical_decode(line)).canonical_bytes() == line);
  }
}

TEST_CASE("verify_chain accepts the fixture in every execution mode") {
  SignatureCache cache;
  for (ExecMode mode : {ExecMode::Serial, ExecMode::Parallel}) {
    CHECK(verify_chain(fixture().ledger, mode).ok);
    CHECK(verify_chain(fixture_lines(), mode).ok);
    CHECK(verify_chain(fixture_lines(), mode, &cache).ok);
  }
  CHECK(verify_chain(std::vector<std::string>{}).ok);  // empty chain is valid
}

TEST_CASE("editing a body field is caught as an event_id mismatch") {
  auto lines = fixture_lines();
  const std::string before = "Ion transport in doped membranes";
  const std::string after = "Ion transport in doped Membranes";
  auto pos = lines[6].find(before);
  REQUIRE(pos != std::string::npos);
  lines[6].replace(pos, before.size(), after);

  VerifyReport report = verify_chain(lines);
  REQUIRE(!report.ok);
  CHECK(report.failure->seq == 6);
  CHECK(report.failure->reason == "event_id mismatch");
}

TEST_CASE("equivalent but non-canonical bytes are rejected") {
  auto lines = fixture_lines();
  auto pos = lines[3].find("\":");
  REQUIRE(pos != std::string::npos);
  lines[3].insert(pos + 2, " ");  // parses identically, different bytes

  VerifyReport report = verify_chain(lines);
  REQUIRE(!report.ok);
  CHECK(report.failure->seq == 3);
  CHECK(report.failure->reason == "stored bytes are not the canonical encoding of the envelope");
}

TEST_CASE("any single flipped bit fails verification at the tampered line") {
  const auto original = fixture_lines();
  std::mt19937 rng(20240802);
  SignatureCache cache;  // shared across trials, as the CLI would use it
  for (int trial = 0; trial < 100; ++trial) {
    auto lines = original;
    std::size_t k = rng() % lines.size();
    std::size_t byte = rng() % lines[k].size();
    lines[k][byte] = static_cast<char>(lines[k][byte] ^ (1u << (rng() % 8)));

    VerifyReport report = verify_chain(lines, ExecMode::Parallel, &cache);
    REQUIRE(!report.ok);
    CHECK(report.failure->seq == k);
  }
}

TEST_CASE("re-submitting an identical body trips event id uniqueness") {
  Ledger copy = fixture().ledger;
  copy.append(copy.at(17).body, fixture().keys.at("alice"), fixture().ids.at("alice"), 2000);
  VerifyReport report = verify_chain(copy);
  REQUIRE(!report.ok);
  CHECK(report.failure->seq == 42);
  CHECK(report.failure->reason == "duplicate event_id (already at seq 17)");
}

TEST_CASE("signers must be registered at a strictly earlier seq") {
  std::array<std::uint8_t, 32> seed;
  seed.fill(0x77);
  auto [fresh_sk, fresh] = generate_identity(std::span<const std::uint8_t>(seed), 2000);

  SUBCASE("an unregistered author is rejected") {
    Ledger copy = fixture().ledger;
    CommentaryEvent body;
    body.target = fixture().names.at("C1");
    body.modality = "endorsement";
    body.text_hash = hash_content("unregistered commentary");
    body.tau = 2000;
    copy.append(body, fresh_sk, fresh.key_id, 2000);
    VerifyReport report = verify_chain(copy);
    REQUIRE(!report.ok);
    CHECK(report.failure->seq == 42);
    CHECK(report.failure->reason == "unknown author_key (no earlier identity registration)");
  }

  SUBCASE("identity registrations must be self-signed") {
    Ledger copy = fixture().ledger;
    IdentityRegistration body{fresh.public_key, kSignatureScheme, 2000};
    copy.append(body, fixture().keys.at("alice"), fixture().ids.at("alice"), 2000);
    VerifyReport report = verify_chain(copy);
    REQUIRE(!report.ok);
    CHECK(report.failure->seq == 42);
    CHECK(report.failure->reason == "identity registration must be signed by the registered key");
  }

  SUBCASE("registration later in the chain does not authorize earlier events") {
    ArtifactRegistration artifact;
    artifact.artifact_hash = hash_content("early artifact");
    artifact.lineage_id = artifact.artifact_hash;
    artifact.title = "posted before its author registered";
    artifact.created_at = 1;
    LedgerEvent first = make_signed_event(artifact, fresh_sk, fresh.key_id, 0,
                                          ContentHash::zero(), 1);
    LedgerEvent second =
        make_signed_event(IdentityRegistration{fresh.public_key, kSignatureScheme, 2}, fresh_sk,
                          fresh.key_id, 1, first.envelope_hash(), 2);
    VerifyReport report =
        verify_chain(std::vector<std::string>{first.canonical_bytes(), second.canonical_bytes()});
    REQUIRE(!report.ok);
    CHECK(report.failure->seq == 0);
    CHECK(report.failure->reason == "unknown author_key (no earlier identity registration)");
  }
}

TEST_CASE("hash links are enforced, including the genesis predecessor") {
  SUBCASE("a correctly signed event with the wrong prev_hash is rejected") {
    auto lines = fixture_lines();
    CommentaryEvent body;
    body.target = fixture().names.at("C1");
    body.modality = "endorsement";
    body.text_hash = hash_content("dangling commentary");
    body.tau = 2000;
    LedgerEvent stray = make_signed_event(body, fixture().keys.at("alice"),
                                          fixture().ids.at("alice"), 42,
                                          ContentHash::zero(), 2000);
    lines.push_back(stray.canonical_bytes());
    VerifyReport report = verify_chain(lines);
    REQUIRE(!report.ok);
    CHECK(report.failure->seq == 42);
    CHECK(report.failure->reason == "prev_hash mismatch with preceding envelope");
  }

  SUBCASE("genesis must point at the all-zero hash") {
    std::array<std::uint8_t, 32> seed;
    seed.fill(0x78);
    auto [sk, rec] = generate_identity(std::span<const std::uint8_t>(seed), 1);
    LedgerEvent genesis =
        make_signed_event(IdentityRegistration{rec.public_key, kSignatureScheme, 1}, sk,
                          rec.key_id, 0, hash_content("not zero"), 1);
    VerifyReport report = verify_chain(std::vector<std::string>{genesis.canonical_bytes()});
    REQUIRE(!report.ok);
    CHECK(report.failure->seq == 0);
    CHECK(report.failure->reason == "genesis prev_hash must be all zero");
  }
}

TEST_CASE("seq numbers must be dense from zero") {
  auto lines = fixture_lines();
  lines.erase(lines.begin() + 5);  // line at index 5 now claims seq 6
  VerifyReport report = verify_chain(lines);
  REQUIRE(!report.ok);
  CHECK(report.failure->seq == 5);
  CHECK(report.failure->reason == "seq mismatch: envelope says 6");
}

TEST_CASE("append_envelope only extends the current head") {
  Ledger ledger;
  std::array<std::uint8_t, 32> seed;
  seed.fill(0x79);
  auto [sk, rec] = generate_identity(std::span<const std::uint8_t>(seed), 1);
  LedgerEvent genesis =
      make_signed_event(IdentityRegistration{rec.public_key, kSignatureScheme, 1}, sk,
                        rec.key_id, 0, ContentHash::zero(), 1);
  ledger.append_envelope(genesis);
  CHECK(ledger.size() == 1);

  LedgerEvent wrong_seq = genesis;
  wrong_seq.seq = 5;
  CHECK(kind_of([&] { ledger.append_envelope(wrong_seq); }) == ErrorKind::Argument);

  LedgerEvent wrong_prev =
      make_signed_event(IdentityRegistration{rec.public_key, kSignatureScheme, 1}, sk,
                        rec.key_id, 1, ContentHash::zero(), 2);
  CHECK(kind_of([&] { ledger.append_envelope(wrong_prev); }) == ErrorKind::Argument);
}

TEST_CASE("chain files round-trip byte-identically") {
  auto dir = temp_dir("files");
  auto path = dir / "chain.jsonl";
  fixture().ledger.save(path);
  std::string first = read_file(path);

  Ledger loaded = Ledger::load(path);
  REQUIRE(loaded.size() == fixture().ledger.size());
  loaded.save(path);
  CHECK(read_file(path) == first);

  // Incremental appends produce the same bytes as a whole-file save.
  auto incremental = dir / "incremental.jsonl";
  for (const auto& event : fixture().ledger.events()) {
    Ledger::append_line(incremental, event);
  }
  CHECK(read_file(incremental) == first);

  // Blank lines are tolerated on load; malformed lines are not.
  std::ofstream(dir / "gaps.jsonl") << fixture().ledger.at(0).canonical_bytes() << "\n\n"
                                    << fixture().ledger.at(1).canonical_bytes() << "\n";
  CHECK(Ledger::load(dir / "gaps.jsonl").size() == 2);
  std::ofstream(dir / "bad.jsonl") << "{\"not\":\"an envelope\"}\n";
  CHECK(kind_of([&] { Ledger::load(dir / "bad.jsonl"); }) == ErrorKind::Encoding);
  CHECK(kind_of([&] { Ledger::load(dir / "absent.jsonl"); }) == ErrorKind::Io);

  std::filesystem::remove_all(dir);
}

TEST_CASE("verify_chain_file diagnoses tampered files in place") {
  auto dir = temp_dir("vfile");
  auto path = dir / "chain.jsonl";
  fixture().ledger.save(path);
  CHECK(verify_chain_file(path).ok);

  std::string contents = read_file(path);
  auto pos = contents.find("Ion transport");
  REQUIRE(pos != std::string::npos);
  contents[pos] = 'X';
  std::ofstream(path, std::ios::binary | std::ios::trunc) << contents;
  VerifyReport report = verify_chain_file(path);
  REQUIRE(!report.ok);
  CHECK(report.failure->seq == 6);

  CHECK(kind_of([&] { verify_chain_file(dir / "absent.jsonl"); }) == ErrorKind::Io);
  std::filesystem::remove_all(dir);
}

TEST_CASE("the signature cache memoizes successful checks only") {
  std::array<std::uint8_t, 32> seed;
  seed.fill(0x7a);
  auto [sk, rec] = generate_identity(std::span<const std::uint8_t>(seed), 0);
  const std::string message = "cacheable message";
  Signature sig = sign(message, sk);
  Signature bad = sig;
  bad.bytes[3] ^= 0x01;

  SignatureCache cache;
  CHECK(cache.verify(message, sig, rec.public_key));
  CHECK(cache.verify(message, sig, rec.public_key));
  CHECK(!cache.verify(message, bad, rec.public_key));
  CHECK(!cache.verify("different message", sig, rec.public_key));

  // Keyed form: the message is only materialized on a cache miss.
  ContentHash digest = hash_envelope(message);
  int calls = 0;
  auto provider = [&] {
    ++calls;
    return message;
  };
  CHECK(cache.verify_keyed(digest, sig, rec.public_key, provider));
  CHECK(calls == 1);
  CHECK(cache.verify_keyed(digest, sig, rec.public_key, provider));
  CHECK(calls == 1);  // served from cache, provider not re-invoked

  ContentHash other = hash_envelope("other line");
  CHECK(cache.verify_keyed(other, sig, rec.public_key, provider));
  CHECK(calls == 2);  // different digest is a distinct cache key

  CHECK(!cache.verify_keyed(digest, bad, rec.public_key, provider));
  CHECK(calls == 3);  // failures are never cached
  CHECK(!cache.verify_keyed(digest, bad, rec.public_key, provider));
  CHECK(calls == 4);
}

TEST_CASE("anchors commit to contiguous envelope ranges from seq zero") {
  const Ledger& ledger = fixture().ledger;
  AnchorRecord a = make_anchor(ledger, 0, 20, 5000);
  AnchorRecord b = make_anchor(ledger, 21, 41, 5001);

  // Roots recompute from envelope hashes via the independent Merkle fold.
  std::vector<ContentHash> leaves;
  for (std::uint64_t s = 0; s <= 20; ++s) leaves.push_back(ledger.at(s).envelope_hash());
  CHECK(a.merkle_root == build_merkle_root(leaves));

  AnchorLog log;
  log.append(a);
  log.append(b);
  CHECK(verify_anchors(ledger, log).ok);
  CHECK(verify_anchors(ledger, AnchorLog{}).ok);  // no anchors: nothing to refute

  SUBCASE("json and file round trips") {
    Json doc = a.to_json();
    AnchorRecord back = AnchorRecord::from_json(doc);
    CHECK(back.seq_from == a.seq_from);
    CHECK(back.seq_to == a.seq_to);
    CHECK(back.merkle_root == a.merkle_root);
    CHECK(back.anchored_at == a.anchored_at);

    auto dir = temp_dir("anchors");
    log.save(dir / "anchors.jsonl");
    std::string bytes = read_file(dir / "anchors.jsonl");
    AnchorLog reloaded = AnchorLog::load(dir / "anchors.jsonl");
    REQUIRE(reloaded.records().size() == 2);
    reloaded.save(dir / "anchors.jsonl");
    CHECK(read_file(dir / "anchors.jsonl") == bytes);

    AnchorLog incremental;
    incremental.append(a);
    AnchorLog::append_line(dir / "inc.jsonl", a);
    AnchorLog::append_line(dir / "inc.jsonl", b);
    CHECK(read_file(dir / "inc.jsonl") == bytes);
    std::filesystem::remove_all(dir);
  }

  SUBCASE("gaps, overlaps, ranges past the head, and bad roots are rejected") {
    AnchorLog late;
    late.append(b);  // starts at 21, not 0
    VerifyReport r1 = verify_anchors(ledger, late);
    REQUIRE(!r1.ok);
    CHECK(r1.failure->reason == "anchor ranges must be contiguous from seq 0");

    AnchorLog overlap;
    overlap.append(a);
    overlap.append(make_anchor(ledger, 20, 41, 5002));  // re-covers seq 20
    CHECK(!verify_anchors(ledger, overlap).ok);

    AnchorRecord runaway = a;
    runaway.seq_to = 99;
    AnchorLog over;
    over.append(runaway);
    VerifyReport r2 = verify_anchors(ledger, over);
    REQUIRE(!r2.ok);
    CHECK(r2.failure->reason == "anchor range exceeds the chain");

    AnchorRecord forged = a;
    forged.merkle_root.bytes[0] ^= 0x01;
    AnchorLog bad_root;
    bad_root.append(forged);
    bad_root.append(b);
    VerifyReport r3 = verify_anchors(ledger, bad_root);
    REQUIRE(!r3.ok);
    CHECK(r3.failure->seq == 0);
    CHECK(r3.failure->reason == "anchor merkle_root mismatch");

    CHECK(kind_of([&] { make_anchor(ledger, 5, 4, 5000); }) == ErrorKind::Argument);
    CHECK(kind_of([&] { make_anchor(ledger, 0, 42, 5000); }) == ErrorKind::Argument);
  }

  SUBCASE("inclusion proofs verify each envelope hash under its anchor") {
    for (std::uint64_t s = a.seq_from; s <= a.seq_to; ++s) {
      InclusionProof proof = anchor_inclusion_proof(ledger, a, s);
      CHECK(verify_inclusion(ledger.at(s).envelope_hash(), proof, a.merkle_root));
      CHECK(!verify_inclusion(ledger.at(s).envelope_hash(), proof, b.merkle_root));
    }
    CHECK(kind_of([&] { anchor_inclusion_proof(ledger, a, 21); }) == ErrorKind::Argument);
  }
}

TEST_CASE("repository lays out a directory and gates appends on validation") {
  auto dir = temp_dir("repo");
  auto repo_dir = dir / "ledger";
  Repository repo = Repository::init(repo_dir, testutil::fixture_config());

  CHECK(std::filesystem::exists(repo.config_path()));
  CHECK(std::filesystem::exists(repo.chain_path()));
  CHECK(std::filesystem::is_directory(repo.content_dir()));
  CHECK(std::filesystem::is_directory(repo.keys_dir()));
  CHECK(read_file(repo.config_path()) ==
        read_file(std::filesystem::path(SCHOLIA_FIXTURE_DIR) / "config.json"));
  CHECK(repo.load_ledger().empty());

  CHECK(kind_of([&] { Repository::init(repo_dir, testutil::fixture_config()); }) ==
        ErrorKind::Argument);
  GovernanceConfig broken = testutil::fixture_config();
  broken.epoch_seconds = 0;
  CHECK(kind_of([&] { Repository::init(dir / "other", broken); }) == ErrorKind::Config);
  CHECK(kind_of([&] { Repository::open(dir / "uninitialized"); }) == ErrorKind::Argument);

  Repository reopened = Repository::open(repo_dir);
  CHECK(reopened.config() == testutil::fixture_config());

  // Validated append path: registration first, then an artifact; an exact
  // re-registration is inadmissible and must not reach the file.
  std::array<std::uint8_t, 32> seed;
  seed.fill(0x7b);
  auto [sk, rec] = generate_identity(std::span<const std::uint8_t>(seed), 100);
  LedgerEvent e0 = reopened.append(IdentityRegistration{rec.public_key, kSignatureScheme, 100},
                                   sk, 100);
  CHECK(e0.seq == 0);
  CHECK(e0.author_key == rec.key_id);

  ArtifactRegistration artifact;
  artifact.artifact_hash = hash_content("repo artifact");
  artifact.lineage_id = artifact.artifact_hash;
  artifact.title = "repository smoke artifact";
  artifact.created_at = 100;
  LedgerEvent e1 = reopened.append(artifact, sk, 101);
  CHECK(e1.seq == 1);

  CHECK(kind_of([&] { reopened.append(artifact, sk, 102); }) == ErrorKind::Validation);
  CHECK(reopened.load_ledger().size() == 2);  // the rejected event left no trace
  CHECK(verify_chain_file(reopened.chain_path()).ok);

  std::array<std::uint8_t, 32> other_seed;
  other_seed.fill(0x7c);
  auto [stranger_sk, stranger] = generate_identity(std::span<const std::uint8_t>(other_seed), 0);
  CommentaryEvent comment;
  comment.target = artifact.artifact_hash;
  comment.modality = "endorsement";
  comment.text_hash = hash_content("unsigned-author comment");
  comment.tau = 103;
  CHECK(kind_of([&] { reopened.append(comment, stranger_sk, 103); }) == ErrorKind::Validation);

  SUBCASE("content store is addressed by content hash") {
    std::string blob = "stored artifact bytes";
    ContentHash id = reopened.store_content(blob);
    CHECK(id == oracle_hash(0x00, blob));
    CHECK(reopened.has_content(id));
    CHECK(reopened.content_path(id) == repo_dir / "content" / id.hex().substr(0, 2) / id.hex());
    auto loaded = reopened.load_content(id);
    CHECK(std::string(loaded.begin(), loaded.end()) == blob);
    CHECK(reopened.store_content(blob) == id);  // idempotent
    CHECK(!reopened.has_content(hash_content("never stored")));
    CHECK(kind_of([&] { reopened.load_content(hash_content("never stored")); }) ==
          ErrorKind::NotFound);
  }

  SUBCASE("anchor_head anchors exactly the unanchored suffix") {
    AnchorRecord first = reopened.anchor_head(500);
    CHECK(first.seq_from == 0);
    CHECK(first.seq_to == 1);
    CHECK(kind_of([&] { reopened.anchor_head(501); }) == ErrorKind::NotFound);

    ArtifactRegistration more;
    more.artifact_hash = hash_content("second repo artifact");
    more.lineage_id = more.artifact_hash;
    more.title = "anchored afterwards";
    more.created_at = 104;
    reopened.append(more, sk, 104);
    AnchorRecord second = reopened.anchor_head(502);
    CHECK(second.seq_from == 2);
    CHECK(second.seq_to == 2);
    CHECK(verify_anchors(reopened.load_ledger(), reopened.load_anchors()).ok);
  }

  std::filesystem::remove_all(dir);
}

TEST_CASE("resolve_ledger_dir prefers the flag, then the environment") {
  CHECK(resolve_ledger_dir("/explicit/dir") == std::filesystem::path("/explicit/dir"));
  setenv("SCHOLIA_LEDGER", "/from/env", 1);
  CHECK(resolve_ledger_dir("") == std::filesystem::path("/from/env"));
  CHECK(resolve_ledger_dir("/explicit/dir") == std::filesystem::path("/explicit/dir"));
  unsetenv("SCHOLIA_LEDGER");
  CHECK(resolve_ledger_dir("") == std::filesystem::path("."));
}
