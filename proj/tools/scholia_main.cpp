// scholia — command-line surface over the ledger, scoring, analysis, and
// simulation modules. All machine-readable output is JSON on stdout;
// human diagnostics go to stderr. Exit codes: 0 success, 1 verification or
// validation failure, 2 usage error.

#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scholia/analysis.hpp"
#include "scholia/canonical.hpp"
#include "scholia/errors.hpp"
#include "scholia/graphs.hpp"
#include "scholia/ledger.hpp"
#include "scholia/repository.hpp"
#include "scholia/scoring.hpp"
#include "scholia/simulate.hpp"
#include "scholia/state.hpp"

namespace {

using namespace scholia;

// Sentinel: flag not given → wall clock (timestamps are injectable for
// deterministic runs, real otherwise).
constexpr std::int64_t kUnsetTime = -1;

std::int64_t resolve_at(std::int64_t at) {
  return at == kUnsetTime ? static_cast<std::int64_t>(std::time(nullptr)) : at;
}

std::int64_t resolve_tau(std::int64_t tau, std::int64_t at) {
  return tau == kUnsetTime ? at : tau;
}

void emit(const Json& doc) { std::cout << canonical_encode(doc) << "\n"; }

ContentHash parse_hash(const std::string& hex, const char* what) {
  try {
    return ContentHash::from_hex(hex);
  } catch (const Error&) {
    throw_error(ErrorKind::Argument, std::string(what) + ": expected 64 hex chars, got \"" + hex +
                                         "\"");
  }
}

std::optional<ContentHash> parse_optional_hash(const std::string& hex, const char* what) {
  if (hex.empty()) return std::nullopt;
  return parse_hash(hex, what);
}

Claim parse_claim(const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw_error(ErrorKind::Argument, "claim is not valid JSON: " + text);
  return claim_from_json(doc);
}

std::vector<Claim> parse_claims(const std::vector<std::string>& args) {
  std::vector<Claim> claims;
  claims.reserve(args.size());
  for (const std::string& text : args) claims.push_back(parse_claim(text));
  return claims;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw_error(ErrorKind::Io, "cannot read file: " + path);
  return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(file)),
                                   std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw_error(ErrorKind::Io, "cannot open for writing: " + path);
  file << bytes;
  if (!file.good()) throw_error(ErrorKind::Io, "write failed: " + path);
}

Json appended_json(const LedgerEvent& event) {
  return Json{{"ok", true}, {"event_id", event.event_id.hex()}, {"seq", event.seq}};
}

// Options shared by every subcommand that appends a signed event.
struct SignerOptions {
  std::string key_path;
  std::int64_t at = kUnsetTime;

  void attach(CLI::App* cmd) {
    cmd->add_option("--key", key_path, "secret key file of the signer")->required();
    cmd->add_option("--at", at, "event timestamp (unix seconds; default: wall clock)");
  }
  SecretKey key() const { return read_secret_key(key_path); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scholia — append-only, content-addressed ledger for scholarly events"};
  app.require_subcommand(1);

  std::string ledger_flag;
  app.add_option("--ledger", ledger_flag,
                 "ledger directory (default: $SCHOLIA_LEDGER, then current directory)");

  // ── init ──
  auto* cmd_init = app.add_subcommand("init", "create a ledger directory");
  std::string init_config_path;
  cmd_init->add_option("--config", init_config_path, "governance config file (default: built-in)");

  // ── keygen ──
  auto* cmd_keygen = app.add_subcommand("keygen", "generate a keypair and register the identity");
  std::string keygen_name;
  std::string keygen_seed;
  std::int64_t keygen_at = kUnsetTime;
  cmd_keygen->add_option("--name", keygen_name, "basename for the key files")->required();
  cmd_keygen->add_option("--seed", keygen_seed, "32-byte hex seed for a deterministic keypair");
  cmd_keygen->add_option("--at", keygen_at, "registration timestamp");

  // ── attest ──
  auto* cmd_attest = app.add_subcommand("attest", "bind an attestation to an identity");
  SignerOptions attest_signer;
  attest_signer.attach(cmd_attest);
  std::string attest_subject;
  std::string attest_kind;
  std::string attest_payload;
  cmd_attest->add_option("--subject", attest_subject, "key id being attested")->required();
  cmd_attest->add_option("--kind", attest_kind, "claim kind")->required();
  cmd_attest->add_option("--payload-hash", attest_payload, "content hash of the evidence")
      ->required();

  // ── register ──
  auto* cmd_register = app.add_subcommand("register", "register an artifact");
  SignerOptions register_signer;
  register_signer.attach(cmd_register);
  std::string register_title;
  std::vector<std::string> register_tags;
  std::vector<std::string> register_claims;
  std::string register_content;
  std::string register_hash;
  std::string register_lineage;
  std::string register_data_hash;
  std::string register_protocol_hash;
  std::int64_t register_created = kUnsetTime;
  cmd_register->add_option("--title", register_title, "artifact title")->required();
  cmd_register->add_option("--tag", register_tags, "domain tag (repeatable)");
  cmd_register->add_option("--claim", register_claims, "claim as JSON (repeatable)");
  cmd_register->add_option("--content", register_content,
                           "file whose bytes define the artifact hash (stored)");
  cmd_register->add_option("--artifact-hash", register_hash, "explicit artifact hash");
  cmd_register->add_option("--lineage", register_lineage,
                           "lineage id (default: the artifact hash — starts a lineage)");
  cmd_register->add_option("--data-hash", register_data_hash, "dataset content hash");
  cmd_register->add_option("--protocol-hash", register_protocol_hash, "protocol content hash");
  cmd_register->add_option("--created-at", register_created,
                           "declared creation time (default: --at)");

  // ── comment ──
  auto* cmd_comment = app.add_subcommand("comment", "comment on an artifact or a commentary");
  SignerOptions comment_signer;
  comment_signer.attach(cmd_comment);
  std::string comment_target;
  std::string comment_modality;
  std::vector<std::string> comment_claims;
  std::string comment_text;
  std::string comment_text_hash;
  std::int64_t comment_tau = kUnsetTime;
  cmd_comment->add_option("--target", comment_target, "artifact hash or commentary event id")
      ->required();
  cmd_comment->add_option("--modality", comment_modality, "commentary modality")->required();
  cmd_comment->add_option("--claim", comment_claims, "claim as JSON (repeatable)");
  cmd_comment->add_option("--text", comment_text, "commentary text (stored, hash recorded)");
  cmd_comment->add_option("--text-hash", comment_text_hash, "explicit text hash");
  cmd_comment->add_option("--tau", comment_tau, "declared event time (default: --at)");

  // ── cite ──
  auto* cmd_cite = app.add_subcommand("cite", "add a typed citation edge");
  SignerOptions cite_signer;
  cite_signer.attach(cmd_cite);
  std::string cite_citing;
  std::string cite_cited;
  std::string cite_modality;
  double cite_polarity = 0.0;
  double cite_depth = 0.0;
  std::int64_t cite_tau = kUnsetTime;
  cmd_cite->add_option("--citing", cite_citing, "citing artifact hash")->required();
  cmd_cite->add_option("--cited", cite_cited, "cited artifact hash")->required();
  cmd_cite->add_option("--modality", cite_modality, "citation modality")->required();
  cmd_cite->add_option("--polarity", cite_polarity, "endorsement polarity in [-1,1]")->required();
  cmd_cite->add_option("--depth", cite_depth, "integration depth in [0,1]")->required();
  cmd_cite->add_option("--tau", cite_tau, "declared event time (default: --at)");

  // ── version ──
  auto* cmd_version = app.add_subcommand("version", "attach a registered artifact as a version");
  SignerOptions version_signer;
  version_signer.attach(cmd_version);
  std::string version_lineage;
  std::string version_hash;
  std::string version_parent;
  std::string version_modification;
  std::int64_t version_tau = kUnsetTime;
  cmd_version->add_option("--lineage", version_lineage, "lineage id")->required();
  cmd_version->add_option("--version", version_hash, "artifact hash of the new version")
      ->required();
  cmd_version->add_option("--parent", version_parent, "parent version hash")->required();
  cmd_version->add_option("--modification", version_modification, "modification kind")->required();
  cmd_version->add_option("--tau", version_tau, "declared event time (default: --at)");

  // ── retract ──
  auto* cmd_retract = app.add_subcommand("retract", "retract a version");
  SignerOptions retract_signer;
  retract_signer.attach(cmd_retract);
  std::string retract_target;
  std::vector<std::string> retract_reasons;
  bool retract_voluntary = false;
  std::int64_t retract_tau = kUnsetTime;
  cmd_retract->add_option("--target", retract_target, "version hash to retract")->required();
  cmd_retract->add_option("--reason", retract_reasons, "reason code (repeatable)")->required();
  cmd_retract->add_flag("--voluntary", retract_voluntary, "author-initiated retraction");
  cmd_retract->add_option("--tau", retract_tau, "declared event time (default: --at)");

  // ── null ──
  auto* cmd_null = app.add_subcommand("null", "record a null result");
  SignerOptions null_signer;
  null_signer.attach(cmd_null);
  std::string null_hypothesis;
  std::string null_dataset;
  std::string null_method;
  double null_effect = 0.0;
  double null_confidence = 0.0;
  std::int64_t null_tau = kUnsetTime;
  cmd_null->add_option("--hypothesis", null_hypothesis, "hypothesis identifier")->required();
  cmd_null->add_option("--dataset", null_dataset, "dataset description")->required();
  cmd_null->add_option("--method", null_method, "method description")->required();
  cmd_null->add_option("--effect", null_effect, "measured effect size")->required();
  cmd_null->add_option("--confidence", null_confidence, "confidence in [0,1]")->required();
  cmd_null->add_option("--tau", null_tau, "declared event time (default: --at)");

  // ── replicate ──
  auto* cmd_replicate = app.add_subcommand("replicate", "record a replication outcome");
  SignerOptions replicate_signer;
  replicate_signer.attach(cmd_replicate);
  std::string replicate_target;
  std::string replicate_variant;
  double replicate_congruence = 0.0;
  std::int64_t replicate_tau = kUnsetTime;
  cmd_replicate->add_option("--target", replicate_target, "replicated artifact hash")->required();
  cmd_replicate->add_option("--dataset-variant", replicate_variant, "dataset variant description")
      ->required();
  cmd_replicate->add_option("--congruence", replicate_congruence, "result congruence in [0,1]")
      ->required();
  cmd_replicate->add_option("--tau", replicate_tau, "declared event time (default: --at)");

  // ── transfer ──
  auto* cmd_transfer = app.add_subcommand("transfer", "record a cross-domain use");
  SignerOptions transfer_signer;
  transfer_signer.attach(cmd_transfer);
  std::string transfer_source;
  std::string transfer_domain;
  std::string transfer_dataset;
  std::string transfer_protocol;
  std::string transfer_claim;
  std::int64_t transfer_tau = kUnsetTime;
  cmd_transfer->add_option("--source", transfer_source, "source artifact hash")->required();
  cmd_transfer->add_option("--domain", transfer_domain, "new domain")->required();
  cmd_transfer->add_option("--dataset", transfer_dataset, "dataset used")->required();
  cmd_transfer->add_option("--protocol", transfer_protocol, "protocol used")->required();
  cmd_transfer->add_option("--claim", transfer_claim, "resulting claim as JSON")->required();
  cmd_transfer->add_option("--tau", transfer_tau, "declared event time (default: --at)");

  // ── verify ──
  auto* cmd_verify = app.add_subcommand("verify", "verify chain integrity and anchors");
  bool verify_serial = false;
  cmd_verify->add_flag("--serial", verify_serial, "force the serial verification path");

  // ── score ──
  auto* cmd_score = app.add_subcommand("score", "score an identity, artifact, or commentary");
  std::string score_identity_arg;
  std::string score_artifact_arg;
  std::string score_commentary_arg;
  std::int64_t score_at = kUnsetTime;
  bool score_serial = false;
  cmd_score->add_option("--identity", score_identity_arg, "identity key id");
  cmd_score->add_option("--artifact", score_artifact_arg, "artifact hash");
  cmd_score->add_option("--commentary", score_commentary_arg, "commentary event id");
  cmd_score->add_option("--at", score_at, "evaluation time (default: wall clock)");
  cmd_score->add_flag("--serial", score_serial, "force the serial compute path");

  // ── analyze ──
  auto* cmd_analyze = app.add_subcommand("analyze", "run a detection operator");
  std::string analyze_operator;
  std::string analyze_a;
  std::string analyze_b;
  std::string analyze_artifact;
  std::string analyze_out;
  bool analyze_serial = false;
  cmd_analyze
      ->add_option("--operator", analyze_operator, "contradiction | overlap | novelty | delta")
      ->required();
  cmd_analyze->add_option("--a", analyze_a, "first artifact hash (pair operators)");
  cmd_analyze->add_option("--b", analyze_b, "second artifact hash (pair operators)");
  cmd_analyze->add_option("--artifact", analyze_artifact, "artifact hash (novelty)");
  cmd_analyze->add_option("--out", analyze_out, "write the JSONL record here instead of stdout");
  cmd_analyze->add_flag("--serial", analyze_serial, "force the serial compute path");

  // ── simulate ──
  auto* cmd_simulate = app.add_subcommand("simulate", "run an incentive-dynamics scenario");
  std::string simulate_scenario;
  std::string simulate_out;
  std::int64_t simulate_seed = kUnsetTime;
  cmd_simulate->add_option("--scenario", simulate_scenario, "scenario config JSON file")
      ->required();
  cmd_simulate->add_option("--out", simulate_out, "write the per-epoch CSV here");
  cmd_simulate->add_option("--seed", simulate_seed, "override the scenario seed");

  // ── export ──
  auto* cmd_export = app.add_subcommand("export", "export scores, the citation graph, or a trace");
  std::string export_kind;
  std::string export_out;
  std::string export_artifact;
  std::int64_t export_at = kUnsetTime;
  bool export_serial = false;
  cmd_export->add_option("--kind", export_kind, "scores | graph | trace")->required();
  cmd_export->add_option("--out", export_out, "output file")->required();
  cmd_export->add_option("--artifact", export_artifact, "artifact hash (trace)");
  cmd_export->add_option("--at", export_at, "evaluation time for scores (default: wall clock)");
  cmd_export->add_flag("--serial", export_serial, "force the serial compute path");

  // ── anchor ──
  auto* cmd_anchor = app.add_subcommand("anchor", "anchor all unanchored events");
  std::int64_t anchor_at = kUnsetTime;
  cmd_anchor->add_option("--at", anchor_at, "anchor timestamp (default: wall clock)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return 2;
  }

  try {
    std::filesystem::path dir = resolve_ledger_dir(ledger_flag);

    if (app.got_subcommand(cmd_init)) {
      GovernanceConfig config = init_config_path.empty() ? GovernanceConfig::defaults()
                                                         : load_config(init_config_path);
      Repository repo = Repository::init(dir, config);
      emit(Json{{"ok", true},
                {"dir", repo.dir().string()},
                {"config_hash", config.hash_of().hex()}});
      return 0;
    }

    if (app.got_subcommand(cmd_keygen)) {
      Repository repo = Repository::open(dir);
      std::int64_t at = resolve_at(keygen_at);

      std::optional<std::vector<std::uint8_t>> seed_bytes;
      if (!keygen_seed.empty()) {
        seed_bytes = from_hex(keygen_seed);
        if (seed_bytes->size() != 32) {
          throw_error(ErrorKind::Argument, "--seed must be exactly 32 bytes of hex");
        }
      }
      auto [secret, record] = generate_identity(
          seed_bytes ? std::optional<std::span<const std::uint8_t>>(*seed_bytes) : std::nullopt,
          at);

      std::filesystem::create_directories(repo.keys_dir());
      std::filesystem::path sk_path = repo.keys_dir() / (keygen_name + ".sk");
      std::filesystem::path pk_path = repo.keys_dir() / (keygen_name + ".pk");
      write_key_file(sk_path, secret.seed);
      write_key_file(pk_path, record.public_key.bytes);

      IdentityRegistration body{record.public_key, kSignatureScheme, at};
      LedgerEvent event = repo.append(body, secret, at);
      emit(Json{{"ok", true},
                {"key_id", record.key_id.hex()},
                {"public_key", to_hex(record.public_key.bytes)},
                {"secret_key_file", sk_path.string()},
                {"public_key_file", pk_path.string()},
                {"event_id", event.event_id.hex()},
                {"seq", event.seq}});
      return 0;
    }

    if (app.got_subcommand(cmd_attest)) {
      Repository repo = Repository::open(dir);
      std::int64_t at = resolve_at(attest_signer.at);
      SecretKey key = attest_signer.key();

      AttestationEvent body;
      body.subject_key = parse_hash(attest_subject, "--subject");
      body.claim_kind = attest_kind;
      body.payload_hash = parse_hash(attest_payload, "--payload-hash");
      body.signature = sign(
          attestation_signing_bytes(body.subject_key, body.claim_kind, body.payload_hash), key);
      emit(appended_json(repo.append(body, key, at)));
      return 0;
    }

    if (app.got_subcommand(cmd_register)) {
      Repository repo = Repository::open(dir);
      std::int64_t at = resolve_at(register_signer.at);

      if (register_content.empty() == register_hash.empty()) {
        throw_error(ErrorKind::Argument, "give exactly one of --content or --artifact-hash");
      }
      ArtifactRegistration body;
      body.artifact_hash = register_content.empty()
                               ? parse_hash(register_hash, "--artifact-hash")
                               : repo.store_content(read_file_bytes(register_content));
      body.lineage_id = register_lineage.empty() ? body.artifact_hash
                                                 : parse_hash(register_lineage, "--lineage");
      body.title = register_title;
      body.domain_tags = register_tags;
      body.claims = parse_claims(register_claims);
      body.data_hash = parse_optional_hash(register_data_hash, "--data-hash");
      body.protocol_hash = parse_optional_hash(register_protocol_hash, "--protocol-hash");
      body.created_at = register_created == kUnsetTime ? at : register_created;

      LedgerEvent event = repo.append(body, register_signer.key(), at);
      Json out = appended_json(event);
      out["artifact_hash"] = body.artifact_hash.hex();
      out["lineage_id"] = body.lineage_id.hex();
      emit(out);
      return 0;
    }

    if (app.got_subcommand(cmd_comment)) {
      Repository repo = Repository::open(dir);
      std::int64_t at = resolve_at(comment_signer.at);

      if (comment_text.empty() == comment_text_hash.empty()) {
        throw_error(ErrorKind::Argument, "give exactly one of --text or --text-hash");
      }
      CommentaryEvent body;
      body.target = parse_hash(comment_target, "--target");
      body.modality = comment_modality;
      body.claims = parse_claims(comment_claims);
      body.text_hash = comment_text.empty() ? parse_hash(comment_text_hash, "--text-hash")
                                            : repo.store_content(comment_text);
      body.tau = resolve_tau(comment_tau, at);

      LedgerEvent event = repo.append(body, comment_signer.key(), at);
      Json out = appended_json(event);
      out["text_hash"] = body.text_hash.hex();
      emit(out);
      return 0;
    }

    if (app.got_subcommand(cmd_cite)) {
      Repository repo = Repository::open(dir);
      std::int64_t at = resolve_at(cite_signer.at);
      CitationEvent body;
      body.citing = parse_hash(cite_citing, "--citing");
      body.cited = parse_hash(cite_cited, "--cited");
      body.modality = cite_modality;
      body.polarity = cite_polarity;
      body.integration_depth = cite_depth;
      body.tau = resolve_tau(cite_tau, at);
      emit(appended_json(repo.append(body, cite_signer.key(), at)));
      return 0;
    }

    if (app.got_subcommand(cmd_version)) {
      Repository repo = Repository::open(dir);
      std::int64_t at = resolve_at(version_signer.at);
      VersionEvent body;
      body.lineage_id = parse_hash(version_lineage, "--lineage");
      body.version_hash = parse_hash(version_hash, "--version");
      body.parent_version = parse_hash(version_parent, "--parent");
      body.modification = version_modification;
      body.tau = resolve_tau(version_tau, at);
      emit(appended_json(repo.append(body, version_signer.key(), at)));
      return 0;
    }

    if (app.got_subcommand(cmd_retract)) {
      Repository repo = Repository::open(dir);
      std::int64_t at = resolve_at(retract_signer.at);
      RetractionEvent body;
      body.target_version = parse_hash(retract_target, "--target");
      body.reasons = retract_reasons;
      body.voluntary = retract_voluntary;
      body.tau = resolve_tau(retract_tau, at);
      emit(appended_json(repo.append(body, retract_signer.key(), at)));
      return 0;
    }

    if (app.got_subcommand(cmd_null)) {
      Repository repo = Repository::open(dir);
      std::int64_t at = resolve_at(null_signer.at);
      NullResultEvent body;
      body.hypothesis_id = null_hypothesis;
      body.dataset_desc = null_dataset;
      body.method_desc = null_method;
      body.effect_size = null_effect;
      body.confidence = null_confidence;
      body.tau = resolve_tau(null_tau, at);
      emit(appended_json(repo.append(body, null_signer.key(), at)));
      return 0;
    }

    if (app.got_subcommand(cmd_replicate)) {
      Repository repo = Repository::open(dir);
      std::int64_t at = resolve_at(replicate_signer.at);
      ReplicationEvent body;
      body.target = parse_hash(replicate_target, "--target");
      body.dataset_variant = replicate_variant;
      body.congruence = replicate_congruence;
      body.tau = resolve_tau(replicate_tau, at);
      emit(appended_json(repo.append(body, replicate_signer.key(), at)));
      return 0;
    }

    if (app.got_subcommand(cmd_transfer)) {
      Repository repo = Repository::open(dir);
      std::int64_t at = resolve_at(transfer_signer.at);
      TransferUseEvent body;
      body.source = parse_hash(transfer_source, "--source");
      body.new_domain = transfer_domain;
      body.dataset = transfer_dataset;
      body.protocol = transfer_protocol;
      body.resulting_claim = parse_claim(transfer_claim);
      body.tau = resolve_tau(transfer_tau, at);
      emit(appended_json(repo.append(body, transfer_signer.key(), at)));
      return 0;
    }

    if (app.got_subcommand(cmd_verify)) {
      Repository repo = Repository::open(dir);
      ExecMode mode = verify_serial ? ExecMode::Serial : ExecMode::Parallel;

      VerifyReport report = verify_chain_file(repo.chain_path(), mode);
      if (report.ok && std::filesystem::exists(repo.anchors_path())) {
        report = verify_anchors(repo.load_ledger(), repo.load_anchors(), mode);
      }
      if (!report.ok) {
        emit(Json{{"ok", false},
                  {"seq", report.failure->seq},
                  {"reason", report.failure->reason}});
        std::cerr << "verification failed at seq " << report.failure->seq << ": "
                  << report.failure->reason << "\n";
        return 1;
      }
      emit(Json{{"ok", true}, {"events", repo.load_ledger().size()}});
      return 0;
    }

    if (app.got_subcommand(cmd_score)) {
      Repository repo = Repository::open(dir);
      LedgerState state = repo.state();
      std::int64_t at = resolve_at(score_at);
      ExecMode mode = score_serial ? ExecMode::Serial : ExecMode::Parallel;

      int given = (!score_identity_arg.empty()) + (!score_artifact_arg.empty()) +
                  (!score_commentary_arg.empty());
      if (given != 1) {
        throw_error(ErrorKind::Argument,
                    "give exactly one of --identity, --artifact, --commentary");
      }
      ScoreReport report;
      if (!score_identity_arg.empty()) {
        report = score_identity(state, repo.config(), parse_hash(score_identity_arg, "--identity"),
                                at, mode);
      } else if (!score_artifact_arg.empty()) {
        report = score_artifact(state, repo.config(), parse_hash(score_artifact_arg, "--artifact"),
                                at, mode);
      } else {
        report = score_commentary(state, repo.config(),
                                  parse_hash(score_commentary_arg, "--commentary"), at);
      }
      emit(report.to_json());
      return 0;
    }

    if (app.got_subcommand(cmd_analyze)) {
      Repository repo = Repository::open(dir);
      LedgerState state = repo.state();
      const GovernanceConfig& config = repo.config();
      ExecMode mode = analyze_serial ? ExecMode::Serial : ExecMode::Parallel;

      auto pair_payloads = [&](const char* op) {
        if (analyze_a.empty() || analyze_b.empty()) {
          throw_error(ErrorKind::Argument, std::string(op) + " needs --a and --b");
        }
        ContentHash a = parse_hash(analyze_a, "--a");
        ContentHash b = parse_hash(analyze_b, "--b");
        if (!state.knows_artifact(a)) throw_error(ErrorKind::Argument, "unknown artifact: " + analyze_a);
        if (!state.knows_artifact(b)) throw_error(ErrorKind::Argument, "unknown artifact: " + analyze_b);
        return std::pair(a, b);
      };

      Json record;
      if (analyze_operator == "contradiction") {
        auto [a, b] = pair_payloads("contradiction");
        ContradictionResult result = contradiction_flag(state.artifacts.at(a).payload.claims,
                                                        state.artifacts.at(b).payload.claims);
        record = Json{{"pair", Json::array({a.hex(), b.hex()})},
                      {"operator", "contradiction"},
                      {"value", result.flag ? 1 : 0},
                      {"config_hash", config.hash_of().hex()}};
      } else if (analyze_operator == "overlap") {
        auto [a, b] = pair_payloads("overlap");
        OverlapResult result = overlap_flag(state, config, a, b);
        record = Json{{"pair", Json::array({a.hex(), b.hex()})},
                      {"operator", "overlap"},
                      {"value", result.flag ? 1 : 0},
                      {"config_hash", config.hash_of().hex()}};
      } else if (analyze_operator == "novelty") {
        if (analyze_artifact.empty()) throw_error(ErrorKind::Argument, "novelty needs --artifact");
        ContentHash artifact = parse_hash(analyze_artifact, "--artifact");
        NoveltyBreakdown result = novelty(state, config, artifact, mode);
        record = Json{{"artifact", artifact.hex()},
                      {"operator", "novelty"},
                      {"value", result.value},
                      {"config_hash", config.hash_of().hex()}};
      } else if (analyze_operator == "delta") {
        auto [a, b] = pair_payloads("delta");
        DeltaClass klass =
            classify_delta(state.artifacts.at(a).payload, state.artifacts.at(b).payload);
        record = Json{{"pair", Json::array({a.hex(), b.hex()})},
                      {"operator", "delta"},
                      {"value", delta_class_name(klass)},
                      {"config_hash", config.hash_of().hex()}};
      } else {
        throw_error(ErrorKind::Argument, "unknown operator: " + analyze_operator);
      }

      std::string line = canonical_encode(record) + "\n";
      if (analyze_out.empty()) {
        std::cout << line;
      } else {
        write_file(analyze_out, line);
        emit(Json{{"ok", true}, {"out", analyze_out}});
      }
      return 0;
    }

    if (app.got_subcommand(cmd_simulate)) {
      Repository repo = Repository::open(dir);
      Json doc = Json::parse(std::ifstream(simulate_scenario), nullptr, false);
      if (doc.is_discarded()) {
        throw_error(ErrorKind::Encoding, "scenario file is not valid JSON: " + simulate_scenario);
      }
      ScenarioConfig scenario = ScenarioConfig::from_json(doc);
      if (simulate_seed != kUnsetTime) scenario.seed = static_cast<std::uint64_t>(simulate_seed);

      SimMetrics metrics = run_scenario(scenario, repo.config());
      Json out{{"ok", true},
               {"epochs", scenario.epochs},
               {"final_loss", metrics.loss.back()},
               {"final_p_m", metrics.mean_p_m.back()}};
      if (!simulate_out.empty()) {
        write_metrics_csv(metrics, simulate_out);
        out["out"] = simulate_out;
      }
      emit(out);
      return 0;
    }

    if (app.got_subcommand(cmd_export)) {
      Repository repo = Repository::open(dir);
      LedgerState state = repo.state();
      const GovernanceConfig& config = repo.config();
      ExecMode mode = export_serial ? ExecMode::Serial : ExecMode::Parallel;

      std::string bytes;
      if (export_kind == "scores") {
        std::int64_t at = resolve_at(export_at);
        Json identities = Json::array();
        for (const auto& [key_id, record] : state.identities) {
          identities.push_back(score_identity(state, config, key_id, at, mode).to_json());
        }
        Json artifacts = Json::array();
        for (const auto& [hash, info] : state.artifacts) {
          artifacts.push_back(score_artifact(state, config, hash, at, mode).to_json());
        }
        Json commentaries = Json::array();
        for (const ContentHash& id : state.commentary_order) {
          commentaries.push_back(score_commentary(state, config, id, at).to_json());
        }
        bytes = canonical_encode(Json{{"computed_at", at},
                                      {"config_hash", config.hash_of().hex()},
                                      {"identities", identities},
                                      {"artifacts", artifacts},
                                      {"commentaries", commentaries}}) +
                "\n";
      } else if (export_kind == "graph") {
        bytes = citation_graph_tsv(state);
      } else if (export_kind == "trace") {
        if (export_artifact.empty()) throw_error(ErrorKind::Argument, "trace needs --artifact");
        bytes = commentary_trace_tsv(state, parse_hash(export_artifact, "--artifact"));
      } else {
        throw_error(ErrorKind::Argument, "unknown export kind: " + export_kind);
      }

      write_file(export_out, bytes);
      emit(Json{{"ok", true}, {"out", export_out}, {"bytes", bytes.size()}});
      return 0;
    }

    if (app.got_subcommand(cmd_anchor)) {
      Repository repo = Repository::open(dir);
      AnchorRecord record = repo.anchor_head(resolve_at(anchor_at));
      Json out = record.to_json();
      out["ok"] = true;
      emit(out);
      return 0;
    }

    std::cerr << app.help() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    emit(Json{{"ok", false}, {"error", e.what()}});
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    emit(Json{{"ok", false}, {"error", e.what()}});
    return 1;
  }
}
