#include "scholia/ledger.hpp"

#include <atomic>
#include <fstream>
#include <map>

#include "scholia/canonical.hpp"
#include "scholia/errors.hpp"

namespace scholia {

// ── Envelope ────────────────────────────────────────────────────────────

Json LedgerEvent::to_json() const {
  Json doc = Json::object();
  doc["event_id"] = event_id.hex();
  doc["seq"] = seq;
  doc["prev_hash"] = prev_hash.hex();
  doc["timestamp"] = timestamp;
  doc["author_key"] = author_key.hex();
  doc["signature"] = signature.hex();
  doc["body"] = body_to_json(body);
  return doc;
}

LedgerEvent LedgerEvent::from_json(const Json& doc) {
  if (!doc.is_object()) {
    throw_error(ErrorKind::Encoding, "envelope must be a JSON object");
  }
  static const char* kFields[] = {"event_id", "seq",       "prev_hash", "timestamp",
                                  "author_key", "signature", "body"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool known = false;
    for (const char* k : kFields) {
      if (it.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) throw_error(ErrorKind::Encoding, "unknown envelope field: " + it.key());
  }
  for (const char* k : kFields) {
    if (!doc.contains(k)) {
      throw_error(ErrorKind::Encoding, std::string("missing envelope field: ") + k);
    }
  }

  LedgerEvent event;
  try {
    event.event_id = ContentHash::from_hex(doc.at("event_id").get<std::string>());
    event.prev_hash = ContentHash::from_hex(doc.at("prev_hash").get<std::string>());
    event.author_key = ContentHash::from_hex(doc.at("author_key").get<std::string>());
    event.signature = Signature::from_hex(doc.at("signature").get<std::string>());
  } catch (const Json::exception&) {
    throw_error(ErrorKind::Encoding, "envelope hash/signature fields must be hex strings");
  } catch (const Error&) {
    throw_error(ErrorKind::Encoding, "envelope hash/signature fields malformed");
  }
  const Json& seq_v = doc.at("seq");
  if (!seq_v.is_number_unsigned() && !(seq_v.is_number_integer() && seq_v.get<std::int64_t>() >= 0)) {
    throw_error(ErrorKind::Encoding, "envelope seq must be a non-negative integer");
  }
  event.seq = seq_v.get<std::uint64_t>();
  const Json& ts_v = doc.at("timestamp");
  if (!ts_v.is_number_integer() && !ts_v.is_number_unsigned()) {
    throw_error(ErrorKind::Encoding, "envelope timestamp must be an integer");
  }
  event.timestamp = ts_v.get<std::int64_t>();
  event.body = body_from_json(doc.at("body"));
  return event;
}

std::string LedgerEvent::canonical_bytes() const { return canonical_encode(to_json()); }

std::string LedgerEvent::signing_bytes() const {
  Json doc = Json::object();
  doc["author_key"] = author_key.hex();
  doc["body"] = body_to_json(body);
  doc["prev_hash"] = prev_hash.hex();
  doc["seq"] = seq;
  doc["timestamp"] = timestamp;
  return canonical_encode(doc);
}

ContentHash LedgerEvent::envelope_hash() const { return hash_envelope(canonical_bytes()); }

// ── Signature cache ─────────────────────────────────────────────────────

bool SignatureCache::verify(std::span<const std::uint8_t> message, const Signature& signature,
                            const PublicKey& key) {
  std::vector<std::uint8_t> material;
  material.reserve(key.bytes.size() + signature.bytes.size() + message.size());
  material.insert(material.end(), key.bytes.begin(), key.bytes.end());
  material.insert(material.end(), signature.bytes.begin(), signature.bytes.end());
  material.insert(material.end(), message.begin(), message.end());
  ContentHash digest = sha256(material);
  std::string cache_key(digest.bytes.begin(), digest.bytes.end());

  {
    std::lock_guard lock(mutex_);
    if (verified_.count(cache_key)) return true;
  }
  if (!verify_signature(message, signature, key)) return false;
  {
    std::lock_guard lock(mutex_);
    if (verified_.size() >= max_entries_) verified_.clear();
    verified_.insert(std::move(cache_key));
  }
  return true;
}

bool SignatureCache::verify(std::string_view message, const Signature& signature,
                            const PublicKey& key) {
  return verify(std::span<const std::uint8_t>(
                    reinterpret_cast<const std::uint8_t*>(message.data()), message.size()),
                signature, key);
}

bool SignatureCache::verify_keyed(const ContentHash& message_digest, const Signature& signature,
                                  const PublicKey& key,
                                  const std::function<std::string()>& message) {
  std::array<std::uint8_t, 32 + 64 + 32> material;
  auto out = std::copy(key.bytes.begin(), key.bytes.end(), material.begin());
  out = std::copy(signature.bytes.begin(), signature.bytes.end(), out);
  std::copy(message_digest.bytes.begin(), message_digest.bytes.end(), out);
  ContentHash digest = sha256(material);
  std::string cache_key(digest.bytes.begin(), digest.bytes.end());

  {
    std::lock_guard lock(mutex_);
    if (verified_.count(cache_key)) return true;
  }
  if (!verify_signature(message(), signature, key)) return false;
  {
    std::lock_guard lock(mutex_);
    if (verified_.size() >= max_entries_) verified_.clear();
    verified_.insert(std::move(cache_key));
  }
  return true;
}

// ── Ledger ──────────────────────────────────────────────────────────────

const LedgerEvent& Ledger::at(std::uint64_t seq) const {
  if (seq >= events_.size()) {
    throw_error(ErrorKind::Argument, "event seq out of range: " + std::to_string(seq));
  }
  return events_[seq];
}

ContentHash Ledger::head_hash() const {
  return events_.empty() ? ContentHash::zero() : events_.back().envelope_hash();
}

const LedgerEvent& Ledger::append(EventBody body, const SecretKey& signer_key,
                                  const ContentHash& signer_id, std::int64_t timestamp) {
  LedgerEvent event;
  event.seq = events_.size();
  event.prev_hash = head_hash();
  event.timestamp = timestamp;
  event.author_key = signer_id;
  event.body = std::move(body);
  event.event_id = hash_content(canonical_encode(body_to_json(event.body)));
  event.signature = sign(event.signing_bytes(), signer_key);
  events_.push_back(std::move(event));
  return events_.back();
}

const LedgerEvent& Ledger::append_envelope(LedgerEvent event) {
  if (event.seq != events_.size()) {
    throw_error(ErrorKind::Argument, "envelope seq does not extend the ledger");
  }
  if (event.prev_hash != head_hash()) {
    throw_error(ErrorKind::Argument, "envelope prev_hash does not match the ledger head");
  }
  events_.push_back(std::move(event));
  return events_.back();
}

Ledger Ledger::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw_error(ErrorKind::Io, "cannot open chain file: " + path.string());
  }
  Ledger ledger;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      ledger.events_.push_back(LedgerEvent::from_json(canonical_decode(line)));
    } catch (const Error& e) {
      throw_error(ErrorKind::Encoding,
                  "chain line " + std::to_string(line_no) + ": " + e.what());
    }
    line_no++;
  }
  return ledger;
}

void Ledger::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw_error(ErrorKind::Io, "cannot open chain file for writing: " + path.string());
  }
  for (const auto& event : events_) {
    out << event.canonical_bytes() << "\n";
  }
  if (!out) {
    throw_error(ErrorKind::Io, "failed writing chain file: " + path.string());
  }
}

void Ledger::append_line(const std::filesystem::path& path, const LedgerEvent& event) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) {
    throw_error(ErrorKind::Io, "cannot open chain file for append: " + path.string());
  }
  out << event.canonical_bytes() << "\n";
  if (!out) {
    throw_error(ErrorKind::Io, "failed appending to chain file: " + path.string());
  }
}

// ── Verification ────────────────────────────────────────────────────────

namespace {

// Per-event check shared by serial and parallel paths. `key_of` maps an
// author key id to the public key registered at a strictly earlier seq (or
// embedded in the event itself for identity registrations).
struct ParsedEvent {
  LedgerEvent event;
  ContentHash envelope_hash;
};

std::optional<std::string> check_event(const std::vector<ParsedEvent>& parsed,
                                       std::span<const std::string> lines, std::size_t k,
                                       const std::map<ContentHash, std::pair<PublicKey, std::uint64_t>>& keys,
                                       SignatureCache* cache) {
  const LedgerEvent& event = parsed[k].event;
  if (parsed[k].event.canonical_bytes() != lines[k]) {
    return "stored bytes are not the canonical encoding of the envelope";
  }
  if (event.seq != k) {
    return "seq mismatch: envelope says " + std::to_string(event.seq);
  }
  ContentHash body_hash = hash_content(canonical_encode(body_to_json(event.body)));
  if (body_hash != event.event_id) {
    return "event_id mismatch";
  }

  const PublicKey* signer = nullptr;
  if (const auto* reg = std::get_if<IdentityRegistration>(&event.body)) {
    // Self-signed bootstrap: the envelope author must be the registered key.
    if (event.author_key != key_id_of(reg->public_key)) {
      return "identity registration must be signed by the registered key";
    }
    signer = &reg->public_key;
  } else {
    auto it = keys.find(event.author_key);
    if (it == keys.end() || it->second.second >= k) {
      return "unknown author_key (no earlier identity registration)";
    }
    signer = &it->second.first;
  }

  bool sig_ok = cache ? cache->verify_keyed(parsed[k].envelope_hash, event.signature, *signer,
                                            [&] { return event.signing_bytes(); })
                      : verify_signature(event.signing_bytes(), event.signature, *signer);
  if (!sig_ok) {
    return "signature invalid";
  }

  if (k == 0) {
    if (!event.prev_hash.is_zero()) return "genesis prev_hash must be all zero";
  } else if (event.prev_hash != parsed[k - 1].envelope_hash) {
    return "prev_hash mismatch with preceding envelope";
  }
  return std::nullopt;
}

}  // namespace

VerifyReport verify_chain(std::span<const std::string> lines, ExecMode mode,
                          SignatureCache* cache) {
  if (lines.empty()) return VerifyReport::success();

  std::vector<ParsedEvent> parsed;
  parsed.reserve(lines.size());
  // Registration index: key id -> (public key, seq of first registration).
  // Duplicate ids across distinct bodies are caught via event-id uniqueness;
  // duplicate registrations are rejected at validation time.
  std::map<ContentHash, std::pair<PublicKey, std::uint64_t>> keys;
  std::map<ContentHash, std::uint64_t> first_event_seq;

  // Single pass in chunks: parse, index, then check in parallel, reporting
  // the smallest failing seq. Stopping at the first failing chunk keeps a
  // tamper scan from paying for anything much past the damage.
  constexpr std::size_t kChunk = 64;
  for (std::size_t base = 0; base < lines.size(); base += kChunk) {
    std::size_t count = std::min(kChunk, lines.size() - base);

    // A malformed line is a failure candidate and caps how far checks reach.
    std::optional<ChainFailure> failure;
    for (std::size_t i = 0; i < count && !failure; i++) {
      std::size_t k = base + i;
      try {
        ParsedEvent p;
        p.event = LedgerEvent::from_json(canonical_decode(lines[k]));
        p.envelope_hash = hash_envelope(lines[k]);
        parsed.push_back(std::move(p));
      } catch (const Error& e) {
        failure = ChainFailure{k, std::string("malformed envelope: ") + e.what()};
      }
    }

    // Index before checking so registrations earlier in this chunk resolve;
    // check_event rejects any signer whose registration does not precede it.
    for (std::size_t k = base; k < parsed.size(); k++) {
      const auto& event = parsed[k].event;
      auto [it, fresh] = first_event_seq.emplace(event.event_id, k);
      if (!fresh && (!failure || k < failure->seq)) {
        failure = ChainFailure{k, "duplicate event_id (already at seq " +
                                      std::to_string(it->second) + ")"};
      }
      if (const auto* reg = std::get_if<IdentityRegistration>(&event.body)) {
        keys.emplace(key_id_of(reg->public_key), std::make_pair(reg->public_key, k));
      }
    }

    std::size_t checked = parsed.size() - base;
    std::vector<std::optional<std::string>> results(checked);
    parallel_for(checked, mode, [&](std::size_t i) {
      results[i] = check_event(parsed, lines, base + i, keys, cache);
    });
    for (std::size_t i = 0; i < checked; i++) {
      if (results[i] && (!failure || base + i < failure->seq)) {
        failure = ChainFailure{base + i, *results[i]};
        break;
      }
    }
    if (failure) return VerifyReport::fail(failure->seq, failure->reason);
  }
  return VerifyReport::success();
}

VerifyReport verify_chain(const Ledger& ledger, ExecMode mode, SignatureCache* cache) {
  std::vector<std::string> lines;
  lines.reserve(ledger.size());
  for (const auto& event : ledger.events()) lines.push_back(event.canonical_bytes());
  return verify_chain(lines, mode, cache);
}

VerifyReport verify_chain_file(const std::filesystem::path& path, ExecMode mode,
                               SignatureCache* cache) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw_error(ErrorKind::Io, "cannot open chain file: " + path.string());
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return verify_chain(lines, mode, cache);
}

// ── Anchors ─────────────────────────────────────────────────────────────

Json AnchorRecord::to_json() const {
  Json doc = Json::object();
  doc["seq_from"] = seq_from;
  doc["seq_to"] = seq_to;
  doc["merkle_root"] = merkle_root.hex();
  doc["anchored_at"] = anchored_at;
  return doc;
}

AnchorRecord AnchorRecord::from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("seq_from") || !doc.contains("seq_to") ||
      !doc.contains("merkle_root") || !doc.contains("anchored_at")) {
    throw_error(ErrorKind::Encoding, "malformed anchor record");
  }
  AnchorRecord record;
  record.seq_from = doc.at("seq_from").get<std::uint64_t>();
  record.seq_to = doc.at("seq_to").get<std::uint64_t>();
  try {
    record.merkle_root = ContentHash::from_hex(doc.at("merkle_root").get<std::string>());
  } catch (const Error&) {
    throw_error(ErrorKind::Encoding, "anchor merkle_root malformed");
  }
  record.anchored_at = doc.at("anchored_at").get<std::int64_t>();
  return record;
}

void AnchorLog::append(AnchorRecord record) { records_.push_back(std::move(record)); }

AnchorLog AnchorLog::load(const std::filesystem::path& path) {
  AnchorLog log;
  std::ifstream in(path, std::ios::binary);
  if (!in) return log;  // absent anchor log = no anchors yet
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    log.records_.push_back(AnchorRecord::from_json(canonical_decode(line)));
  }
  return log;
}

void AnchorLog::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw_error(ErrorKind::Io, "cannot open anchor log for writing: " + path.string());
  }
  for (const auto& record : records_) {
    out << canonical_encode(record.to_json()) << "\n";
  }
}

void AnchorLog::append_line(const std::filesystem::path& path, const AnchorRecord& record) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) {
    throw_error(ErrorKind::Io, "cannot open anchor log for append: " + path.string());
  }
  out << canonical_encode(record.to_json()) << "\n";
}

namespace {

std::vector<ContentHash> envelope_hash_range(const Ledger& ledger, std::uint64_t seq_from,
                                             std::uint64_t seq_to, ExecMode mode) {
  if (seq_from > seq_to || seq_to >= ledger.size()) {
    throw_error(ErrorKind::Argument, "anchor range out of bounds");
  }
  std::vector<ContentHash> leaves(seq_to - seq_from + 1);
  parallel_for(leaves.size(), mode, [&](std::size_t i) {
    leaves[i] = ledger.events()[seq_from + i].envelope_hash();
  });
  return leaves;
}

}  // namespace

AnchorRecord make_anchor(const Ledger& ledger, std::uint64_t seq_from, std::uint64_t seq_to,
                         std::int64_t anchored_at, ExecMode mode) {
  auto leaves = envelope_hash_range(ledger, seq_from, seq_to, mode);
  AnchorRecord record;
  record.seq_from = seq_from;
  record.seq_to = seq_to;
  record.merkle_root = build_merkle_root(leaves, mode);
  record.anchored_at = anchored_at;
  return record;
}

InclusionProof anchor_inclusion_proof(const Ledger& ledger, const AnchorRecord& anchor,
                                      std::uint64_t seq, ExecMode mode) {
  if (seq < anchor.seq_from || seq > anchor.seq_to) {
    throw_error(ErrorKind::Argument, "seq not covered by this anchor");
  }
  auto leaves = envelope_hash_range(ledger, anchor.seq_from, anchor.seq_to, mode);
  return MerkleTree::build(leaves, mode).proof(seq - anchor.seq_from);
}

VerifyReport verify_anchors(const Ledger& ledger, const AnchorLog& anchors, ExecMode mode) {
  std::uint64_t expected_from = 0;
  for (const auto& record : anchors.records()) {
    if (record.seq_from != expected_from) {
      return VerifyReport::fail(record.seq_from,
                                "anchor ranges must be contiguous from seq 0");
    }
    if (record.seq_to < record.seq_from || record.seq_to >= ledger.size()) {
      return VerifyReport::fail(record.seq_from, "anchor range exceeds the chain");
    }
    auto leaves = envelope_hash_range(ledger, record.seq_from, record.seq_to, mode);
    if (build_merkle_root(leaves, mode) != record.merkle_root) {
      return VerifyReport::fail(record.seq_from, "anchor merkle_root mismatch");
    }
    expected_from = record.seq_to + 1;
  }
  return VerifyReport::success();
}

}  // namespace scholia
