#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "scholia/events.hpp"
#include "scholia/identity.hpp"
#include "scholia/ledger.hpp"
#include "scholia/state.hpp"

namespace scholia {

// Default ledger directory when no --ledger flag is given.
inline constexpr const char* kLedgerDirEnvVar = "SCHOLIA_LEDGER";

// Explicit value if non-empty, else $SCHOLIA_LEDGER, else ".".
std::filesystem::path resolve_ledger_dir(const std::string& flag_value);

// RAII advisory exclusive lock (flock) on a lock file; released on
// destruction. Blocks until acquired.
class FileLock {
public:
  explicit FileLock(const std::filesystem::path& path);
  ~FileLock();

  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  FileLock(FileLock&& other) noexcept;
  FileLock& operator=(FileLock&& other) noexcept;

private:
  int fd_ = -1;
};

// One ledger directory:
//   chain.jsonl    — the event chain, one canonical envelope per line
//   anchors.jsonl  — anchor log (absent until the first anchor)
//   config.json    — governance configuration (canonical encoding)
//   content/xx/<hash> — content-addressed blob store
//   keys/          — default home for generated key files
//   .lock          — advisory write lock
class Repository {
public:
  // Lays out a fresh directory. Throws Argument when one is already
  // initialized there, Config when the config is invalid.
  static Repository init(const std::filesystem::path& dir, const GovernanceConfig& config);

  // Opens an initialized directory (loads and re-validates the config).
  static Repository open(const std::filesystem::path& dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path chain_path() const { return dir_ / "chain.jsonl"; }
  std::filesystem::path anchors_path() const { return dir_ / "anchors.jsonl"; }
  std::filesystem::path config_path() const { return dir_ / "config.json"; }
  std::filesystem::path content_dir() const { return dir_ / "content"; }
  std::filesystem::path keys_dir() const { return dir_ / "keys"; }
  std::filesystem::path lock_path() const { return dir_ / ".lock"; }

  const GovernanceConfig& config() const { return config_; }

  // Strict parse of chain.jsonl; an absent file is an empty ledger.
  Ledger load_ledger() const;

  // Replayed state of the whole chain.
  LedgerState state() const;

  // The validated append path: under the write lock, replays the chain,
  // validates `body` against current state, signs, and appends exactly one
  // line. Throws Validation (with every violation) when inadmissible.
  LedgerEvent append(const EventBody& body, const SecretKey& signer_key, std::int64_t timestamp);

  // Content-addressed storage; id = hash_content(bytes), laid out as
  // content/<first two hex>/<full hex>. Storing existing content is a no-op.
  ContentHash store_content(std::span<const std::uint8_t> bytes);
  ContentHash store_content(std::string_view text);
  std::vector<std::uint8_t> load_content(const ContentHash& hash) const;  // NotFound when absent
  bool has_content(const ContentHash& hash) const;
  std::filesystem::path content_path(const ContentHash& hash) const;

  AnchorLog load_anchors() const;

  // Anchors every event past the last anchored seq, up to the head.
  // Throws NotFound when nothing new exists to anchor.
  AnchorRecord anchor_head(std::int64_t timestamp, ExecMode mode = ExecMode::Parallel);

private:
  Repository(std::filesystem::path dir, GovernanceConfig config);

  std::filesystem::path dir_;
  GovernanceConfig config_;
};

}  // namespace scholia
