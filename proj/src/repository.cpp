#include "scholia/repository.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>

#include "scholia/errors.hpp"
#include "scholia/state.hpp"

namespace scholia {

namespace fs = std::filesystem;

std::filesystem::path resolve_ledger_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv(kLedgerDirEnvVar); env != nullptr && *env != '\0') {
    return env;
  }
  return ".";
}

// ── FileLock ────────────────────────────────────────────────────────────

FileLock::FileLock(const std::filesystem::path& path) {
  fd_ = ::open(path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
  if (fd_ < 0) throw_error(ErrorKind::Io, "cannot open lock file: " + path.string());
  if (::flock(fd_, LOCK_EX) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw_error(ErrorKind::Io, "cannot lock: " + path.string());
  }
}

FileLock::~FileLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

FileLock::FileLock(FileLock&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

FileLock& FileLock::operator=(FileLock&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

// ── Repository ──────────────────────────────────────────────────────────

Repository::Repository(std::filesystem::path dir, GovernanceConfig config)
    : dir_(std::move(dir)), config_(std::move(config)) {}

Repository Repository::init(const std::filesystem::path& dir, const GovernanceConfig& config) {
  validate_config(config);
  if (fs::exists(dir / "config.json")) {
    throw_error(ErrorKind::Argument, "already an initialized ledger directory: " + dir.string());
  }
  fs::create_directories(dir);
  fs::create_directories(dir / "content");
  fs::create_directories(dir / "keys");
  save_config(config, dir / "config.json");
  std::ofstream chain(dir / "chain.jsonl", std::ios::binary);  // empty chain
  if (!chain) throw_error(ErrorKind::Io, "cannot create chain file in " + dir.string());
  return Repository(dir, config);
}

Repository Repository::open(const std::filesystem::path& dir) {
  if (!fs::exists(dir / "config.json")) {
    throw_error(ErrorKind::Argument, "not an initialized ledger directory: " + dir.string());
  }
  return Repository(dir, load_config(dir / "config.json"));
}

Ledger Repository::load_ledger() const {
  if (!fs::exists(chain_path())) return Ledger{};
  return Ledger::load(chain_path());
}

LedgerState Repository::state() const { return replay(load_ledger()); }

LedgerEvent Repository::append(const EventBody& body, const SecretKey& signer_key,
                               std::int64_t timestamp) {
  FileLock lock(lock_path());

  Ledger ledger = load_ledger();
  LedgerState current = replay(ledger);

  ContentHash signer_id = key_id_of(public_key_of(signer_key));
  const LedgerEvent& event = ledger.append(body, signer_key, signer_id, timestamp);

  std::vector<std::string> violations = validate_event(current, event);
  if (!violations.empty()) {
    std::string joined;
    for (const std::string& v : violations) {
      if (!joined.empty()) joined += "; ";
      joined += v;
    }
    throw_error(ErrorKind::Validation, joined);
  }

  Ledger::append_line(chain_path(), event);
  return event;
}

ContentHash Repository::store_content(std::span<const std::uint8_t> bytes) {
  ContentHash id = hash_content(bytes);
  fs::path path = content_path(id);
  if (!fs::exists(path)) {
    fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
      std::ofstream file(tmp, std::ios::binary);
      if (!file) throw_error(ErrorKind::Io, "cannot write content: " + tmp.string());
      file.write(reinterpret_cast<const char*>(bytes.data()),
                 static_cast<std::streamsize>(bytes.size()));
      if (!file.good()) throw_error(ErrorKind::Io, "content write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
  }
  return id;
}

ContentHash Repository::store_content(std::string_view text) {
  return store_content(
      std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::vector<std::uint8_t> Repository::load_content(const ContentHash& hash) const {
  fs::path path = content_path(hash);
  std::ifstream file(path, std::ios::binary);
  if (!file) throw_error(ErrorKind::NotFound, "no stored content for " + hash.hex());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(file)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

bool Repository::has_content(const ContentHash& hash) const {
  return fs::exists(content_path(hash));
}

std::filesystem::path Repository::content_path(const ContentHash& hash) const {
  std::string hex = hash.hex();
  return content_dir() / hex.substr(0, 2) / hex;
}

AnchorLog Repository::load_anchors() const { return AnchorLog::load(anchors_path()); }

AnchorRecord Repository::anchor_head(std::int64_t timestamp, ExecMode mode) {
  FileLock lock(lock_path());

  Ledger ledger = load_ledger();
  AnchorLog anchors = load_anchors();

  std::uint64_t from = 0;
  if (!anchors.empty()) from = anchors.records().back().seq_to + 1;
  if (ledger.empty() || from >= ledger.size()) {
    throw_error(ErrorKind::NotFound, "no unanchored events");
  }

  AnchorRecord record = make_anchor(ledger, from, ledger.size() - 1, timestamp, mode);
  AnchorLog::append_line(anchors_path(), record);
  return record;
}

}  // namespace scholia
