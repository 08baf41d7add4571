#include "scholia/graphs.hpp"

#include <algorithm>
#include <map>

#include "scholia/canonical.hpp"
#include "scholia/errors.hpp"

namespace scholia {

ContentHash live_version(const LedgerState& state, const ContentHash& lineage_id,
                         std::int64_t t) {
  auto it = state.lineages.find(lineage_id);
  if (it == state.lineages.end()) {
    throw_error(ErrorKind::Argument, "unknown lineage: " + lineage_id.hex());
  }
  const VersionNode* best = nullptr;
  for (const auto& hash : it->second.node_order) {
    const VersionNode& node = it->second.nodes.at(hash);
    if (node.retracted || node.tau > t) continue;
    if (best == nullptr || node.tau > best->tau ||
        (node.tau == best->tau && node.seq > best->seq)) {
      best = &node;
    }
  }
  if (best == nullptr) {
    throw_error(ErrorKind::NotFound,
                "no live version of lineage " + lineage_id.hex() + " at t=" + std::to_string(t));
  }
  return best->version_hash;
}

std::vector<AffectedArtifact> retraction_affected_set(const LedgerState& state,
                                                      const ContentHash& retracted_version,
                                                      std::int64_t t_retraction) {
  if (!state.knows_artifact(retracted_version)) {
    throw_error(ErrorKind::Argument, "unknown artifact: " + retracted_version.hex());
  }

  // Reverse adjacency: cited → [(citing, tau)].
  std::map<ContentHash, std::vector<std::pair<ContentHash, std::int64_t>>> reverse;
  for (const auto& citation : state.citations) {
    reverse[citation.payload.cited].emplace_back(citation.payload.citing, citation.payload.tau);
  }

  std::map<ContentHash, AffectedArtifact> affected;
  std::vector<ContentHash> frontier = {retracted_version};
  while (!frontier.empty()) {
    std::vector<ContentHash> next;
    for (const auto& current : frontier) {
      auto it = reverse.find(current);
      if (it == reverse.end()) continue;
      for (const auto& [citer, tau] : it->second) {
        bool direct_edge = (current == retracted_version);
        auto [entry, fresh] = affected.emplace(citer, AffectedArtifact{citer, false, false});
        if (direct_edge) {
          entry->second.direct = true;
          if (tau > t_retraction) entry->second.post_retraction_citation = true;
        }
        if (fresh) next.push_back(citer);
      }
    }
    frontier = std::move(next);
  }

  std::vector<AffectedArtifact> out;
  out.reserve(affected.size());
  for (const auto& [hash, info] : affected) out.push_back(info);  // map order = sorted by hash
  return out;
}

std::vector<TraceEntry> commentary_trace(const LedgerState& state, const ContentHash& artifact) {
  if (!state.knows_artifact(artifact)) {
    throw_error(ErrorKind::Argument, "unknown artifact: " + artifact.hex());
  }

  // Depth of each commentary relative to the artifact it ultimately
  // discusses. Targets always precede their commentary in the log, so depth
  // resolves in one forward pass over append order.
  std::map<ContentHash, std::pair<ContentHash, int>> resolved;  // event id → (root, depth)
  std::vector<TraceEntry> entries;
  for (const auto& event_id : state.commentary_order) {
    const CommentaryInfo& info = state.commentaries.at(event_id);
    ContentHash root;
    int depth = 0;
    if (state.knows_artifact(info.payload.target)) {
      root = info.payload.target;
      depth = 1;
    } else {
      auto parent = resolved.find(info.payload.target);
      if (parent == resolved.end()) continue;  // thread rooted at some other artifact
      root = parent->second.first;
      depth = parent->second.second + 1;
    }
    resolved.emplace(event_id, std::make_pair(root, depth));
    if (root == artifact) {
      entries.push_back(
          TraceEntry{event_id, info.payload.tau, info.author, info.payload.modality, depth});
    }
  }

  std::sort(entries.begin(), entries.end(), [](const TraceEntry& a, const TraceEntry& b) {
    if (a.tau != b.tau) return a.tau < b.tau;
    return a.event_id < b.event_id;
  });
  return entries;
}

std::set<std::string> reuse_set(const LedgerState& state, const ContentHash& artifact,
                                std::int64_t t) {
  std::set<std::string> members;
  for (const auto& citation : state.citations) {
    if (citation.payload.cited != artifact || citation.payload.tau > t) continue;
    const auto& kinds = reuse_citation_modalities();
    if (std::find(kinds.begin(), kinds.end(), citation.payload.modality) != kinds.end()) {
      members.insert(citation.payload.citing.hex());
    }
  }
  for (const auto& transfer : state.transfers) {
    if (transfer.payload.source == artifact && transfer.payload.tau <= t) {
      members.insert(transfer.event_id.hex());
    }
  }
  return members;
}

double reuse_rate(const LedgerState& state, const GovernanceConfig& config,
                  const ContentHash& artifact, std::int64_t t0, std::int64_t t1) {
  if (!state.knows_artifact(artifact)) {
    throw_error(ErrorKind::Argument, "unknown artifact: " + artifact.hex());
  }
  if (t1 <= t0) {
    throw_error(ErrorKind::Argument, "reuse_rate window requires t1 > t0");
  }
  double grown = static_cast<double>(reuse_set(state, artifact, t1).size()) -
                 static_cast<double>(reuse_set(state, artifact, t0).size());
  double epochs = static_cast<double>(t1 - t0) / static_cast<double>(config.epoch_seconds);
  return grown / epochs;
}

std::vector<std::vector<ContentHash>> fork_branches(const LedgerState& state,
                                                    const ContentHash& lineage_id) {
  auto it = state.lineages.find(lineage_id);
  if (it == state.lineages.end()) {
    throw_error(ErrorKind::Argument, "unknown lineage: " + lineage_id.hex());
  }
  const LineageInfo& lineage = it->second;

  std::map<ContentHash, std::vector<ContentHash>> children;
  for (const auto& hash : lineage.node_order) {
    const VersionNode& node = lineage.nodes.at(hash);
    if (node.parent) children[*node.parent].push_back(hash);
  }
  for (auto& [parent, kids] : children) {
    std::sort(kids.begin(), kids.end(), [&](const ContentHash& a, const ContentHash& b) {
      const VersionNode& na = lineage.nodes.at(a);
      const VersionNode& nb = lineage.nodes.at(b);
      if (na.tau != nb.tau) return na.tau < nb.tau;
      return a < b;
    });
  }

  std::vector<std::vector<ContentHash>> branches;
  std::vector<ContentHash> path;
  // Iterative DFS keeps path state explicit; lineage graphs are small.
  struct Frame {
    ContentHash node;
    std::size_t next_child = 0;
  };
  std::vector<Frame> stack = {{lineage.root, 0}};
  path.push_back(lineage.root);
  while (!stack.empty()) {
    Frame& frame = stack.back();
    auto kids = children.find(frame.node);
    if (kids == children.end() || kids->second.empty()) {
      branches.push_back(path);
      stack.pop_back();
      path.pop_back();
      continue;
    }
    if (frame.next_child < kids->second.size()) {
      ContentHash child = kids->second[frame.next_child++];
      stack.push_back({child, 0});
      path.push_back(child);
    } else {
      stack.pop_back();
      path.pop_back();
    }
  }
  return branches;
}

namespace {
std::string number_repr(double x) { return Json(x).dump(); }  // shortest round-trip
}  // namespace

std::string citation_graph_tsv(const LedgerState& state) {
  std::string out;
  for (const auto& citation : state.citations) {
    const CitationEvent& c = citation.payload;
    out += c.citing.hex();
    out += '\t';
    out += c.cited.hex();
    out += '\t';
    out += c.modality;
    out += '\t';
    out += number_repr(c.polarity);
    out += '\t';
    out += number_repr(c.integration_depth);
    out += '\t';
    out += std::to_string(c.tau);
    out += '\n';
  }
  return out;
}

std::string commentary_trace_tsv(const LedgerState& state, const ContentHash& artifact) {
  std::string out;
  for (const auto& entry : commentary_trace(state, artifact)) {
    out += entry.event_id.hex();
    out += '\t';
    out += std::to_string(entry.tau);
    out += '\t';
    out += entry.signer.hex();
    out += '\t';
    out += entry.modality;
    out += '\t';
    out += std::to_string(entry.meta_depth);
    out += '\n';
  }
  return out;
}

}  // namespace scholia
