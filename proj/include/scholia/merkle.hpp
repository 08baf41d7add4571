#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scholia/hash.hpp"
#include "scholia/parallel.hpp"

namespace scholia {

// One step of an inclusion proof: the sibling digest and which side of the
// running hash it sits on.
struct ProofStep {
  bool sibling_on_left = false;  // true: parent = H(sibling ‖ current)
  ContentHash sibling;

  bool operator==(const ProofStep&) const = default;
};

using InclusionProof = std::vector<ProofStep>;

// Binary Merkle tree over a non-empty leaf sequence.
//
//   - interior node = sha256(0x02 ‖ left ‖ right)
//   - a level with an odd node count duplicates its last node
//   - a single leaf is its own root (no hashing)
class MerkleTree {
public:
  // Throws Argument on an empty leaf set.
  static MerkleTree build(std::span<const ContentHash> leaves,
                          ExecMode mode = ExecMode::Parallel);

  const ContentHash& root() const { return levels_.back().front(); }
  std::size_t leaf_count() const { return levels_.front().size(); }

  // Proof for the leaf at `index`; empty for a single-leaf tree.
  // Throws Argument when index is out of range.
  InclusionProof proof(std::size_t index) const;

private:
  // levels_[0] = leaves, levels_.back() = {root}
  std::vector<std::vector<ContentHash>> levels_;
};

// Root without keeping the intermediate levels around.
ContentHash build_merkle_root(std::span<const ContentHash> leaves,
                              ExecMode mode = ExecMode::Parallel);

// Folds the proof from `leaf` upward and compares against `root`.
bool verify_inclusion(const ContentHash& leaf, const InclusionProof& proof,
                      const ContentHash& root);

}  // namespace scholia
