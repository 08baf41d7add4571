#include "scholia/merkle.hpp"

#include "scholia/errors.hpp"

namespace scholia {

MerkleTree MerkleTree::build(std::span<const ContentHash> leaves, ExecMode mode) {
  if (leaves.empty()) {
    throw_error(ErrorKind::Argument, "cannot build a Merkle tree over zero leaves");
  }
  MerkleTree tree;
  tree.levels_.emplace_back(leaves.begin(), leaves.end());
  while (tree.levels_.back().size() > 1) {
    const auto& prev = tree.levels_.back();
    std::vector<ContentHash> next((prev.size() + 1) / 2);
    parallel_for(next.size(), mode, [&](std::size_t i) {
      const ContentHash& left = prev[2 * i];
      // Odd level: the lone last node pairs with a copy of itself.
      const ContentHash& right = (2 * i + 1 < prev.size()) ? prev[2 * i + 1] : prev[2 * i];
      next[i] = hash_merkle_node(left, right);
    });
    tree.levels_.push_back(std::move(next));
  }
  return tree;
}

InclusionProof MerkleTree::proof(std::size_t index) const {
  if (index >= leaf_count()) {
    throw_error(ErrorKind::Argument, "Merkle proof index out of range");
  }
  InclusionProof steps;
  std::size_t i = index;
  for (std::size_t level = 0; level + 1 < levels_.size(); level++) {
    const auto& nodes = levels_[level];
    std::size_t sibling = (i % 2 == 0) ? i + 1 : i - 1;
    if (sibling >= nodes.size()) sibling = i;  // duplicated last node
    steps.push_back(ProofStep{.sibling_on_left = (i % 2 == 1), .sibling = nodes[sibling]});
    i /= 2;
  }
  return steps;
}

ContentHash build_merkle_root(std::span<const ContentHash> leaves, ExecMode mode) {
  return MerkleTree::build(leaves, mode).root();
}

bool verify_inclusion(const ContentHash& leaf, const InclusionProof& proof,
                      const ContentHash& root) {
  ContentHash current = leaf;
  for (const auto& step : proof) {
    current = step.sibling_on_left ? hash_merkle_node(step.sibling, current)
                                   : hash_merkle_node(current, step.sibling);
  }
  return current == root;
}

}  // namespace scholia
