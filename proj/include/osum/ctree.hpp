#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "osum/qmatrix.hpp"
#include "osum/types.hpp"

namespace osum {

// Small fixed-width bitset over period indices.
class PeriodBits {
 public:
  PeriodBits() = default;
  explicit PeriodBits(std::size_t count) : words_((count + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const {
    return (words_[i / 64] >> (i % 64)) & std::uint64_t{1};
  }
  std::size_t word_count() const { return words_.size(); }

 private:
  std::vector<std::uint64_t> words_;
};

// Candidate buffer of the two-phase miner: a trie over extension edges. Each
// node stores its pattern's per-period utilities as computed so far, which
// periods those cover (`calculated`), which periods the pattern is on shelf
// in, and whether any period found it promising. Children are ordered with
// itemset extensions before sequence extensions, item ids ascending within
// each, which fixes the phase-2 traversal order.
class CTree {
 public:
  struct Node {
    ItemId item{0};
    bool s_edge{true};  // edge kind from the parent
    Pattern seq;
    PeriodBits on_shelf;
    PeriodBits calculated;
    bool is_promising{false};
    std::vector<Utility> utility;  // per period index
    Utility c_utility{0};
    std::map<std::pair<bool, ItemId>, std::unique_ptr<Node>> children;

    std::size_t bytes() const;
  };

  CTree(const PeriodAggregates& aggregates, const ShelfTable& shelf);

  // Inserts the path of `r` if absent and records pu(r, t). Idempotent for a
  // repeated identical registration; `promising` accumulates with OR.
  // Returns the node. Thread-compatible only under external serialization.
  Node& register_pattern(const Pattern& r, PeriodId t, Utility pu, bool promising);

  Node& root() { return root_; }
  const Node& root() const { return root_; }

  std::uint64_t nodes_created() const { return nodes_created_; }
  std::size_t bytes() const { return bytes_; }

  const PeriodAggregates& aggregates() const { return aggregates_; }

 private:
  Node& descend(const Pattern& r);
  Node& child_of(Node& parent, bool s_edge, ItemId item, const Pattern& seq_so_far);

  const PeriodAggregates& aggregates_;
  const ShelfTable& shelf_;
  Node root_;
  std::uint64_t nodes_created_{0};
  std::size_t bytes_{0};
};

// Closed-form verification filter: a promising node may skip the phase-2
// database scans when even crediting every unexamined on-shelf period with
// the largest utility a non-promising period can hide (threshold * ptsu)
// cannot lift the ratio to the threshold. Returns true when the node still
// needs exact verification.
bool arc_keep(const CTree::Node& node, const PeriodAggregates& aggregates, const Ratio& xi);

}  // namespace osum
