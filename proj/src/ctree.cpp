#include "osum/ctree.hpp"

#include "osum/projection.hpp"

namespace osum {

std::size_t CTree::Node::bytes() const {
  std::size_t n = sizeof(Node);
  n += on_shelf.word_count() * sizeof(std::uint64_t) * 2;
  n += utility.size() * sizeof(Utility);
  for (const auto& ws : seq.itemsets) {
    n += sizeof(std::vector<ItemId>) + ws.size() * sizeof(ItemId);
  }
  // Map bookkeeping per child edge, counted at the parent.
  n += children.size() * (sizeof(void*) * 4 + sizeof(std::pair<bool, ItemId>));
  return n;
}

CTree::CTree(const PeriodAggregates& aggregates, const ShelfTable& shelf)
    : aggregates_(aggregates), shelf_(shelf) {
  root_.on_shelf = PeriodBits(aggregates.count());
  root_.calculated = PeriodBits(aggregates.count());
  root_.utility.assign(aggregates.count(), 0);
}

CTree::Node& CTree::child_of(Node& parent, bool s_edge, ItemId item, const Pattern& seq_so_far) {
  auto key = std::pair(s_edge, item);
  auto it = parent.children.find(key);
  if (it != parent.children.end()) return *it->second;

  auto node = std::make_unique<Node>();
  node->item = item;
  node->s_edge = s_edge;
  node->seq = seq_so_far;
  node->calculated = PeriodBits(aggregates_.count());
  node->utility.assign(aggregates_.count(), 0);
  node->on_shelf = PeriodBits(aggregates_.count());
  for (PeriodId t : on_shelf_periods(seq_so_far, shelf_)) {
    node->on_shelf.set(aggregates_.index_of(t));
  }
  ++nodes_created_;
  Node& ref = *node;
  parent.children.emplace(key, std::move(node));
  bytes_ += ref.bytes();
  return ref;
}

CTree::Node& CTree::descend(const Pattern& r) {
  Node* current = &root_;
  Pattern prefix;
  for (std::size_t w = 0; w < r.itemsets.size(); ++w) {
    for (std::size_t i = 0; i < r.itemsets[w].size(); ++i) {
      ItemId item = r.itemsets[w][i];
      bool s_edge = (i == 0);  // first item of an itemset opens it
      prefix = s_edge ? prefix.s_extended(item) : prefix.i_extended(item);
      current = &child_of(*current, s_edge, item, prefix);
    }
  }
  return *current;
}

CTree::Node& CTree::register_pattern(const Pattern& r, PeriodId t, Utility pu, bool promising) {
  Node& node = descend(r);
  std::size_t idx = aggregates_.index_of(t);
  if (!node.calculated.test(idx)) {
    node.calculated.set(idx);
    node.utility[idx] = pu;
    node.c_utility += pu;
  }
  node.is_promising = node.is_promising || promising;
  return node;
}

bool arc_keep(const CTree::Node& node, const PeriodAggregates& aggregates, const Ratio& xi) {
  // allowance = sum of ptsu over on-shelf periods not yet calculated;
  // denominator = sum of ptsu over all on-shelf periods.
  __int128 allowance = 0;
  __int128 denominator = 0;
  for (std::size_t i = 0; i < aggregates.count(); ++i) {
    if (!node.on_shelf.test(i)) continue;
    Utility p = aggregates.ptsu_at(i);
    denominator += p;
    if (!node.calculated.test(i)) allowance += p;
  }
  if (denominator == 0) return false;
  // Keep iff (c_utility + xi * allowance) / denominator >= xi, i.e.
  // c_utility * den + num * allowance >= num * denominator.
  return static_cast<__int128>(node.c_utility) * xi.den + static_cast<__int128>(xi.num) * allowance >=
         static_cast<__int128>(xi.num) * denominator;
}

}  // namespace osum
