#include "osum/qmatrix.hpp"

#include <algorithm>
#include <set>

namespace osum {

PeriodicalQMatrix::PeriodicalQMatrix(const QSequence& s, const UtilityTable& utilities,
                                     std::uint32_t seq_index)
    : tid_(s.tid),
      sid_(s.sid),
      seq_index_(seq_index),
      itemset_count_(static_cast<std::uint32_t>(s.itemsets.size())) {
  std::set<ItemId> distinct;
  for (const auto& ws : s.itemsets) {
    for (const auto& q : ws.items) distinct.insert(q.item);
  }
  items_.assign(distinct.begin(), distinct.end());
  cells_.assign(items_.size() * itemset_count_, QMatrixEntry{});
  last_pos_.assign(items_.size(), 0);

  // First pass: utilities per cell and the sequence total.
  for (std::uint32_t k = 0; k < itemset_count_; ++k) {
    for (const auto& q : s.itemsets[k].items) {
      Utility u = item_utility(q.item, q.quantity, utilities);
      auto row_it = std::lower_bound(items_.begin(), items_.end(), q.item);
      std::size_t row = static_cast<std::size_t>(row_it - items_.begin());
      cells_[row * itemset_count_ + k].utility = u;
      last_pos_[row] = k;
      sequence_utility_ += u;
    }
  }

  // Second pass: remaining utility = suffix sum in (itemset, item) order,
  // excluding the cell itself.
  Utility suffix = sequence_utility_;
  for (std::uint32_t k = 0; k < itemset_count_; ++k) {
    for (const auto& q : s.itemsets[k].items) {
      auto row_it = std::lower_bound(items_.begin(), items_.end(), q.item);
      std::size_t row = static_cast<std::size_t>(row_it - items_.begin());
      QMatrixEntry& cell = cells_[row * itemset_count_ + k];
      suffix -= cell.utility;
      cell.rest = suffix;
    }
  }
}

const QMatrixEntry* PeriodicalQMatrix::row(ItemId item) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), item);
  if (it == items_.end() || *it != item) return nullptr;
  return row_at(static_cast<std::size_t>(it - items_.begin()));
}

QMatrixEntry PeriodicalQMatrix::entry(ItemId item, std::uint32_t itemset_index) const {
  const QMatrixEntry* r = row(item);
  if (r == nullptr || itemset_index >= itemset_count_) return {};
  return r[itemset_index];
}

PeriodAggregates::PeriodAggregates(std::vector<PeriodId> periods, std::vector<Utility> ptsu)
    : periods_(std::move(periods)), ptsu_(std::move(ptsu)) {
  for (Utility v : ptsu_) total_ += v;
}

std::size_t PeriodAggregates::index_of(PeriodId t) const {
  auto it = std::lower_bound(periods_.begin(), periods_.end(), t);
  if (it == periods_.end() || *it != t) {
    throw ValidationError("unknown time period " + std::to_string(t));
  }
  return static_cast<std::size_t>(it - periods_.begin());
}

PeriodAggregates compute_ptsu(const TemporalDatabase& db) {
  std::vector<Utility> sums(db.periods.size(), 0);
  for (const auto& s : db.sequences) {
    auto it = std::lower_bound(db.periods.begin(), db.periods.end(), s.tid);
    sums[static_cast<std::size_t>(it - db.periods.begin())] += q_sequence_utility(s, db.utilities);
  }
  return PeriodAggregates(db.periods, std::move(sums));
}

MatrixStore build_matrices(const TemporalDatabase& db, const PeriodAggregates& aggregates) {
  MatrixStore store;
  store.matrices.reserve(db.sequences.size());
  store.by_period.assign(aggregates.count(), {});
  for (std::uint32_t i = 0; i < db.sequences.size(); ++i) {
    store.matrices.emplace_back(db.sequences[i], db.utilities, i);
    store.by_period[aggregates.index_of(db.sequences[i].tid)].push_back(i);
  }
  return store;
}

}  // namespace osum
