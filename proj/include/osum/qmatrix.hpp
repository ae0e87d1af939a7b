#pragma once

#include <cstdint>
#include <vector>

#include "osum/types.hpp"

namespace osum {

// One cell of a periodical q-matrix: the utility of a q-item occurrence and
// the remaining utility after it, i.e. the sum of the utilities of all
// q-items strictly behind it in (itemset index, item id) order.
struct QMatrixEntry {
  Utility utility{0};
  Utility rest{0};
};

// Compact per-sequence matrix: one row per occurring item, one column per
// itemset. Cells of absent occurrences are (0, 0); a quantity is never zero,
// so utility > 0 is exactly "the item occurs here".
class PeriodicalQMatrix {
 public:
  PeriodicalQMatrix(const QSequence& s, const UtilityTable& utilities, std::uint32_t seq_index);

  PeriodId tid() const { return tid_; }
  SequenceId sid() const { return sid_; }
  std::uint32_t seq_index() const { return seq_index_; }
  std::uint32_t itemset_count() const { return itemset_count_; }

  const std::vector<ItemId>& row_items() const { return items_; }

  // Row of `item` as a dense array of itemset_count() entries; nullptr when
  // the item does not occur in the sequence.
  const QMatrixEntry* row(ItemId item) const;
  const QMatrixEntry* row_at(std::size_t row_index) const {
    return cells_.data() + row_index * itemset_count_;
  }

  // Cell lookup with the (0, 0) convention for absent occurrences.
  QMatrixEntry entry(ItemId item, std::uint32_t itemset_index) const;

  // Largest itemset index where row `row_index` occurs.
  std::uint32_t last_position(std::size_t row_index) const { return last_pos_[row_index]; }

  // su(s): total utility of the underlying q-sequence.
  Utility sequence_utility() const { return sequence_utility_; }

 private:
  PeriodId tid_;
  SequenceId sid_;
  std::uint32_t seq_index_;
  std::uint32_t itemset_count_;
  Utility sequence_utility_{0};
  std::vector<ItemId> items_;            // ascending
  std::vector<QMatrixEntry> cells_;      // items_.size() x itemset_count_
  std::vector<std::uint32_t> last_pos_;  // per row
};

// All matrices of a database, index-parallel to db.sequences (which is sorted
// by (period, sequence id), so matrices of one period are contiguous).
struct MatrixStore {
  std::vector<PeriodicalQMatrix> matrices;
  // Indices into `matrices` per period, aligned with PeriodAggregates order.
  std::vector<std::vector<std::uint32_t>> by_period;
};

// Per-period total sequence utility (ptsu) over the whole period universe;
// periods without sequences carry 0.
class PeriodAggregates {
 public:
  PeriodAggregates() = default;
  PeriodAggregates(std::vector<PeriodId> periods, std::vector<Utility> ptsu);

  const std::vector<PeriodId>& periods() const { return periods_; }
  std::size_t count() const { return periods_.size(); }

  // Dense index of a period id; throws ValidationError for unknown periods.
  std::size_t index_of(PeriodId t) const;
  PeriodId period_at(std::size_t index) const { return periods_[index]; }

  Utility ptsu(PeriodId t) const { return ptsu_[index_of(t)]; }
  Utility ptsu_at(std::size_t index) const { return ptsu_[index]; }

  // Total database utility u(D).
  Utility total() const { return total_; }

 private:
  std::vector<PeriodId> periods_;  // sorted
  std::vector<Utility> ptsu_;
  Utility total_{0};
};

MatrixStore build_matrices(const TemporalDatabase& db, const PeriodAggregates& aggregates);
PeriodAggregates compute_ptsu(const TemporalDatabase& db);

}  // namespace osum
