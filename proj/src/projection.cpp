#include "osum/projection.hpp"

#include <algorithm>
#include <map>

namespace osum {

Utility UtilityList::max_acu() const {
  Utility best = 0;
  for (const auto& e : elements) best = std::max(best, e.acu);
  return best;
}

Utility UtilityList::compute_peu(const std::vector<UtilityElement>& elements) {
  Utility best = 0;
  for (const auto& e : elements) {
    if (e.ru > 0) best = std::max(best, e.acu + e.ru);
  }
  return best;
}

std::vector<PeriodSlice> ProjectedDatabase::period_slices() const {
  std::vector<PeriodSlice> slices;
  for (const auto& ul : lists) {
    if (slices.empty() || slices.back().tid != ul.tid) {
      slices.push_back({ul.tid, 0, 0});
    }
    slices.back().pu += ul.max_acu();
    slices.back().tpeu += ul.peu;
  }
  return slices;
}

std::size_t ProjectedDatabase::bytes() const {
  std::size_t n = sizeof(ProjectedDatabase) + lists.size() * sizeof(UtilityList);
  for (const auto& ul : lists) n += ul.elements.size() * sizeof(UtilityElement);
  for (const auto& ws : pattern.itemsets) {
    n += sizeof(std::vector<ItemId>) + ws.size() * sizeof(ItemId);
  }
  return n;
}

std::vector<std::pair<ItemId, ProjectedDatabase>> build_single_item_chains(
    const MatrixStore& store, std::optional<PeriodId> scope) {
  std::map<ItemId, ProjectedDatabase> chains;
  for (const auto& m : store.matrices) {
    if (scope && m.tid() != *scope) continue;
    const auto& items = m.row_items();
    for (std::size_t row = 0; row < items.size(); ++row) {
      const QMatrixEntry* cells = m.row_at(row);
      std::vector<UtilityElement> elements;
      for (std::uint32_t k = 0; k < m.itemset_count(); ++k) {
        if (cells[k].utility > 0) elements.push_back({k, cells[k].utility, cells[k].rest});
      }
      UtilityList ul{m.seq_index(), m.tid(), UtilityList::compute_peu(elements),
                     std::move(elements)};
      auto [it, inserted] = chains.try_emplace(items[row]);
      if (inserted) it->second.pattern = Pattern::single(items[row]);
      it->second.lists.push_back(std::move(ul));
    }
  }

  std::vector<std::pair<ItemId, ProjectedDatabase>> out;
  out.reserve(chains.size());
  for (auto& [item, chain] : chains) {
    // Matrices are visited in sequence order, so lists are already sorted.
    out.emplace_back(item, std::move(chain));
  }
  return out;
}

namespace {

void accumulate_trsu(std::map<ItemId, ExtensionCandidate>& bucket, ItemId item, ExtensionKind kind,
                     PeriodId tid, Utility peu) {
  auto [it, inserted] = bucket.try_emplace(item);
  ExtensionCandidate& cand = it->second;
  if (inserted) {
    cand.item = item;
    cand.kind = kind;
  }
  if (cand.trsu_by_period.empty() || cand.trsu_by_period.back().first != tid) {
    cand.trsu_by_period.emplace_back(tid, 0);
  }
  cand.trsu_by_period.back().second += peu;
  cand.trsu_total += peu;
}

}  // namespace

ExtensionScan find_extension_items(const ProjectedDatabase& parent, const MatrixStore& store,
                                   const ShelfTable& shelf) {
  std::map<ItemId, ExtensionCandidate> i_bucket;
  std::map<ItemId, ExtensionCandidate> s_bucket;
  const ItemId last = parent.pattern.last_item();

  for (const auto& ul : parent.lists) {
    const PeriodicalQMatrix& m = store.matrices[ul.seq_index];
    const std::uint32_t min_pos = ul.elements.front().pos;
    const auto& items = m.row_items();
    for (std::size_t row = 0; row < items.size(); ++row) {
      const ItemId item = items[row];
      if (!shelf.contains(item, ul.tid)) continue;
      if (m.last_position(row) > min_pos) {
        accumulate_trsu(s_bucket, item, ExtensionKind::S, ul.tid, ul.peu);
      }
      if (item > last) {
        const QMatrixEntry* cells = m.row_at(row);
        for (const auto& e : ul.elements) {
          if (cells[e.pos].utility > 0) {
            accumulate_trsu(i_bucket, item, ExtensionKind::I, ul.tid, ul.peu);
            break;
          }
        }
      }
    }
  }

  ExtensionScan scan;
  scan.i_candidates.reserve(i_bucket.size());
  for (auto& [item, cand] : i_bucket) scan.i_candidates.push_back(std::move(cand));
  scan.s_candidates.reserve(s_bucket.size());
  for (auto& [item, cand] : s_bucket) scan.s_candidates.push_back(std::move(cand));
  return scan;
}

ProjectedDatabase extend_and_project(const ProjectedDatabase& parent, ItemId item,
                                     ExtensionKind kind, const MatrixStore& store) {
  ProjectedDatabase child;
  child.pattern = kind == ExtensionKind::I ? parent.pattern.i_extended(item)
                                           : parent.pattern.s_extended(item);

  for (const auto& ul : parent.lists) {
    const PeriodicalQMatrix& m = store.matrices[ul.seq_index];
    const QMatrixEntry* row = m.row(item);
    if (row == nullptr) continue;

    std::vector<UtilityElement> elements;
    if (kind == ExtensionKind::I) {
      // The extension shares the parent's extension position; one folded
      // element per position where the item co-occurs.
      for (const auto& e : ul.elements) {
        if (row[e.pos].utility > 0) {
          elements.push_back({e.pos, e.acu + row[e.pos].utility, row[e.pos].rest});
        }
      }
    } else {
      // New itemset strictly after some parent extension position; fold the
      // max accumulated utility over all parent positions before q.
      Utility best = -1;
      auto it = ul.elements.begin();
      for (std::uint32_t q = ul.elements.front().pos + 1; q < m.itemset_count(); ++q) {
        while (it != ul.elements.end() && it->pos < q) {
          best = std::max(best, it->acu);
          ++it;
        }
        if (best >= 0 && row[q].utility > 0) {
          elements.push_back({q, best + row[q].utility, row[q].rest});
        }
      }
    }
    if (!elements.empty()) {
      child.lists.push_back(
          {ul.seq_index, ul.tid, UtilityList::compute_peu(elements), std::move(elements)});
    }
  }
  return child;
}

// ---------------------------------------------------------------------------
// Direct scans
// ---------------------------------------------------------------------------

namespace {

constexpr Utility kNoMatch = -1;

Utility itemset_match_utility(const std::vector<ItemId>& wanted, const QItemset& have,
                              const UtilityTable& utilities) {
  Utility sum = 0;
  auto it = have.items.begin();
  for (ItemId want : wanted) {
    while (it != have.items.end() && it->item < want) ++it;
    if (it == have.items.end() || it->item != want) return kNoMatch;
    sum += item_utility(it->item, it->quantity, utilities);
    ++it;
  }
  return sum;
}

// Best instance utility per extension position (kNoMatch where no instance
// ends), via a forward sweep per pattern itemset.
std::vector<Utility> best_by_extension_position(const Pattern& r, const QSequence& s,
                                                const UtilityTable& utilities) {
  const std::size_t n = s.itemsets.size();
  std::vector<Utility> best(n, kNoMatch);
  if (r.empty()) return best;

  for (std::uint32_t k = 0; k < n; ++k) {
    best[k] = itemset_match_utility(r.itemsets[0], s.itemsets[k], utilities);
  }
  for (std::size_t j = 1; j < r.itemsets.size(); ++j) {
    std::vector<Utility> next(n, kNoMatch);
    Utility prefix_best = kNoMatch;
    for (std::uint32_t k = 0; k < n; ++k) {
      if (prefix_best >= 0) {
        Utility here = itemset_match_utility(r.itemsets[j], s.itemsets[k], utilities);
        if (here >= 0) next[k] = prefix_best + here;
      }
      if (best[k] >= 0) prefix_best = std::max(prefix_best, best[k]);
    }
    best = std::move(next);
  }
  return best;
}

}  // namespace

Utility utility_at_extension_position(const Pattern& r, std::uint32_t pos, const QSequence& s,
                                      const UtilityTable& utilities) {
  if (pos >= s.itemsets.size()) return 0;
  Utility v = best_by_extension_position(r, s, utilities)[pos];
  return v < 0 ? 0 : v;
}

Utility pattern_utility(const Pattern& r, const QSequence& s, const UtilityTable& utilities) {
  Utility best = 0;
  for (Utility v : best_by_extension_position(r, s, utilities)) best = std::max(best, v);
  return best;
}

Utility rest_utility(const Pattern& r, std::uint32_t pos, const QSequence& s,
                     const UtilityTable& utilities) {
  if (r.empty() || pos >= s.itemsets.size()) return 0;
  const ItemId pivot = r.last_item();
  if (!s.itemsets[pos].contains(pivot)) return 0;
  Utility sum = 0;
  for (const auto& q : s.itemsets[pos].items) {
    if (q.item > pivot) sum += item_utility(q.item, q.quantity, utilities);
  }
  for (std::size_t k = pos + 1; k < s.itemsets.size(); ++k) {
    for (const auto& q : s.itemsets[k].items) sum += item_utility(q.item, q.quantity, utilities);
  }
  return sum;
}

Utility prefix_extension_utility(const Pattern& r, const QSequence& s,
                                 const UtilityTable& utilities) {
  std::vector<Utility> best = best_by_extension_position(r, s, utilities);
  Utility peu = 0;
  for (std::uint32_t pos = 0; pos < best.size(); ++pos) {
    if (best[pos] < 0) continue;
    Utility ru = rest_utility(r, pos, s, utilities);
    if (ru > 0) peu = std::max(peu, best[pos] + ru);
  }
  return peu;
}

Utility periodical_utility(const Pattern& r, const TemporalDatabase& db, PeriodId t) {
  Utility sum = 0;
  for (const auto& s : db.sequences) {
    if (s.tid == t) sum += pattern_utility(r, s, db.utilities);
  }
  return sum;
}

std::vector<PeriodId> on_shelf_periods(const Pattern& r, const ShelfTable& shelf) {
  std::vector<PeriodId> acc;
  bool first = true;
  for (const auto& ws : r.itemsets) {
    for (ItemId item : ws) {
      const auto& ps = shelf.of(item);
      if (first) {
        acc = ps;
        first = false;
      } else {
        std::vector<PeriodId> merged;
        std::set_intersection(acc.begin(), acc.end(), ps.begin(), ps.end(),
                              std::back_inserter(merged));
        acc = std::move(merged);
      }
      if (acc.empty() && !first) return acc;
    }
  }
  return acc;
}

OnShelfStats on_shelf_stats(const Pattern& r, const TemporalDatabase& db,
                            const PeriodAggregates& aggregates) {
  OnShelfStats stats;
  stats.ot = on_shelf_periods(r, db.shelf);
  for (PeriodId t : stats.ot) {
    stats.ou += periodical_utility(r, db, t);
    stats.denominator += aggregates.ptsu(t);
  }
  return stats;
}

}  // namespace osum
