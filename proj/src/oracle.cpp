#include "osum/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace osum::oracle {

namespace {

// Is `wanted` (ascending) a sub-itemset of q-itemset `have`? Linear scan on
// purpose; this module favors obviousness over speed.
bool covers(const QItemset& have, const std::vector<ItemId>& wanted) {
  for (ItemId want : wanted) {
    bool found = false;
    for (const auto& q : have.items) {
      if (q.item == want) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool contains_from(const Pattern& r, const QSequence& s, std::size_t row, std::size_t from) {
  if (row == r.itemsets.size()) return true;
  for (std::size_t k = from; k < s.itemsets.size(); ++k) {
    if (covers(s.itemsets[k], r.itemsets[row]) && contains_from(r, s, row + 1, k + 1)) {
      return true;
    }
  }
  return false;
}

Utility itemset_utility(const std::vector<ItemId>& wanted, const QItemset& have,
                        const UtilityTable& utilities) {
  Utility sum = 0;
  for (ItemId want : wanted) {
    for (const auto& q : have.items) {
      if (q.item == want) {
        sum += item_utility(q.item, q.quantity, utilities);
        break;
      }
    }
  }
  return sum;
}

void enumerate_instances(const Pattern& r, const QSequence& s, std::size_t row, std::size_t from,
                         std::vector<std::uint32_t>& positions,
                         std::vector<std::vector<std::uint32_t>>& out) {
  if (row == r.itemsets.size()) {
    out.push_back(positions);
    return;
  }
  for (std::size_t k = from; k < s.itemsets.size(); ++k) {
    if (!covers(s.itemsets[k], r.itemsets[row])) continue;
    positions.push_back(static_cast<std::uint32_t>(k));
    enumerate_instances(r, s, row + 1, k + 1, positions, out);
    positions.pop_back();
  }
}

}  // namespace

bool contains(const Pattern& r, const QSequence& s) {
  if (r.empty()) return false;
  return contains_from(r, s, 0, 0);
}

Utility utility_by_instances(const Pattern& r, const QSequence& s, const UtilityTable& utilities) {
  if (r.empty()) return 0;
  std::vector<std::vector<std::uint32_t>> instances;
  std::vector<std::uint32_t> scratch;
  enumerate_instances(r, s, 0, 0, scratch, instances);

  // Group by extension position (last index), maximize within each group,
  // then maximize across groups.
  std::map<std::uint32_t, Utility> best_at;
  for (const auto& inst : instances) {
    Utility u = 0;
    for (std::size_t row = 0; row < r.itemsets.size(); ++row) {
      u += itemset_utility(r.itemsets[row], s.itemsets[inst[row]], utilities);
    }
    auto [it, inserted] = best_at.try_emplace(inst.back(), u);
    if (!inserted) it->second = std::max(it->second, u);
  }
  Utility best = 0;
  for (const auto& [pos, u] : best_at) best = std::max(best, u);
  return best;
}

Utility periodical_utility(const Pattern& r, const TemporalDatabase& db, PeriodId t) {
  Utility sum = 0;
  for (const auto& s : db.sequences) {
    if (s.tid == t) sum += utility_by_instances(r, s, db.utilities);
  }
  return sum;
}

namespace {

struct Enumeration {
  const TemporalDatabase& db;
  const OracleConfig& config;
  std::vector<ItemId> items;
  std::vector<Pattern> out;
  std::chrono::steady_clock::time_point deadline;

  bool contained_somewhere(const Pattern& r) const {
    for (const auto& s : db.sequences) {
      if (contains(r, s)) return true;
    }
    return false;
  }

  void grow(const Pattern& r) {
    out.push_back(r);
    if (out.size() > config.max_candidates) {
      throw BudgetError("oracle enumeration exceeded " + std::to_string(config.max_candidates) +
                        " candidate patterns");
    }
    if (out.size() % 1024 == 0 && std::chrono::steady_clock::now() > deadline) {
      throw LimitError("time limit exceeded during oracle enumeration");
    }
    if (config.max_pattern_length != 0 && r.length() >= config.max_pattern_length) return;
    for (ItemId item : items) {
      if (item > r.last_item()) {
        Pattern extended = r.i_extended(item);
        if (contained_somewhere(extended)) grow(extended);
      }
    }
    for (ItemId item : items) {
      Pattern extended = r.s_extended(item);
      if (contained_somewhere(extended)) grow(extended);
    }
  }
};

}  // namespace

std::vector<Pattern> enumerate_all_patterns(const TemporalDatabase& db,
                                            const OracleConfig& config) {
  std::size_t max_len = 0;
  for (const auto& s : db.sequences) max_len = std::max(max_len, s.length());
  Enumeration en{db, config, db.items(), {},
                 std::chrono::steady_clock::now() +
                     std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                         std::chrono::duration<double>(config.time_limit_sec))};
  const std::uint64_t size_estimate =
      static_cast<std::uint64_t>(en.items.size()) * static_cast<std::uint64_t>(max_len);
  if (size_estimate > config.budget) {
    throw BudgetError("oracle budget exceeded: " + std::to_string(en.items.size()) +
                      " items x max sequence length " + std::to_string(max_len) + " = " +
                      std::to_string(size_estimate) + " > " + std::to_string(config.budget) +
                      "; raise the budget only for inputs small enough to enumerate exhaustively");
  }
  for (ItemId item : en.items) {
    Pattern single = Pattern::single(item);
    if (en.contained_somewhere(single)) en.grow(single);
  }
  return std::move(en.out);
}

OracleReport mine(const TemporalDatabase& db, const OracleConfig& config) {
  db.validate();
  OracleReport report;
  std::vector<Pattern> all = enumerate_all_patterns(db, config);
  report.candidates = all.size();

  for (const Pattern& r : all) {
    // On-shelf periods: intersection of the items' shelf sets, folded by hand.
    std::vector<PeriodId> ot;
    bool first = true;
    for (const auto& ws : r.itemsets) {
      for (ItemId item : ws) {
        const auto& ps = db.shelf.of(item);
        if (first) {
          ot.assign(ps.begin(), ps.end());
          first = false;
        } else {
          std::vector<PeriodId> merged;
          for (PeriodId t : ot) {
            if (std::find(ps.begin(), ps.end(), t) != ps.end()) merged.push_back(t);
          }
          ot = std::move(merged);
        }
      }
    }

    Utility ou = 0;
    Utility denominator = 0;
    for (PeriodId t : ot) {
      ou += periodical_utility(r, db, t);
      for (const auto& s : db.sequences) {
        if (s.tid == t) denominator += q_sequence_utility(s, db.utilities);
      }
    }
    if (config.xi.admits(ou, denominator)) {
      report.patterns.push_back({r, ou, denominator, ot});
    }
  }

  std::sort(report.patterns.begin(), report.patterns.end(),
            [](const MinedPattern& a, const MinedPattern& b) {
              return pattern_less(a.pattern, b.pattern);
            });
  return report;
}

}  // namespace osum::oracle
