#include "osum/types.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

namespace osum {

// ---------------------------------------------------------------------------
// Ratio
// ---------------------------------------------------------------------------

namespace {

std::int64_t parse_int_or_throw(std::string_view text, const char* what) {
  std::int64_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ValidationError(std::string("invalid ") + what + ": '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Ratio Ratio::parse(std::string_view text) {
  if (text.empty()) throw ValidationError("threshold must not be empty");
  if (text.front() == '-' || text.front() == '+') {
    throw ValidationError("threshold must be an unsigned value in (0, 1]");
  }

  std::int64_t num = 0;
  std::int64_t den = 1;

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = parse_int_or_throw(text.substr(0, slash), "threshold numerator");
    den = parse_int_or_throw(text.substr(slash + 1), "threshold denominator");
    if (den <= 0) throw ValidationError("threshold denominator must be positive");
  } else {
    std::string_view whole = text;
    std::string_view frac;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      whole = text.substr(0, dot);
      frac = text.substr(dot + 1);
    }
    if (whole.empty() && frac.empty()) {
      throw ValidationError("invalid threshold: '" + std::string(text) + "'");
    }
    if (frac.size() > 9) {
      throw ValidationError("threshold supports at most 9 decimal digits");
    }
    std::int64_t whole_part = whole.empty() ? 0 : parse_int_or_throw(whole, "threshold");
    std::int64_t frac_part = frac.empty() ? 0 : parse_int_or_throw(frac, "threshold");
    if (whole_part < 0 || frac_part < 0) {
      throw ValidationError("threshold must be positive");
    }
    den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    num = whole_part * den + frac_part;
  }

  if (num <= 0 || num > den) {
    throw ValidationError("threshold must lie in (0, 1], got '" + std::string(text) + "'");
  }
  std::int64_t g = std::gcd(num, den);
  return Ratio{num / g, den / g};
}

// ---------------------------------------------------------------------------
// QItemset / QSequence
// ---------------------------------------------------------------------------

std::uint32_t QItemset::quantity_of(ItemId item) const {
  auto it = std::lower_bound(items.begin(), items.end(), item,
                             [](const QItem& q, ItemId id) { return q.item < id; });
  if (it != items.end() && it->item == item) return it->quantity;
  return 0;
}

std::size_t QSequence::length() const {
  std::size_t n = 0;
  for (const auto& ws : itemsets) n += ws.items.size();
  return n;
}

// ---------------------------------------------------------------------------
// UtilityTable / ShelfTable
// ---------------------------------------------------------------------------

void UtilityTable::set(ItemId item, Utility profit) { profit_[item] = profit; }

Utility UtilityTable::profit(ItemId item) const {
  auto it = profit_.find(item);
  if (it == profit_.end()) {
    throw ValidationError("unknown item " + std::to_string(item) + " (no utility entry)");
  }
  return it->second;
}

const std::vector<PeriodId> ShelfTable::kEmpty;

void ShelfTable::add(ItemId item, PeriodId period) {
  auto& v = periods_[item];
  auto it = std::lower_bound(v.begin(), v.end(), period);
  if (it == v.end() || *it != period) v.insert(it, period);
}

bool ShelfTable::contains(ItemId item, PeriodId period) const {
  auto it = periods_.find(item);
  if (it == periods_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), period);
}

const std::vector<PeriodId>& ShelfTable::of(ItemId item) const {
  auto it = periods_.find(item);
  return it == periods_.end() ? kEmpty : it->second;
}

// ---------------------------------------------------------------------------
// TemporalDatabase
// ---------------------------------------------------------------------------

std::vector<ItemId> TemporalDatabase::items() const {
  std::set<ItemId> distinct;
  for (const auto& s : sequences) {
    for (const auto& ws : s.itemsets) {
      for (const auto& q : ws.items) distinct.insert(q.item);
    }
  }
  return {distinct.begin(), distinct.end()};
}

void TemporalDatabase::refresh_periods() {
  std::set<PeriodId> all;
  for (const auto& s : sequences) all.insert(s.tid);
  for (const auto& [item, ps] : shelf.entries()) all.insert(ps.begin(), ps.end());
  periods.assign(all.begin(), all.end());
}

void TemporalDatabase::validate() const {
  std::set<std::pair<PeriodId, SequenceId>> keys;
  std::set<PeriodId> seen_periods;

  for (const auto& s : sequences) {
    if (s.tid == 0) throw ValidationError("time period ids must be >= 1");
    if (s.sid == 0) throw ValidationError("sequence ids must be >= 1");
    if (!keys.insert({s.tid, s.sid}).second) {
      throw ValidationError("duplicate q-sequence (" + std::to_string(s.tid) + ", " +
                            std::to_string(s.sid) + ")");
    }
    seen_periods.insert(s.tid);
    if (s.itemsets.empty()) {
      throw ValidationError("q-sequence (" + std::to_string(s.tid) + ", " +
                            std::to_string(s.sid) + ") has no itemsets");
    }
    for (const auto& ws : s.itemsets) {
      if (ws.items.empty()) {
        throw ValidationError("empty itemset in q-sequence (" + std::to_string(s.tid) + ", " +
                              std::to_string(s.sid) + ")");
      }
      ItemId prev = 0;
      for (const auto& q : ws.items) {
        if (q.item == 0) throw ValidationError("item ids must be >= 1");
        if (q.item <= prev) {
          throw ValidationError("itemset not strictly ascending in q-sequence (" +
                                std::to_string(s.tid) + ", " + std::to_string(s.sid) + ")");
        }
        prev = q.item;
        if (q.quantity == 0) {
          throw ValidationError("quantity of item " + std::to_string(q.item) +
                                " must be >= 1 in q-sequence (" + std::to_string(s.tid) + ", " +
                                std::to_string(s.sid) + ")");
        }
        if (!utilities.contains(q.item)) {
          throw ValidationError("item " + std::to_string(q.item) + " has no utility entry");
        }
        if (shelf.of(q.item).empty()) {
          throw ValidationError("item " + std::to_string(q.item) + " has no shelf periods");
        }
        if (!shelf.contains(q.item, s.tid)) {
          throw ValidationError("item " + std::to_string(q.item) + " occurs in period " +
                                std::to_string(s.tid) + " but is not on shelf there");
        }
      }
    }
  }

  for (const auto& [item, profit] : utilities.entries()) {
    if (profit < 1) {
      throw ValidationError("unit profit of item " + std::to_string(item) + " must be >= 1");
    }
  }
  for (const auto& [item, ps] : shelf.entries()) {
    if (ps.empty()) {
      throw ValidationError("item " + std::to_string(item) + " has an empty shelf set");
    }
    for (PeriodId t : ps) {
      if (t == 0) throw ValidationError("shelf periods must be >= 1");
      if (!std::binary_search(periods.begin(), periods.end(), t)) {
        throw ValidationError("period universe misses shelf period " + std::to_string(t));
      }
    }
  }
  for (PeriodId t : seen_periods) {
    if (!std::binary_search(periods.begin(), periods.end(), t)) {
      throw ValidationError("period universe misses sequence period " + std::to_string(t));
    }
  }
  if (!std::is_sorted(sequences.begin(), sequences.end(), [](const auto& a, const auto& b) {
        return std::pair(a.tid, a.sid) < std::pair(b.tid, b.sid);
      })) {
    throw ValidationError("q-sequences must be sorted by (period, sequence id)");
  }
}

// ---------------------------------------------------------------------------
// Pattern
// ---------------------------------------------------------------------------

std::size_t Pattern::length() const {
  std::size_t n = 0;
  for (const auto& ws : itemsets) n += ws.size();
  return n;
}

ItemId Pattern::last_item() const { return itemsets.back().back(); }

Pattern Pattern::i_extended(ItemId item) const {
  Pattern out = *this;
  out.itemsets.back().push_back(item);
  return out;
}

Pattern Pattern::s_extended(ItemId item) const {
  Pattern out = *this;
  out.itemsets.push_back({item});
  return out;
}

std::string Pattern::to_string() const {
  std::string out;
  for (const auto& ws : itemsets) {
    out += '{';
    for (std::size_t i = 0; i < ws.size(); ++i) {
      if (i != 0) out += ' ';
      out += std::to_string(ws[i]);
    }
    out += '}';
  }
  return out;
}

bool pattern_less(const Pattern& a, const Pattern& b) {
  const std::size_t la = a.length();
  const std::size_t lb = b.length();
  if (la != lb) return la < lb;
  return a.itemsets < b.itemsets;
}

// ---------------------------------------------------------------------------
// Elementary operations
// ---------------------------------------------------------------------------

Utility item_utility(ItemId item, std::uint32_t quantity, const UtilityTable& utilities) {
  return static_cast<Utility>(quantity) * utilities.profit(item);
}

Utility q_sequence_utility(const QSequence& s, const UtilityTable& utilities) {
  Utility total = 0;
  for (const auto& ws : s.itemsets) {
    for (const auto& q : ws.items) total += item_utility(q.item, q.quantity, utilities);
  }
  return total;
}

bool itemset_covers(const QItemset& have, const std::vector<ItemId>& wanted) {
  auto it = have.items.begin();
  for (ItemId want : wanted) {
    while (it != have.items.end() && it->item < want) ++it;
    if (it == have.items.end() || it->item != want) return false;
    ++it;
  }
  return true;
}

namespace {

void collect_instances(const Pattern& r, const QSequence& s, std::size_t row,
                       std::size_t first_pos, InstancePositions& current,
                       std::vector<InstancePositions>& out) {
  const std::size_t remaining = r.itemsets.size() - row;
  for (std::size_t k = first_pos; k + remaining <= s.itemsets.size(); ++k) {
    if (!itemset_covers(s.itemsets[k], r.itemsets[row])) continue;
    current.push_back(static_cast<std::uint32_t>(k));
    if (row + 1 == r.itemsets.size()) {
      out.push_back(current);
    } else {
      collect_instances(r, s, row + 1, k + 1, current, out);
    }
    current.pop_back();
  }
}

}  // namespace

std::vector<InstancePositions> find_instances(const Pattern& r, const QSequence& s) {
  std::vector<InstancePositions> out;
  if (r.empty()) return out;
  InstancePositions current;
  current.reserve(r.itemsets.size());
  collect_instances(r, s, 0, 0, current, out);
  return out;
}

}  // namespace osum
