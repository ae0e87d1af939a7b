#pragma once

// Shared helpers for the test suite: fixture loading via OSUM_DATA_DIR and a
// deterministic generator of small random temporal databases for property
// tests and miner/oracle cross-checks.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "osum/ingest.hpp"
#include "osum/types.hpp"

namespace testsupport {

inline std::string env_or(const char* name, const char* fallback) {
  const char* value = std::getenv(name);
  return value ? value : fallback;
}

inline std::string data_dir() { return env_or("OSUM_DATA_DIR", "data"); }
inline std::string tmp_dir() { return env_or("OSUM_TMP_DIR", "."); }

// The five-sequence example dataset shipped under data/.
inline osum::TemporalDatabase running_example() {
  osum::DatasetBundle bundle;
  bundle.database_path = data_dir() + "/running_example.db";
  bundle.utility_path = data_dir() + "/running_example.utils";
  bundle.shelf_path = data_dir() + "/running_example.shelf";
  return osum::parse_database(bundle);
}

// Seeded random database: up to 3 periods, items from 1..6, up to 6
// q-sequences with up to 4 itemsets of up to 3 items, quantities 1..4,
// profits 1..5. The shelf covers all occurrences and is randomly widened, so
// off-shelf high-utility periods and empty on-shelf periods both happen.
inline osum::TemporalDatabase random_database(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::uint64_t n) { return static_cast<std::uint32_t>(rng() % n); };

  const std::uint32_t period_count = 1 + pick(3);
  const std::uint32_t item_count = 2 + pick(5);
  const std::uint32_t seq_count = 1 + pick(6);

  osum::TemporalDatabase db;
  for (osum::ItemId item = 1; item <= item_count; ++item) {
    db.utilities.set(item, 1 + pick(5));
  }

  std::vector<osum::SequenceId> next_sid(period_count + 1, 1);
  for (std::uint32_t n = 0; n < seq_count; ++n) {
    osum::QSequence s;
    s.tid = 1 + pick(period_count);
    s.sid = next_sid[s.tid]++;
    const std::uint32_t itemset_count = 1 + pick(4);
    for (std::uint32_t k = 0; k < itemset_count; ++k) {
      std::uint32_t size = 1 + pick(3);
      if (size > item_count) size = item_count;
      osum::QItemset itemset;
      while (itemset.items.size() < size) {
        osum::ItemId item = 1 + pick(item_count);
        bool fresh = true;
        for (const auto& qi : itemset.items) fresh = fresh && qi.item != item;
        if (fresh) itemset.items.push_back({item, 1 + pick(4)});
      }
      std::sort(itemset.items.begin(), itemset.items.end(),
                [](const osum::QItem& a, const osum::QItem& b) { return a.item < b.item; });
      s.itemsets.push_back(std::move(itemset));
    }
    db.sequences.push_back(std::move(s));
  }
  std::sort(db.sequences.begin(), db.sequences.end(), [](const auto& a, const auto& b) {
    return a.tid != b.tid ? a.tid < b.tid : a.sid < b.sid;
  });

  for (const auto& s : db.sequences) {
    for (const auto& itemset : s.itemsets) {
      for (const auto& qi : itemset.items) db.shelf.add(qi.item, s.tid);
    }
  }
  // Random widening beyond the occurrence periods.
  for (osum::ItemId item : db.items()) {
    for (osum::PeriodId t = 1; t <= period_count; ++t) {
      if (!db.shelf.contains(item, t) && pick(3) == 0) db.shelf.add(item, t);
    }
  }
  db.refresh_periods();
  db.validate();
  return db;
}

}  // namespace testsupport
