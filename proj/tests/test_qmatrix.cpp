#include <vector>

#include "doctest.h"
#include "osum/qmatrix.hpp"
#include "support.hpp"

using namespace osum;

TEST_CASE("q-matrix cells carry occurrence utility and remaining utility") {
  auto db = testsupport::running_example();
  // Third sequence: period 2, sequence 1.
  PeriodicalQMatrix m(db.sequences[2], db.utilities, 2);
  CHECK(m.tid() == 2);
  CHECK(m.sid() == 1);
  CHECK(m.itemset_count() == 3);
  CHECK(m.row_items() == std::vector<ItemId>{1, 3, 4});
  CHECK(m.sequence_utility() == 22);

  const QMatrixEntry* row_a = m.row(1);
  REQUIRE(row_a != nullptr);
  CHECK(row_a[0].utility == 0);
  CHECK(row_a[0].rest == 0);
  CHECK(row_a[1].utility == 6);
  CHECK(row_a[1].rest == 9);
  CHECK(row_a[2].utility == 4);
  CHECK(row_a[2].rest == 4);

  const QMatrixEntry* row_c = m.row(3);
  REQUIRE(row_c != nullptr);
  CHECK(row_c[0].utility == 3);
  CHECK(row_c[0].rest == 19);
  CHECK(row_c[1].utility == 1);
  CHECK(row_c[1].rest == 8);
  CHECK(row_c[2].utility == 3);
  CHECK(row_c[2].rest == 1);

  const QMatrixEntry* row_d = m.row(4);
  REQUIRE(row_d != nullptr);
  CHECK(row_d[0].utility == 4);
  CHECK(row_d[0].rest == 15);
  CHECK(row_d[2].utility == 1);
  CHECK(row_d[2].rest == 0);

  CHECK(m.row(2) == nullptr);
  CHECK(m.entry(2, 0).utility == 0);
  CHECK(m.entry(1, 1).utility == 6);

  CHECK(m.last_position(0) == 2);  // item 1
  CHECK(m.last_position(1) == 2);  // item 3
  CHECK(m.last_position(2) == 2);  // item 4
}

TEST_CASE("per-period totals over the example database") {
  auto db = testsupport::running_example();
  auto aggregates = compute_ptsu(db);
  CHECK(aggregates.periods() == std::vector<PeriodId>{1, 2, 3});
  CHECK(aggregates.ptsu(1) == 34);
  CHECK(aggregates.ptsu(2) == 49);
  CHECK(aggregates.ptsu(3) == 27);
  CHECK(aggregates.ptsu_at(0) == 34);
  CHECK(aggregates.total() == 110);
  CHECK(aggregates.index_of(2) == 1);
  CHECK_THROWS_AS(aggregates.index_of(9), ValidationError);
}

TEST_CASE("matrices are built index-parallel to the sequences") {
  auto db = testsupport::running_example();
  auto aggregates = compute_ptsu(db);
  auto store = build_matrices(db, aggregates);
  REQUIRE(store.matrices.size() == 5);
  for (std::size_t i = 0; i < store.matrices.size(); ++i) {
    CHECK(store.matrices[i].seq_index() == i);
    CHECK(store.matrices[i].tid() == db.sequences[i].tid);
    CHECK(store.matrices[i].sid() == db.sequences[i].sid);
  }
  REQUIRE(store.by_period.size() == 3);
  CHECK(store.by_period[0] == std::vector<std::uint32_t>{0, 1});
  CHECK(store.by_period[1] == std::vector<std::uint32_t>{2, 3});
  CHECK(store.by_period[2] == std::vector<std::uint32_t>{4});
}

TEST_CASE("matrix invariants hold on random databases") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto db = testsupport::random_database(seed);
    auto aggregates = compute_ptsu(db);
    auto store = build_matrices(db, aggregates);

    Utility total = 0;
    for (std::size_t i = 0; i < store.matrices.size(); ++i) {
      const auto& m = store.matrices[i];
      const auto& s = db.sequences[i];
      CHECK(m.sequence_utility() == q_sequence_utility(s, db.utilities));
      total += m.sequence_utility();

      // Cell utilities sum to the sequence utility; every cell's rest equals
      // the sum of utilities strictly behind it in (itemset, item) order.
      Utility cell_sum = 0;
      for (std::size_t r = 0; r < m.row_items().size(); ++r) {
        const QMatrixEntry* row = m.row_at(r);
        bool seen = false;
        for (std::uint32_t p = 0; p < m.itemset_count(); ++p) {
          cell_sum += row[p].utility;
          std::uint32_t qty = s.itemsets[p].quantity_of(m.row_items()[r]);
          CHECK(row[p].utility == item_utility(m.row_items()[r], qty, db.utilities));
          if (qty != 0) {
            seen = true;
            CHECK(m.last_position(r) >= p);
            // Recompute the remaining utility naively.
            Utility behind = 0;
            for (std::uint32_t p2 = p; p2 < m.itemset_count(); ++p2) {
              for (const auto& qi : s.itemsets[p2].items) {
                if (p2 == p && qi.item <= m.row_items()[r]) continue;
                behind += item_utility(qi.item, qi.quantity, db.utilities);
              }
            }
            CHECK(row[p].rest == behind);
          }
        }
        CHECK(seen);
        CHECK(row[m.last_position(r)].utility > 0);
      }
      CHECK(cell_sum == m.sequence_utility());
    }
    CHECK(total == aggregates.total());

    Utility ptsu_sum = 0;
    for (std::size_t k = 0; k < aggregates.count(); ++k) ptsu_sum += aggregates.ptsu_at(k);
    CHECK(ptsu_sum == aggregates.total());
  }
}
