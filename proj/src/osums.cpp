#include <mutex>
#include <thread>

#include "miner_internal.hpp"
#include "osum/ctree.hpp"
#include "osum/miner.hpp"
#include "osum/projection.hpp"

namespace osum {

namespace {

struct TwoPhaseContext {
  const TemporalDatabase& db;
  const MatrixStore& store;
  const PeriodAggregates& agg;
  const MiningOptions& opts;
  CTree tree;
  std::mutex tree_mutex;
  StructBytes bytes;
  detail::RunLimits limits;

  std::atomic<std::uint64_t> chains_built{0};
  std::atomic<std::uint64_t> nodes_visited{0};
  std::atomic<std::uint64_t> candidates{0};

  TwoPhaseContext(const TemporalDatabase& db_, const MatrixStore& store_,
                  const PeriodAggregates& agg_, const MiningOptions& opts_)
      : db(db_), store(store_), agg(agg_), opts(opts_), tree(agg_, db_.shelf),
        limits(opts_, &bytes) {}

  // Registration is the only shared mutation in phase 1.
  void register_candidate(const Pattern& r, PeriodId t, Utility pu, bool promising) {
    std::lock_guard<std::mutex> lock(tree_mutex);
    std::uint64_t created_before = tree.nodes_created();
    std::size_t bytes_before = tree.bytes();
    tree.register_pattern(r, t, pu, promising);
    candidates.fetch_add(tree.nodes_created() - created_before, std::memory_order_relaxed);
    bytes.add(tree.bytes() - bytes_before);
  }
};

void local_pgrowth(TwoPhaseContext& ctx, const ProjectedDatabase& chain, PeriodId t,
                   Utility period_ptsu) {
  if (ctx.limits.check()) return;
  ctx.nodes_visited.fetch_add(1, std::memory_order_relaxed);
  if (ctx.opts.max_length != 0 && chain.pattern.length() >= ctx.opts.max_length) return;

  ExtensionScan scan = find_extension_items(chain, ctx.store, ctx.db.shelf);
  auto process = [&](const ExtensionCandidate& cand) {
    // Width bound: the extension's pattern utility here cannot exceed the
    // summed parent peu over its supporting sequences.
    if (ctx.opts.strategies.lwp && !ctx.opts.xi.admits(cand.trsu_total, period_ptsu)) return;

    ProjectedDatabase child = extend_and_project(chain, cand.item, cand.kind, ctx.store);
    if (child.empty()) return;
    ctx.chains_built.fetch_add(1, std::memory_order_relaxed);
    std::size_t child_bytes = child.bytes();
    ctx.bytes.add(child_bytes);

    Utility pu = 0;
    Utility tpeu = 0;
    for (const auto& ul : child.lists) {
      pu += ul.max_acu();
      tpeu += ul.peu;
    }
    ctx.register_candidate(child.pattern, t, pu, ctx.opts.xi.admits(pu, period_ptsu));

    // Depth bound: nothing grown from here in this period can be promising
    // when the summed prefix-extension utility already falls short.
    if (!ctx.opts.strategies.ldp || ctx.opts.xi.admits(tpeu, period_ptsu)) {
      local_pgrowth(ctx, child, t, period_ptsu);
    }
    ctx.bytes.sub(child_bytes);
  };

  for (const auto& cand : scan.i_candidates) {
    if (ctx.limits.aborted.load(std::memory_order_relaxed)) return;
    process(cand);
  }
  for (const auto& cand : scan.s_candidates) {
    if (ctx.limits.aborted.load(std::memory_order_relaxed)) return;
    process(cand);
  }
}

void run_period(TwoPhaseContext& ctx, std::size_t period_index) {
  if (ctx.store.by_period[period_index].empty()) return;
  const PeriodId t = ctx.agg.period_at(period_index);
  const Utility period_ptsu = ctx.agg.ptsu_at(period_index);

  auto singles = build_single_item_chains(ctx.store, t);
  std::size_t singles_bytes = 0;
  for (const auto& [item, chain] : singles) singles_bytes += chain.bytes();
  ctx.bytes.add(singles_bytes);
  ctx.chains_built.fetch_add(singles.size(), std::memory_order_relaxed);

  for (auto& [item, chain] : singles) {
    if (ctx.limits.check()) break;
    Utility pu = 0;
    Utility tpeu = 0;
    for (const auto& ul : chain.lists) {
      pu += ul.max_acu();
      tpeu += ul.peu;
    }
    ctx.register_candidate(chain.pattern, t, pu, ctx.opts.xi.admits(pu, period_ptsu));
    if (ctx.opts.max_length != 1 &&
        (!ctx.opts.strategies.ldp || ctx.opts.xi.admits(tpeu, period_ptsu))) {
      local_pgrowth(ctx, chain, t, period_ptsu);
    }
    // Done with this item's subtree; release its chain.
    std::size_t freed = chain.bytes();
    chain.lists.clear();
    chain.lists.shrink_to_fit();
    freed -= chain.bytes();
    ctx.bytes.sub(freed);
    singles_bytes -= freed;
  }
  ctx.bytes.sub(singles_bytes);
}

void run_phase1(TwoPhaseContext& ctx) {
  const std::size_t period_count = ctx.agg.count();
  unsigned workers = ctx.opts.threads == 0 ? 1 : ctx.opts.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, period_count));

  if (workers <= 1) {
    for (std::size_t i = 0; i < period_count; ++i) run_period(ctx, i);
    return;
  }

  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&ctx, &cursor, period_count] {
      while (true) {
        std::size_t i = cursor.fetch_add(1);
        if (i >= period_count) return;
        run_period(ctx, i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

void verify_node(TwoPhaseContext& ctx, CTree::Node& node, MiningReport& report) {
  if (ctx.limits.check()) return;
  ctx.nodes_visited.fetch_add(1, std::memory_order_relaxed);

  if (!node.seq.empty() && node.is_promising &&
      (!ctx.opts.strategies.arc || arc_keep(node, ctx.agg, ctx.opts.xi))) {
    Utility ou = 0;
    Utility denominator = 0;
    std::vector<PeriodId> ot;
    for (std::size_t i = 0; i < ctx.agg.count(); ++i) {
      if (!node.on_shelf.test(i)) continue;
      denominator += ctx.agg.ptsu_at(i);
      ot.push_back(ctx.agg.period_at(i));
      if (!node.calculated.test(i)) {
        Utility pu = periodical_utility(node.seq, ctx.db, ctx.agg.period_at(i));
        node.calculated.set(i);
        node.utility[i] = pu;
        node.c_utility += pu;
        report.phase2_utility_scans++;
      }
      ou += node.utility[i];
    }
    if (ctx.opts.xi.admits(ou, denominator)) {
      report.patterns.push_back({node.seq, ou, denominator, std::move(ot)});
    }
  }

  for (auto& [edge, child] : node.children) verify_node(ctx, *child, report);
}

}  // namespace

MiningReport mine_osums(const TemporalDatabase& db, const MiningOptions& options) {
  db.validate();
  PeriodAggregates agg = compute_ptsu(db);
  MatrixStore store = build_matrices(db, agg);
  TwoPhaseContext ctx(db, store, agg, options);
  MiningReport report;

  auto t0 = detail::Clock::now();
  run_phase1(ctx);
  auto t1 = detail::Clock::now();
  if (!ctx.limits.aborted.load()) {
    verify_node(ctx, ctx.tree.root(), report);
  }
  auto t2 = detail::Clock::now();

  report.candidates_generated = ctx.candidates.load();
  report.chains_built = ctx.chains_built.load();
  report.nodes_visited = ctx.nodes_visited.load();
  report.phase1_ms = detail::ms_between(t0, t1);
  report.phase2_ms = detail::ms_between(t1, t2);
  report.wall_ms = detail::ms_between(t0, t2);
  detail::finalize_report(report, ctx.bytes, ctx.limits);
  return report;
}

}  // namespace osum
