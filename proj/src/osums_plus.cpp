#include "miner_internal.hpp"
#include "osum/miner.hpp"
#include "osum/projection.hpp"

namespace osum {

namespace {

struct OnePhaseContext {
  const TemporalDatabase& db;
  const MatrixStore& store;
  const PeriodAggregates& agg;
  const MiningOptions& opts;
  StructBytes bytes;
  detail::RunLimits limits;
  MiningReport report;

  OnePhaseContext(const TemporalDatabase& db_, const MatrixStore& store_,
                  const PeriodAggregates& agg_, const MiningOptions& opts_)
      : db(db_), store(store_), agg(agg_), opts(opts_), limits(opts_, &bytes) {}
};

// Exact on-shelf ratio test over the chain's per-period utilities; emits
// immediately when it clears the threshold. Returns the slices for reuse.
std::vector<PeriodSlice> emit_if_qualified(OnePhaseContext& ctx, const ProjectedDatabase& chain,
                                           const std::vector<PeriodId>& ot) {
  std::vector<PeriodSlice> slices = chain.period_slices();
  Utility ou = 0;
  Utility denominator = 0;
  for (PeriodId t : ot) denominator += ctx.agg.ptsu(t);
  for (const auto& slice : slices) {
    // Occurrence periods are a subset of ot for consistent databases; the
    // binary search keeps hand-built inputs from corrupting the ratio.
    if (std::binary_search(ot.begin(), ot.end(), slice.tid)) ou += slice.pu;
  }
  if (ctx.opts.xi.admits(ou, denominator)) {
    ctx.report.patterns.push_back({chain.pattern, ou, denominator, ot});
  }
  return slices;
}

// Depth gate: recursion can still reach a qualifying pattern only if some
// single period's prefix-extension total clears the threshold there.
bool depth_gate(OnePhaseContext& ctx, const std::vector<PeriodSlice>& slices) {
  if (!ctx.opts.strategies.gdp) return true;
  for (const auto& slice : slices) {
    if (ctx.opts.xi.admits(slice.tpeu, ctx.agg.ptsu(slice.tid))) return true;
  }
  return false;
}

// Width gate, same per-period shape over the extension's accumulated bound.
bool width_gate(OnePhaseContext& ctx, const ExtensionCandidate& cand) {
  if (!ctx.opts.strategies.gwp) return true;
  for (const auto& [tid, trsu] : cand.trsu_by_period) {
    if (ctx.opts.xi.admits(trsu, ctx.agg.ptsu(tid))) return true;
  }
  return false;
}

void global_pgrowth(OnePhaseContext& ctx, const ProjectedDatabase& chain,
                    const std::vector<PeriodId>& ot) {
  if (ctx.limits.check()) return;
  ctx.report.nodes_visited++;
  if (ctx.opts.max_length != 0 && chain.pattern.length() >= ctx.opts.max_length) return;

  ExtensionScan scan = find_extension_items(chain, ctx.store, ctx.db.shelf);
  auto process = [&](const ExtensionCandidate& cand) {
    if (!width_gate(ctx, cand)) return;

    ProjectedDatabase child = extend_and_project(chain, cand.item, cand.kind, ctx.store);
    if (child.empty()) return;
    ctx.report.candidates_generated++;
    ctx.report.chains_built++;
    std::size_t child_bytes = child.bytes();
    ctx.bytes.add(child_bytes);

    std::vector<PeriodId> child_ot;
    const auto& item_shelf = ctx.db.shelf.of(cand.item);
    std::set_intersection(ot.begin(), ot.end(), item_shelf.begin(), item_shelf.end(),
                          std::back_inserter(child_ot));

    std::vector<PeriodSlice> slices = emit_if_qualified(ctx, child, child_ot);
    if (depth_gate(ctx, slices)) global_pgrowth(ctx, child, child_ot);
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

}  // namespace

MiningReport mine_osums_plus(const TemporalDatabase& db, const MiningOptions& options) {
  db.validate();
  PeriodAggregates agg = compute_ptsu(db);
  MatrixStore store = build_matrices(db, agg);
  OnePhaseContext ctx(db, store, agg, options);

  auto t0 = detail::Clock::now();
  auto singles = build_single_item_chains(ctx.store, std::nullopt);
  std::size_t singles_bytes = 0;
  for (const auto& [item, chain] : singles) singles_bytes += chain.bytes();
  ctx.bytes.add(singles_bytes);
  ctx.report.chains_built += singles.size();
  ctx.report.candidates_generated += singles.size();

  for (auto& [item, chain] : singles) {
    if (ctx.limits.check()) break;
    const std::vector<PeriodId>& ot = ctx.db.shelf.of(item);
    std::vector<PeriodSlice> slices = emit_if_qualified(ctx, chain, ot);
    if (ctx.opts.max_length != 1 && depth_gate(ctx, slices)) {
      global_pgrowth(ctx, chain, ot);
    }
    std::size_t freed = chain.bytes();
    chain.lists.clear();
    chain.lists.shrink_to_fit();
    freed -= chain.bytes();
    ctx.bytes.sub(freed);
    singles_bytes -= freed;
  }
  ctx.bytes.sub(singles_bytes);
  auto t1 = detail::Clock::now();

  MiningReport report = std::move(ctx.report);
  report.phase1_ms = detail::ms_between(t0, t1);
  report.wall_ms = report.phase1_ms;
  detail::finalize_report(report, ctx.bytes, ctx.limits);
  return report;
}

}  // namespace osum
