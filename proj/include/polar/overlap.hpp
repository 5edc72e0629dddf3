#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polar/fastssc.hpp"
#include "polar/latency.hpp"
#include "polar/list.hpp"

namespace polar {

/// Physical stage instances of the single shared SC decoder. Stage s
/// (1 = bit side, m = channel side) has dup[s] instances. For l paths with
/// l <= 2^i - 1, a total of 2^{i-1} - 1 duplicate instances are added,
/// allocated geometrically toward the bit side: stage s gains 2^{i-1-s}
/// copies for s < i.
struct StagePlan {
  int m = 0;
  std::vector<int> dup;  // index 1..m

  long extra_instances() const {
    long total = 0;
    for (int s = 1; s <= m; ++s) total += dup[s] - 1;
    return total;
  }
};

inline StagePlan build_stage_plan(std::size_t n, std::size_t l) {
  if (l < 1) throw ConfigError("list size must be >= 1");
  const int m = log2_exact(n);
  int i = 1;
  while ((std::size_t{1} << i) - 1 < l) ++i;
  StagePlan plan;
  plan.m = m;
  plan.dup.assign(m + 1, 1);
  for (int s = 1; s <= m && s < i; ++s) plan.dup[s] = 1 + (1 << (i - 1 - s));
  return plan;
}

enum class TraceOp { F, G, DECIDE, STALL, SORT };

inline const char* trace_op_name(TraceOp op) {
  switch (op) {
    case TraceOp::F: return "F";
    case TraceOp::G: return "G";
    case TraceOp::DECIDE: return "DECIDE";
    case TraceOp::STALL: return "STALL";
    default: return "SORT";
  }
}

struct TraceEvent {
  long cycle = 0;
  int stage = 0;     // 0 = decision/sort side events, 1..m = PU stages
  int instance = 0;
  long path = 0;     // -1 for SORT
  TraceOp op = TraceOp::F;
  long bit = -1;     // bit index the event belongs to (not exported to CSV)
};

struct ScheduleTrace {
  std::vector<TraceEvent> events;

  std::string to_csv() const {
    std::ostringstream os;
    os << "cycle,stage,instance,path,op\n";
    for (const auto& e : events)
      os << e.cycle << ',' << e.stage << ',' << e.instance << ',' << e.path << ','
         << trace_op_name(e.op) << '\n';
    return os.str();
  }
};

struct LatencyReport {
  long total_cycles = 0;
  long baseline_cycles = 0;
  long L_p = 0;  // pipeline fill (final path stagger)
  long L_w = 0;  // cumulative stall cycles of the lead path
  long L_m = 0;  // L_p + L_w == total - baseline
};

struct SchemeSpec {
  Scheme kind = Scheme::plain;
  std::size_t md_width = 4;  // multidecision only
  double gamma = 3.0;        // adaptive only

  static SchemeSpec plain() { return {Scheme::plain, 4, 3.0}; }
  static SchemeSpec multidecision(std::size_t m) { return {Scheme::multidecision, m, 3.0}; }
  static SchemeSpec irregular() { return {Scheme::irregular, 4, 3.0}; }
  static SchemeSpec plcas() { return {Scheme::plcas, 4, 3.0}; }
  static SchemeSpec adaptive(double gamma) { return {Scheme::adaptive, 4, gamma}; }
};

struct SimResult {
  Bits u_hat;
  double best_metric = 0.0;
  ScheduleTrace trace;
  LatencyReport report;
  StagePlan plan;
  std::vector<int> live_profile;  // live paths entering each sort epoch
};

/// Conventional architecture reference: l lockstep SC decoders, one stage
/// activation per cycle, decisions and the combinational sorter free of
/// charge. The decision grouping of a scheme changes epochs, not cycles,
/// so every scheme shares the tree-SC schedule length.
inline long baseline_cycles(const CodeConfig& config, Scheme /*scheme*/ = Scheme::plain) {
  return 2 * (static_cast<long>(config.n) - 1);
}

/// Number of decision epochs after the list is full, per scheme.
inline std::size_t epoch_count(const CodeConfig& config, Scheme scheme, std::size_t l,
                               std::size_t md_width = 4) {
  std::size_t g0 = 0;
  while ((std::size_t{2} << g0) <= l) ++g0;  // g0 = floor(log2 l)
  std::size_t tail = config.k > g0 ? config.k - g0 : 0;
  switch (scheme) {
    case Scheme::multidecision:
      return (tail + md_width - 1) / md_width;
    case Scheme::irregular: {
      std::size_t S = count_S(config);
      return S > g0 ? S - g0 : 0;
    }
    default:
      return tail;
  }
}

namespace detail {

// Stage activation list for bit b: descent F chain for bit 0, otherwise one
// G at stage ctz(b)+1 followed by the F chain down to stage 1.
inline std::vector<int> segment_stages(std::size_t b, int m) {
  std::vector<int> seg;
  if (b == 0) {
    for (int s = m; s >= 1; --s) seg.push_back(s);
  } else {
    int z = 0;
    while (((b >> z) & 1) == 0) ++z;
    for (int s = z + 1; s >= 1; --s) seg.push_back(s);
  }
  return seg;
}

}  // namespace detail

/// Cycle-accurate simulation of the path-overlapping architecture. Decoding
/// decisions come from the same ListDecoder engine as the golden decoder, so
/// the output is bit-identical by construction; this routine produces the
/// pipeline timetable and the measured latency overhead.
inline SimResult simulate(const std::vector<double>& channel_llr, const CodeConfig& config,
                          std::size_t l, const SchemeSpec& scheme,
                          LlrMode mode = LlrMode::minsum) {
  const int m = config.m();
  const std::size_t n = config.n;
  double gamma = scheme.kind == Scheme::adaptive ? scheme.gamma
                                                 : std::numeric_limits<double>::infinity();
  ListDecoder dec(config, channel_llr, l, mode, gamma);

  std::size_t g0 = 0;
  while ((std::size_t{2} << g0) <= l) ++g0;

  // Sort-epoch bits: information bits past the list-growth prefix, regrouped
  // per scheme. The final epoch never stalls anything downstream.
  std::vector<long> epoch_end_bits;
  if (scheme.kind == Scheme::irregular) {
    auto tree = decompose(config.frozen);
    auto leaves = tree.leaves();
    for (std::size_t i = g0; i < leaves.size(); ++i)
      epoch_end_bits.push_back(static_cast<long>(leaves[i]->start + leaves[i]->len - 1));
  } else {
    std::vector<long> tail_info;
    std::size_t idx = 0;
    for (std::size_t b = 0; b < n; ++b)
      if (!config.frozen[b]) {
        if (idx >= g0) tail_info.push_back(static_cast<long>(b));
        ++idx;
      }
    if (scheme.kind == Scheme::multidecision) {
      if (scheme.md_width < 1) throw ConfigError("decision width m must be >= 1");
      for (std::size_t i = 0; i < tail_info.size(); i += scheme.md_width)
        epoch_end_bits.push_back(tail_info[std::min(i + scheme.md_width, tail_info.size()) - 1]);
    } else {
      epoch_end_bits = tail_info;
    }
  }
  std::vector<uint8_t> is_epoch_end(n, 0), is_last_epoch(n, 0);
  for (long b : epoch_end_bits) is_epoch_end[b] = 1;
  if (!epoch_end_bits.empty()) is_last_epoch[epoch_end_bits.back()] = 1;

  SimResult res;
  res.plan = build_stage_plan(n, l);

  std::vector<long> ids{0};
  long next_id = 1;
  long lead_start = 0;  // cycle at which the position-0 path starts the current segment
  long last_decide = 0;
  long stall_total = 0;
  long final_stagger = 0;

  std::map<std::pair<long, int>, int> slot_use;  // (cycle, stage) -> next instance

  for (std::size_t b = 0; b < n; ++b) {
    auto seg = detail::segment_stages(b, m);
    const long c = static_cast<long>(seg.size());
    const long v = static_cast<long>(ids.size());
    for (long q = 0; q < v; ++q) {
      for (long j = 0; j < c; ++j) {
        TraceOp op = (b != 0 && j == 0) ? TraceOp::G : TraceOp::F;
        long cyc = lead_start + q + j;
        int inst = slot_use[{cyc, seg[j]}]++;
        res.trace.events.push_back(
            {cyc, seg[j], inst, ids[q], op, static_cast<long>(b)});
      }
      res.trace.events.push_back({lead_start + q + c - 1, 0, static_cast<int>(ids[q]),
                                  ids[q], TraceOp::DECIDE, static_cast<long>(b)});
    }
    last_decide = lead_start + (v - 1) + c - 1;
    final_stagger = v - 1;

    EpochInfo ep = dec.step();
    if (!ep.info) {
      lead_start += c;
      continue;
    }

    // Persistent path ids: the first surviving child inherits its parent's
    // id, any further child enters the pipeline under a fresh id.
    std::vector<long> new_ids(ep.order.size());
    std::vector<uint8_t> used(v, 0);
    for (std::size_t q = 0; q < ep.order.size(); ++q) {
      int p = ep.order[q].parent;
      if (!used[p]) {
        used[p] = 1;
        new_ids[q] = ids[p];
      } else {
        new_ids[q] = next_id++;
      }
    }
    ids = std::move(new_ids);

    long stall = 0;
    if (is_epoch_end[b] && !is_last_epoch[b]) {
      bool skip = scheme.kind == Scheme::plcas && ep.speculation_hit;
      if (!skip) stall = v - 1;
    }
    if (is_epoch_end[b]) res.live_profile.push_back(static_cast<int>(v));

    bool sorted_here = (ep.pruned && l > 1) || stall > 0;
    if (sorted_here)
      res.trace.events.push_back({last_decide, 0, -1, -1, TraceOp::SORT,
                                  static_cast<long>(b)});
    if (stall > 0) {
      // Each path idles from the cycle after its parent's decision until its
      // restaggered restart. (On stall-free sorting epochs the pipeline slots
      // are reassigned without cost; the speculative or mid-epoch work is
      // already in flight, so no idle cycles are emitted.)
      for (std::size_t q = 0; q < ids.size(); ++q) {
        long parent_decide = lead_start + ep.order[q].parent + c - 1;
        long restart = lead_start + c + stall + static_cast<long>(q);
        for (long cyc = parent_decide + 1; cyc < restart; ++cyc)
          res.trace.events.push_back({cyc, 0, static_cast<int>(ids[q]), ids[q],
                                      TraceOp::STALL, static_cast<long>(b)});
      }
      stall_total += stall;
    }
    lead_start += c + stall;
  }

  const auto& best = dec.best();
  res.u_hat = best.decisions;
  res.best_metric = best.metric;

  res.report.total_cycles = last_decide + 1;
  res.report.baseline_cycles = baseline_cycles(config, scheme.kind);
  res.report.L_w = stall_total;
  res.report.L_p = final_stagger;
  res.report.L_m = res.report.total_cycles - res.report.baseline_cycles;
  if (res.report.L_m != res.report.L_w + res.report.L_p)
    throw std::logic_error("latency accounting mismatch: L_m != L_w + L_p");
  return res;
}

struct TraceDiagnostics {
  bool ok = true;
  std::string message;
  std::vector<int> max_occupancy;  // per logical stage, index 1..m
};

/// Structural audit of a schedule trace: exclusive stage instances, per-stage
/// occupancy within the plan, one-cycle decision stagger, and stalls only at
/// sorting epochs (information bits, when a config is supplied).
inline TraceDiagnostics verify_trace(const ScheduleTrace& trace, const StagePlan& plan,
                                     std::size_t l, const CodeConfig* config = nullptr) {
  TraceDiagnostics diag;
  diag.max_occupancy.assign(plan.m + 1, 0);
  auto fail = [&](const std::string& msg) {
    diag.ok = false;
    if (!diag.message.empty()) diag.message += "; ";
    diag.message += msg;
  };

  std::map<std::tuple<long, int, int>, int> seen;
  std::map<std::pair<long, int>, int> occupancy;
  std::map<long, std::vector<long>> decide_cycles;  // bit -> cycles
  std::vector<long> stall_bits, sort_bits;

  for (const auto& e : trace.events) {
    if (++seen[{e.cycle, e.stage, e.instance}] > 1)
      fail("duplicate resource claim at cycle " + std::to_string(e.cycle) + " stage " +
           std::to_string(e.stage) + " instance " + std::to_string(e.instance));
    if (e.stage >= 1) {
      if (e.stage > plan.m) {
        fail("stage index out of range");
        continue;
      }
      int occ = ++occupancy[{e.cycle, e.stage}];
      diag.max_occupancy[e.stage] = std::max(diag.max_occupancy[e.stage], occ);
      if (occ > plan.dup[e.stage])
        fail("stage " + std::to_string(e.stage) + " occupancy " + std::to_string(occ) +
             " exceeds plan " + std::to_string(plan.dup[e.stage]) + " at cycle " +
             std::to_string(e.cycle));
    }
    if (e.op == TraceOp::DECIDE) decide_cycles[e.bit].push_back(e.cycle);
    if (e.op == TraceOp::STALL) stall_bits.push_back(e.bit);
    if (e.op == TraceOp::SORT) sort_bits.push_back(e.bit);
  }

  for (auto& [bit, cycles] : decide_cycles) {
    std::sort(cycles.begin(), cycles.end());
    if (cycles.size() > l)
      fail("more than l concurrent paths decide bit " + std::to_string(bit));
    for (std::size_t i = 1; i < cycles.size(); ++i)
      if (cycles[i] != cycles[i - 1] + 1)
        fail("decision stagger of bit " + std::to_string(bit) + " is not one cycle");
  }
  for (long b : stall_bits) {
    if (std::find(sort_bits.begin(), sort_bits.end(), b) == sort_bits.end())
      fail("stall at bit " + std::to_string(b) + " without a sorting epoch");
  }
  if (config) {
    for (long b : sort_bits)
      if (config->frozen[b]) fail("sorting epoch at frozen bit " + std::to_string(b));
  }
  return diag;
}

}  // namespace polar
