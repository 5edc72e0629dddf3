#pragma once

#include <cmath>
#include <fstream>
#include <sstream>

#include "polar/channel.hpp"
#include "polar/overlap.hpp"

namespace polar {

/// Parametric area model. Coefficients are model inputs, not synthesis data:
/// a tree SC decoder has n - 1 processing units, the sorter and the three
/// memory banks are shared by both architectures.
struct AreaModel {
  double pu_cost = 1.0;
  double sorter_coeff = 4.0;       // sorter_cost(l) = coeff * l * log2(max(l,2))
  double memory_bits_per_unit = 64.0;
  double llr_bits = 6.0;           // Q; memory_cost = l * n * (Q+1) / bits_per_unit
  double frequency_factor = 1.0;   // optional pipelined-sorter speedup, >= 1

  double sc_core(std::size_t n) const {
    return (static_cast<double>(n) - 1.0) * pu_cost;
  }
  double sorter_cost(std::size_t l) const {
    double ll = static_cast<double>(std::max<std::size_t>(l, 2));
    return sorter_coeff * static_cast<double>(l) * std::log2(ll);
  }
  double memory_cost(std::size_t n, std::size_t l) const {
    return static_cast<double>(l) * static_cast<double>(n) * (llr_bits + 1.0) /
           memory_bits_per_unit;
  }
  double dup_overhead(const StagePlan& plan) const {
    double pus = 0.0;
    for (int s = 1; s <= plan.m; ++s)
      pus += static_cast<double>(plan.dup[s] - 1) * static_cast<double>(1u << (s - 1));
    return pus * pu_cost;
  }
};

/// Information throughput in bits per cycle, scaled by frequency when given.
inline double throughput(const CodeConfig& config, long total_cycles,
                         double frequency = 0.0) {
  if (total_cycles < 1) throw ConfigError("total cycles must be >= 1");
  double bpc = static_cast<double>(config.k) / static_cast<double>(total_cycles);
  return frequency > 0.0 ? bpc * frequency : bpc;
}

enum class Architecture { conventional, overlapped };

inline double area(Architecture arch, const AreaModel& model, std::size_t n, std::size_t l,
                   const StagePlan* plan = nullptr) {
  double shared = model.sorter_cost(l) + model.memory_cost(n, l);
  if (arch == Architecture::conventional)
    return static_cast<double>(l) * model.sc_core(n) + shared;
  StagePlan local;
  if (!plan) {
    local = build_stage_plan(n, l);
    plan = &local;
  }
  return model.sc_core(n) + model.dup_overhead(*plan) + shared;
}

struct EfficiencyReport {
  double throughput = 0.0;
  double area = 0.0;
  double e = 0.0;  // throughput / area
  double ratio_vs_conventional = 1.0;
};

namespace detail {

/// Overlapped-architecture cycle count for a scheme at (config, l). The
/// closed forms cover plain/multidecision/irregular; plcas and adaptive are
/// data dependent and are averaged over a few simulated frames.
inline double overlapped_cycles(const CodeConfig& config, std::size_t l,
                                const SchemeSpec& scheme, uint64_t seed = 7) {
  long base = baseline_cycles(config, scheme.kind);
  switch (scheme.kind) {
    case Scheme::plain:
      return static_cast<double>(base + overhead_plain(config.k, l));
    case Scheme::multidecision:
      return static_cast<double>(base + overhead_regular_md(config.k, l, scheme.md_width));
    case Scheme::irregular:
      return static_cast<double>(base + overhead_irregular(count_S(config), l));
    default: {
      constexpr int kFrames = 5;
      double total = 0.0;
      NoiseSpec spec{2.0, config.rate(), seed, false};
      for (int i = 0; i < kFrames; ++i) {
        CounterRng rng(frame_seed(seed, i));
        Bits u(config.n, 0);
        for (std::size_t p : config.info_positions()) u[p] = rng.next_bit();
        NoiseSpec fs = spec;
        fs.seed = frame_seed(seed, i) ^ 0x5DEECE66Dull;
        auto llr = transmit(encode(u, config), fs);
        total += static_cast<double>(simulate(llr, config, l, scheme).report.total_cycles);
      }
      return total / kFrames;
    }
  }
}

}  // namespace detail

/// e_overlapped / e_conventional at equal clock frequency:
/// (C_conv / C_over) * (A_conv / A_over).
inline double efficiency_ratio(const CodeConfig& config, std::size_t l,
                               const SchemeSpec& scheme, const AreaModel& model,
                               uint64_t seed = 7) {
  double c_conv = static_cast<double>(baseline_cycles(config, scheme.kind));
  double c_over = detail::overlapped_cycles(config, l, scheme, seed);
  double a_conv = area(Architecture::conventional, model, config.n, l);
  double a_over = area(Architecture::overlapped, model, config.n, l);
  return (c_conv / c_over) * (a_conv / a_over) * model.frequency_factor;
}

inline EfficiencyReport make_efficiency_report(const CodeConfig& config, long total_cycles,
                                               double area_units, double ratio) {
  EfficiencyReport rep;
  rep.throughput = throughput(config, total_cycles);
  rep.area = area_units;
  rep.e = rep.throughput / rep.area;
  rep.ratio_vs_conventional = ratio;
  return rep;
}

struct Fig5Row {
  double rate = 0.0;
  Scheme scheme = Scheme::plain;
  double ratio_lower = 0.0;
  double ratio_upper = 0.0;
};

/// Efficiency-ratio sweep over rate. Non-PLCAS schemes have equal bounds;
/// the PLCAS band spans all-miss (plain) to all-hit (fill-only) cycles.
inline std::vector<Fig5Row> fig5_table(std::size_t n, std::size_t l,
                                       const std::vector<double>& rates,
                                       const std::vector<SchemeSpec>& schemes,
                                       const AreaModel& model, uint64_t seed = 7) {
  std::vector<Fig5Row> rows;
  double a_conv = area(Architecture::conventional, model, n, l);
  double a_over = area(Architecture::overlapped, model, n, l);
  double area_ratio = (a_conv / a_over) * model.frequency_factor;
  for (double rate : rates) {
    auto k = static_cast<std::size_t>(rate * static_cast<double>(n) + 0.5);
    if (k < static_cast<std::size_t>(log2_exact(l)) + 1 || k > n) continue;
    CodeConfig config(n, k);
    double c_conv = static_cast<double>(baseline_cycles(config));
    for (const auto& scheme : schemes) {
      Fig5Row row{rate, scheme.kind, 0.0, 0.0};
      if (scheme.kind == Scheme::plcas) {
        auto bounds = plcas_bounds(k, l);
        row.ratio_lower = (c_conv / (c_conv + bounds.upper)) * area_ratio;
        row.ratio_upper = (c_conv / (c_conv + bounds.lower)) * area_ratio;
      } else {
        double r = efficiency_ratio(config, l, scheme, model, seed);
        row.ratio_lower = row.ratio_upper = r;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

/// Loads AreaModel coefficients from a flat key=value file.
inline AreaModel load_area_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open area model file: " + path);
  AreaModel model;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("bad area model line: " + line);
    std::string key = line.substr(0, eq);
    double value = std::stod(line.substr(eq + 1));
    if (key == "pu_cost") model.pu_cost = value;
    else if (key == "sorter_coeff") model.sorter_coeff = value;
    else if (key == "memory_bits_per_unit") model.memory_bits_per_unit = value;
    else if (key == "llr_bits") model.llr_bits = value;
    else if (key == "frequency_factor") model.frequency_factor = value;
    else throw ConfigError("unknown area model key: " + key);
  }
  return model;
}

}  // namespace polar
