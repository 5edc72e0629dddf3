#pragma once

#include <cstdint>
#include <vector>

#include "polar/code.hpp"
#include "polar/fastssc.hpp"

namespace polar {

inline void check_overhead_domain(std::size_t k, std::size_t l) {
  if (!is_power_of_two(l)) throw ConfigError("list size must be a power of two here");
  if (static_cast<std::size_t>(log2_exact(l)) > k)
    throw ConfigError("log2(list size) must not exceed k");
}

/// Total overhead of the plain path-overlapping scheme: (k - log2 l)(l - 1).
inline long overhead_plain(std::size_t k, std::size_t l) {
  check_overhead_domain(k, l);
  return static_cast<long>(k - log2_exact(l)) * static_cast<long>(l - 1);
}

/// Regular m-bit multi-decision: ceil((k - log2 l)/m) * (l - 1).
inline long overhead_regular_md(std::size_t k, std::size_t l, std::size_t m) {
  check_overhead_domain(k, l);
  if (m < 1) throw ConfigError("decision width m must be >= 1");
  std::size_t epochs = (k - log2_exact(l) + m - 1) / m;
  return static_cast<long>(epochs) * static_cast<long>(l - 1);
}

/// Irregular multi-decision over S constituent codes: (S - log2 l)(l - 1).
inline long overhead_irregular(std::size_t S, std::size_t l) {
  if (!is_power_of_two(l)) throw ConfigError("list size must be a power of two here");
  if (S < static_cast<std::size_t>(log2_exact(l)))
    throw ConfigError("S must be at least log2(list size)");
  return static_cast<long>(S - log2_exact(l)) * static_cast<long>(l - 1);
}

struct PlcasBounds {
  long lower = 0;  // all speculation hits: pipeline fill only
  long upper = 0;  // all misses: plain path-overlapping
};

inline PlcasBounds plcas_bounds(std::size_t k, std::size_t l) {
  check_overhead_domain(k, l);
  return {static_cast<long>(l - 1), overhead_plain(k, l)};
}

/// Adaptive-list overhead from a live-path profile: the profile holds the
/// live path count entering each sort epoch (the first entry is the full
/// list, i.e. the pipeline fill); overhead = sum of (live - 1).
inline long overhead_adaptive(const std::vector<int>& live_path_profile) {
  long total = 0;
  for (int live : live_path_profile) {
    if (live < 1) throw ConfigError("live path count must be >= 1");
    total += live - 1;
  }
  return total;
}

enum class Scheme { plain, multidecision, irregular, plcas, adaptive };

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::plain: return "plain";
    case Scheme::multidecision: return "multidecision";
    case Scheme::irregular: return "irregular";
    case Scheme::plcas: return "plcas";
    default: return "adaptive";
  }
}

struct Fig4Row {
  double rate = 0.0;
  Scheme scheme = Scheme::plain;
  std::size_t k = 0;
  std::size_t l = 0;
  std::size_t m_or_S = 0;
  long overhead_cycles = 0;
};

/// Closed-form latency-overhead sweep over code rate; the irregular rows take
/// S from the constituent-code decomposition of each rate's construction.
inline std::vector<Fig4Row> fig4_table(std::size_t n, std::size_t l,
                                       const std::vector<double>& rates,
                                       const std::vector<Scheme>& schemes,
                                       std::size_t md_width = 4,
                                       double design_param = 0.5) {
  std::vector<Fig4Row> rows;
  for (double rate : rates) {
    auto k = static_cast<std::size_t>(rate * static_cast<double>(n) + 0.5);
    if (k < static_cast<std::size_t>(log2_exact(l)) + 1 || k > n) continue;
    for (Scheme s : schemes) {
      Fig4Row row{rate, s, k, l, 0, 0};
      switch (s) {
        case Scheme::plain:
          row.m_or_S = 1;
          row.overhead_cycles = overhead_plain(k, l);
          break;
        case Scheme::multidecision:
          row.m_or_S = md_width;
          row.overhead_cycles = overhead_regular_md(k, l, md_width);
          break;
        case Scheme::irregular: {
          std::size_t S = count_S(CodeConfig(n, k, design_param));
          row.m_or_S = S;
          row.overhead_cycles = overhead_irregular(S, l);
          break;
        }
        default:
          continue;  // plcas/adaptive have no single closed-form row
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace polar
