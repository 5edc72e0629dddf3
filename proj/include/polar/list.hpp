#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <vector>

#include "polar/sc.hpp"

namespace polar {

/// Hardware-standard LLR path-metric update: add |llr| when the decision
/// contradicts the LLR sign, otherwise leave the metric unchanged.
inline double metric_penalty(double pm, double llr, uint8_t decision) {
  bool contradicts = (llr > 0.0 && decision == 1) || (llr < 0.0 && decision == 0);
  return contradicts ? pm + std::fabs(llr) : pm;
}

/// Exact path-metric update, pm + ln(1 + exp(-(1-2u) llr)). Used with the
/// exact f mode; makes the full-list decoder a maximum-likelihood decoder.
inline double metric_penalty_exact(double pm, double llr, uint8_t decision) {
  double t = decision ? -llr : llr;
  double pen = (t >= 0.0) ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
  return pm + pen;
}

inline double apply_penalty(double pm, double llr, uint8_t decision, LlrMode mode) {
  return mode == LlrMode::exact ? metric_penalty_exact(pm, llr, decision)
                                : metric_penalty(pm, llr, decision);
}

struct ChildCandidate {
  double metric;
  int parent;  // position of the parent in the pre-epoch list order
  uint8_t decision;
};

/// Fork every path into its 0/1 children and keep the l smallest metrics.
/// Total order: metric, then parent position, then decision 0 before 1.
inline std::vector<ChildCandidate> select_survivors(const std::vector<double>& metrics,
                                                    const std::vector<double>& llrs,
                                                    std::size_t l, LlrMode mode) {
  std::vector<ChildCandidate> cand;
  cand.reserve(2 * metrics.size());
  for (std::size_t p = 0; p < metrics.size(); ++p)
    for (uint8_t d = 0; d < 2; ++d)
      cand.push_back({apply_penalty(metrics[p], llrs[p], d, mode), static_cast<int>(p), d});
  std::sort(cand.begin(), cand.end(), [](const ChildCandidate& a, const ChildCandidate& b) {
    return std::tie(a.metric, a.parent, a.decision) < std::tie(b.metric, b.parent, b.decision);
  });
  if (cand.size() > l) cand.resize(l);
  return cand;
}

struct PathState {
  std::vector<std::vector<double>> llr;     // llr[s], length 2^s, s = 0..m
  std::vector<std::vector<uint8_t>> left;   // left-sibling partial sums, s = 0..m-1
  Bits decisions;                           // u-hat, length n
  double metric = 0.0;
};

struct EpochInfo {
  std::size_t bit = 0;
  bool info = false;
  bool pruned = false;        // list was full and a sort discarded children
  int live_before = 0;
  int live_after = 0;
  std::vector<ChildCandidate> order;  // surviving children in list order (info bits)
  bool speculation_hit = false;  // survivors == every parent's sign-following child
};

/// Stepwise list-SC decoder. One instance per frame; decode order and
/// tie-breaking are the single source of truth for both the golden decoder
/// and the cycle-accurate schedule simulator.
class ListDecoder {
 public:
  ListDecoder(const CodeConfig& config, const std::vector<double>& channel_llr,
              std::size_t l, LlrMode mode = LlrMode::minsum,
              double gamma = std::numeric_limits<double>::infinity())
      : config_(config), l_(l), mode_(mode), gamma_(gamma), m_(config.m()) {
    if (l_ < 1) throw ConfigError("list size must be >= 1");
    if (channel_llr.size() != config.n) throw ConfigError("LLR length mismatch");
    config.validate();
    PathState root;
    root.llr.resize(m_ + 1);
    for (int s = 0; s <= m_; ++s) root.llr[s].assign(std::size_t{1} << s, 0.0);
    root.llr[m_] = channel_llr;
    root.left.resize(m_);
    for (int s = 0; s < m_; ++s) root.left[s].assign(std::size_t{1} << s, 0);
    root.decisions.assign(config.n, 0);
    paths_.push_back(std::move(root));
  }

  bool done() const { return bit_ == config_.n; }
  std::size_t next_bit() const { return bit_; }
  const std::vector<PathState>& paths() const { return paths_; }

  EpochInfo step() {
    const std::size_t b = bit_;
    EpochInfo ep;
    ep.bit = b;
    ep.info = !config_.frozen[b];
    ep.live_before = static_cast<int>(paths_.size());

    std::vector<double> dllr(paths_.size());
    for (std::size_t p = 0; p < paths_.size(); ++p) dllr[p] = decision_llr(paths_[p], b);

    if (!ep.info) {
      for (std::size_t p = 0; p < paths_.size(); ++p) {
        paths_[p].metric = apply_penalty(paths_[p].metric, dllr[p], 0, mode_);
        commit_bit(paths_[p], b, 0);
      }
      ep.live_after = ep.live_before;
    } else {
      std::vector<double> metrics(paths_.size());
      for (std::size_t p = 0; p < paths_.size(); ++p) metrics[p] = paths_[p].metric;
      auto survivors = select_survivors(metrics, dllr, l_, mode_);
      ep.pruned = paths_.size() * 2 > l_;
      if (ep.pruned) ep.speculation_hit = speculation_hit(survivors, dllr);

      std::vector<int> remaining(paths_.size(), 0);
      for (const auto& s : survivors) ++remaining[s.parent];
      std::vector<PathState> next;
      next.reserve(survivors.size());
      for (const auto& s : survivors) {
        if (--remaining[s.parent] == 0)
          next.push_back(std::move(paths_[s.parent]));
        else
          next.push_back(paths_[s.parent]);
        next.back().metric = s.metric;
        commit_bit(next.back(), b, s.decision);
      }
      paths_ = std::move(next);
      ep.order = std::move(survivors);

      if (std::isfinite(gamma_)) {
        double best = paths_.front().metric;
        std::size_t keep = 0;
        std::vector<ChildCandidate> kept_order;
        for (std::size_t p = 0; p < paths_.size(); ++p) {
          if (paths_[p].metric <= best + gamma_) {
            if (keep != p) paths_[keep] = std::move(paths_[p]);
            kept_order.push_back(ep.order[p]);
            ++keep;
          }
        }
        paths_.resize(keep);
        ep.order = std::move(kept_order);
      }
      ep.live_after = static_cast<int>(paths_.size());
    }
    ++bit_;
    return ep;
  }

  /// Minimum-metric survivor; ties resolved toward the earlier list position.
  const PathState& best() const {
    std::size_t arg = 0;
    for (std::size_t p = 1; p < paths_.size(); ++p)
      if (paths_[p].metric < paths_[arg].metric) arg = p;
    return paths_[arg];
  }

 private:
  double decision_llr(PathState& path, std::size_t b) {
    if (b == 0) {
      for (int s = m_ - 1; s >= 0; --s) refresh_f(path, s);
    } else {
      int z = 0;
      while (((b >> z) & 1) == 0) ++z;
      refresh_g(path, z);
      for (int s = z - 1; s >= 0; --s) refresh_f(path, s);
    }
    return path.llr[0][0];
  }

  void refresh_f(PathState& path, int s) {
    const std::size_t len = std::size_t{1} << s;
    for (std::size_t j = 0; j < len; ++j)
      path.llr[s][j] = f_update(path.llr[s + 1][j], path.llr[s + 1][j + len], mode_);
  }

  void refresh_g(PathState& path, int s) {
    const std::size_t len = std::size_t{1} << s;
    for (std::size_t j = 0; j < len; ++j)
      path.llr[s][j] =
          g_update(path.llr[s + 1][j], path.llr[s + 1][j + len], path.left[s][j]);
  }

  // Record the decision and fold it upward into the partial sums.
  void commit_bit(PathState& path, std::size_t b, uint8_t u) {
    path.decisions[b] = u;
    std::vector<uint8_t> cur{u};
    int lev = 0;
    while ((b >> lev) & 1) {
      const std::size_t len = std::size_t{1} << lev;
      std::vector<uint8_t> comb(2 * len);
      for (std::size_t j = 0; j < len; ++j) {
        comb[j] = path.left[lev][j] ^ cur[j];
        comb[j + len] = cur[j];
      }
      cur = std::move(comb);
      ++lev;
    }
    if (lev < m_) path.left[lev] = std::move(cur);
  }

  bool speculation_hit(const std::vector<ChildCandidate>& survivors,
                       const std::vector<double>& dllr) const {
    if (survivors.size() != paths_.size()) return false;
    std::vector<uint8_t> seen(paths_.size(), 0);
    for (const auto& s : survivors) {
      uint8_t better = dllr[s.parent] < 0.0 ? 1 : 0;
      if (s.decision != better || seen[s.parent]) return false;
      seen[s.parent] = 1;
    }
    return true;
  }

  const CodeConfig& config_;
  std::size_t l_;
  LlrMode mode_;
  double gamma_;
  int m_;
  std::size_t bit_ = 0;
  std::vector<PathState> paths_;
};

struct LscResult {
  Bits best;
  double best_metric = 0.0;
  std::vector<std::pair<Bits, double>> list;  // all survivors with metrics
};

inline LscResult lsc_decode(const std::vector<double>& llr, const CodeConfig& config,
                            std::size_t l, LlrMode mode = LlrMode::minsum,
                            double gamma = std::numeric_limits<double>::infinity()) {
  ListDecoder dec(config, llr, l, mode, gamma);
  while (!dec.done()) dec.step();
  LscResult res;
  res.best = dec.best().decisions;
  res.best_metric = dec.best().metric;
  for (const auto& p : dec.paths()) res.list.emplace_back(p.decisions, p.metric);
  return res;
}

/// Discards paths whose metric exceeds best + gamma; at least one survives.
/// Standalone counterpart of the in-decoder shrinkage, for the latency model.
inline std::vector<double> adaptive_prune(const std::vector<double>& metrics, double gamma) {
  if (gamma < 0.0) throw ConfigError("gamma must be >= 0");
  double best = *std::min_element(metrics.begin(), metrics.end());
  std::vector<double> kept;
  for (double v : metrics)
    if (v <= best + gamma) kept.push_back(v);
  return kept;
}

}  // namespace polar
