#pragma once

#include <cmath>
#include <utility>

#include "polar/code.hpp"

namespace polar {

enum class LlrMode { minsum, exact };

constexpr double kLlrSaturation = 127.0;  // clamp for atanh-domain and noiseless channels

inline double clamp_llr(double v) {
  if (v > kLlrSaturation) return kLlrSaturation;
  if (v < -kLlrSaturation) return -kLlrSaturation;
  return v;
}

/// Check-node update. minsum: sign(a)sign(b)min(|a|,|b|);
/// exact: 2 atanh(tanh(a/2) tanh(b/2)), clamped.
inline double f_update(double a, double b, LlrMode mode = LlrMode::minsum) {
  if (mode == LlrMode::minsum) {
    double sign = ((a < 0) != (b < 0)) ? -1.0 : 1.0;
    if (a == 0.0 || b == 0.0) return 0.0;
    return sign * std::min(std::fabs(a), std::fabs(b));
  }
  double t = std::tanh(clamp_llr(a) / 2.0) * std::tanh(clamp_llr(b) / 2.0);
  return clamp_llr(2.0 * std::atanh(t));
}

/// Variable-node update with partial sum s: b + (1 - 2s) * a.
inline double g_update(double a, double b, uint8_t s) {
  return s ? b - a : b + a;
}

namespace detail {

// Recursive SC over a span. Returns (decided u bits, re-encoded codeword bits)
// for the span. Frozen bits decide 0; information bits follow the LLR sign
// with ties deciding 0.
inline std::pair<Bits, Bits> sc_recurse(const std::vector<double>& llr,
                                        const uint8_t* frozen, LlrMode mode) {
  const std::size_t len = llr.size();
  if (len == 1) {
    uint8_t u = (!frozen[0] && llr[0] < 0.0) ? 1 : 0;
    return {Bits{u}, Bits{u}};
  }
  const std::size_t half = len / 2;
  std::vector<double> child(half);
  for (std::size_t j = 0; j < half; ++j) child[j] = f_update(llr[j], llr[j + half], mode);
  auto [ul, xl] = sc_recurse(child, frozen, mode);
  for (std::size_t j = 0; j < half; ++j) child[j] = g_update(llr[j], llr[j + half], xl[j]);
  auto [ur, xr] = sc_recurse(child, frozen + half, mode);
  Bits u(len), x(len);
  for (std::size_t j = 0; j < half; ++j) {
    u[j] = ul[j];
    u[j + half] = ur[j];
    x[j] = xl[j] ^ xr[j];
    x[j + half] = xr[j];
  }
  return {u, x};
}

}  // namespace detail

/// Reference successive-cancellation decoder (depth-first recursion).
inline Bits sc_decode(const std::vector<double>& llr, const CodeConfig& config,
                      LlrMode mode = LlrMode::minsum) {
  if (llr.size() != config.n) throw ConfigError("LLR length mismatch");
  return detail::sc_recurse(llr, config.frozen.data(), mode).first;
}

}  // namespace polar
