#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace polar {

using Bits = std::vector<uint8_t>;

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline int log2_exact(std::size_t v) {
  if (!is_power_of_two(v)) throw ConfigError("value is not a power of two");
  int s = 0;
  while ((std::size_t{1} << s) < v) ++s;
  return s;
}

/// Bhattacharyya parameter of synthesized channel `index` for a BEC with
/// erasure probability `eps`, natural (non-bit-reversed) ordering.
/// Bits of the index are consumed MSB first: 1 -> z^2 (better channel),
/// 0 -> 2z - z^2 (worse channel).
inline double bhattacharyya(std::size_t index, int m, double eps) {
  double z = eps;
  for (int b = m - 1; b >= 0; --b) {
    if ((index >> b) & 1)
      z = z * z;
    else
      z = 2.0 * z - z * z;
  }
  return z;
}

/// Frozen-set construction for a BEC with erasure probability design_param.
/// Returns mask[i] = true for frozen positions. The k most reliable channels
/// (smallest Bhattacharyya parameter) carry information; ties break toward
/// the lower channel index so golden vectors are stable.
inline Bits construct_frozen_set(std::size_t n, std::size_t k, double design_param = 0.5) {
  if (!is_power_of_two(n) || n < 2) throw ConfigError("block length must be a power of two >= 2");
  if (k < 1 || k > n) throw ConfigError("dimension k must satisfy 1 <= k <= n");
  const int m = log2_exact(n);
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = bhattacharyya(i, m, design_param);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return z[a] < z[b]; });
  Bits mask(n, 1);
  for (std::size_t i = 0; i < k; ++i) mask[order[i]] = 0;
  return mask;
}

struct CodeConfig {
  std::size_t n = 0;
  std::size_t k = 0;
  Bits frozen;  // frozen[i] = 1 -> position i is frozen to zero
  double design_param = 0.5;

  CodeConfig() = default;
  CodeConfig(std::size_t n_, std::size_t k_, double design_param_ = 0.5)
      : n(n_), k(k_), frozen(construct_frozen_set(n_, k_, design_param_)),
        design_param(design_param_) {}

  int m() const { return log2_exact(n); }
  double rate() const { return static_cast<double>(k) / static_cast<double>(n); }

  std::vector<std::size_t> info_positions() const {
    std::vector<std::size_t> pos;
    pos.reserve(k);
    for (std::size_t i = 0; i < n; ++i)
      if (!frozen[i]) pos.push_back(i);
    return pos;
  }

  void validate() const {
    if (!is_power_of_two(n) || n < 2) throw ConfigError("invalid block length");
    if (frozen.size() != n) throw ConfigError("frozen mask length mismatch");
    std::size_t nf = 0;
    for (uint8_t f : frozen) nf += (f != 0);
    if (nf != n - k) throw ConfigError("frozen mask population mismatch");
  }
};

/// Frozen mask as an ASCII string, '0' = information, '1' = frozen.
inline std::string mask_to_string(const Bits& mask) {
  std::string s(mask.size(), '0');
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) s[i] = '1';
  return s;
}

inline Bits mask_from_string(const std::string& s) {
  Bits mask(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw ConfigError("mask string must be '0'/'1'");
    mask[i] = (s[i] == '1');
  }
  return mask;
}

/// x = u * F^{(x)m} over GF(2), in-place butterfly, natural bit order.
inline Bits encode(const Bits& u, const CodeConfig& config) {
  if (u.size() != config.n) throw ConfigError("message length mismatch");
  for (std::size_t i = 0; i < config.n; ++i)
    if (config.frozen[i] && u[i]) throw ConfigError("frozen position carries a nonzero bit");
  Bits x = u;
  const std::size_t n = config.n;
  for (std::size_t half = 1; half < n; half <<= 1)
    for (std::size_t blk = 0; blk < n; blk += 2 * half)
      for (std::size_t j = 0; j < half; ++j)
        x[blk + j] ^= x[blk + j + half];
  return x;
}

/// Places k information bits into a length-n message word, zeros elsewhere.
inline Bits expand_message(const Bits& info_bits, const CodeConfig& config) {
  if (info_bits.size() != config.k) throw ConfigError("info bit count mismatch");
  Bits u(config.n, 0);
  std::size_t j = 0;
  for (std::size_t i = 0; i < config.n; ++i)
    if (!config.frozen[i]) u[i] = info_bits[j++];
  return u;
}

}  // namespace polar
