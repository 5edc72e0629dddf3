#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

#include "polar/code.hpp"
#include "polar/sc.hpp"

namespace polar {

/// splitmix64 step; the only PRNG primitive used anywhere, so all fixtures
/// are platform independent.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Derives the frame seed for trial `frame` so results are independent of
/// thread count and trial ordering.
inline uint64_t frame_seed(uint64_t seed, uint64_t frame) {
  uint64_t s = seed;
  uint64_t a = splitmix64(s);
  uint64_t t = a ^ (frame * 0xD6E8FEB86659FD93ull + 0x2545F4914F6CDD1Dull);
  return splitmix64(t);
}

/// Counter-based generator: splitmix64 stream plus Box-Muller gaussians.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() { return splitmix64(state_); }

  double next_uniform() {  // (0, 1)
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  uint8_t next_bit() { return static_cast<uint8_t>(next_u64() >> 63); }

  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_uniform(), u2 = next_uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct NoiseSpec {
  double snr_db = 2.0;  // Eb/N0
  double rate = 0.5;
  uint64_t seed = 1;
  bool noiseless = false;  // snr -> infinity; LLRs saturate

  double sigma2() const {
    return 1.0 / (2.0 * rate * std::pow(10.0, snr_db / 10.0));
  }
};

/// BPSK over AWGN: bit b -> 1-2b, r = s + N(0, sigma^2), LLR = 2r/sigma^2.
inline std::vector<double> transmit(const Bits& x, const NoiseSpec& spec) {
  if (spec.rate <= 0.0 || spec.rate > 1.0) throw ConfigError("rate must be in (0,1]");
  std::vector<double> llr(x.size());
  if (spec.noiseless) {
    for (std::size_t i = 0; i < x.size(); ++i)
      llr[i] = x[i] ? -kLlrSaturation : kLlrSaturation;
    return llr;
  }
  const double s2 = spec.sigma2();
  const double sigma = std::sqrt(s2);
  CounterRng rng(spec.seed);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = (x[i] ? -1.0 : 1.0) + sigma * rng.next_gaussian();
    llr[i] = 2.0 * r / s2;
  }
  return llr;
}

using DecoderFn = std::function<Bits(const std::vector<double>& llr)>;

struct FerResult {
  double fer = 0.0;
  double ber = 0.0;
  uint64_t frames = 0;
  uint64_t frame_errors = 0;
  uint64_t bit_errors = 0;
};

/// Monte-Carlo FER/BER loop: encode -> transmit -> decode, errors counted on
/// information positions only. Frame i draws everything from frame_seed(seed, i),
/// so the result is identical for any `jobs`.
inline FerResult monte_carlo_fer(const CodeConfig& config, const DecoderFn& decoder,
                                 const NoiseSpec& spec, uint64_t trials,
                                 unsigned jobs = 1) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  config.validate();
  const auto info = config.info_positions();

  auto run_range = [&](uint64_t begin, uint64_t end, FerResult& out) {
    for (uint64_t i = begin; i < end; ++i) {
      CounterRng rng(frame_seed(spec.seed, i));
      Bits u(config.n, 0);
      for (std::size_t p : info) u[p] = rng.next_bit();
      Bits x = encode(u, config);
      NoiseSpec frame_spec = spec;
      frame_spec.seed = frame_seed(spec.seed, i) ^ 0xA5A5A5A5A5A5A5A5ull;
      auto llr = transmit(x, frame_spec);
      Bits u_hat = decoder(llr);
      uint64_t bits_wrong = 0;
      for (std::size_t p : info) bits_wrong += (u_hat[p] != u[p]);
      out.bit_errors += bits_wrong;
      out.frame_errors += (bits_wrong != 0);
    }
  };

  FerResult total;
  total.frames = trials;
  if (jobs <= 1) {
    run_range(0, trials, total);
  } else {
    std::vector<FerResult> parts(jobs);
    std::vector<std::thread> threads;
    uint64_t chunk = (trials + jobs - 1) / jobs;
    for (unsigned t = 0; t < jobs; ++t) {
      uint64_t b = t * chunk, e = std::min<uint64_t>(trials, b + chunk);
      if (b >= e) break;
      threads.emplace_back(run_range, b, e, std::ref(parts[t]));
    }
    for (auto& th : threads) th.join();
    for (auto& p : parts) {
      total.frame_errors += p.frame_errors;
      total.bit_errors += p.bit_errors;
    }
  }
  total.fer = static_cast<double>(total.frame_errors) / static_cast<double>(trials);
  total.ber = static_cast<double>(total.bit_errors) /
              (static_cast<double>(trials) * static_cast<double>(config.k));
  return total;
}

}  // namespace polar
