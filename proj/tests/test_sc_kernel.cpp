#include <catch2/catch_amalgamated.hpp>

#include "polar/channel.hpp"
#include "polar/list.hpp"
#include "polar/sc.hpp"

using namespace polar;
using Catch::Approx;

TEST_CASE("f_update basics") {
  CHECK(f_update(0.0, 3.0, LlrMode::minsum) == 0.0);
  CHECK(f_update(0.0, 3.0, LlrMode::exact) == Approx(0.0).margin(1e-12));
  CHECK(f_update(3.0, -5.0, LlrMode::minsum) == -3.0);
  CHECK(f_update(-2.0, -7.0, LlrMode::minsum) == 2.0);
  // scalar numeric oracle: 2 atanh(tanh(0.5)^2)
  CHECK(f_update(1.0, 1.0, LlrMode::exact) == Approx(0.433780830483997).epsilon(1e-9));
}

TEST_CASE("g_update basics") {
  CHECK(g_update(1.5, 2.0, 0) == 3.5);
  CHECK(g_update(1.5, 2.0, 1) == 0.5);
  CHECK(g_update(2.5, -1.0, 1) == -3.5);
}

TEST_CASE("noiseless all-zero frame decodes to zero") {
  CodeConfig config(16, 8);
  std::vector<double> llr(16, kLlrSaturation);
  CHECK(sc_decode(llr, config) == Bits(16, 0));
}

TEST_CASE("(8,4) hand-executed golden fixture") {
  // Straight-line execution of the minsum recursion on paper, frozen
  // {0,1,2,4}: bit3 sees -7, bit5 sees +4, bit6 sees -6, bit7 sees +17.
  CodeConfig config(8, 4);
  std::vector<double> llr = {1.0, -2.0, 3.0, -4.0, 0.5, 1.5, -2.5, 3.5};
  Bits expected = {0, 0, 0, 1, 0, 0, 1, 0};
  CHECK(sc_decode(llr, config, LlrMode::minsum) == expected);
}

TEST_CASE("decoding an unnoised codeword returns the message") {
  CounterRng rng(0x5C);
  for (std::size_t n : {4, 16, 64, 256}) {
    CodeConfig config(n, n / 2);
    for (int t = 0; t < 25; ++t) {
      Bits u(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        if (!config.frozen[i]) u[i] = rng.next_bit();
      auto x = encode(u, config);
      std::vector<double> llr(n);
      for (std::size_t i = 0; i < n; ++i) llr[i] = x[i] ? -kLlrSaturation : kLlrSaturation;
      CHECK(sc_decode(llr, config) == u);
      CHECK(sc_decode(llr, config, LlrMode::exact) == u);
    }
  }
}

TEST_CASE("sc_decode equals the list decoder with list size 1") {
  CounterRng rng(0x11ABC);
  CodeConfig config(64, 32);
  NoiseSpec spec{1.0, 0.5, 0, false};
  for (int t = 0; t < 1000; ++t) {
    Bits u(64, 0);
    for (std::size_t i = 0; i < 64; ++i)
      if (!config.frozen[i]) u[i] = rng.next_bit();
    spec.seed = frame_seed(0xFEED, t);
    auto llr = transmit(encode(u, config), spec);
    CHECK(sc_decode(llr, config) == lsc_decode(llr, config, 1).best);
  }
}

TEST_CASE("minsum codeword-flip equivariance") {
  // f(-a,-b) = f(a,b) and g(-a,-b,1-s) = g(a,b,s), so flipping the channel
  // LLR signs on the support of a codeword encode(v) adds v to the decisions.
  // Negating everything is the v = e_{n-1} instance (all-ones codeword).
  CodeConfig config(32, 16);
  NoiseSpec spec{2.0, 0.5, 99, false};
  CounterRng rng(0xF00D);
  for (int t = 0; t < 200; ++t) {
    spec.seed = frame_seed(0x515, t);
    auto llr = transmit(Bits(32, 0), spec);
    Bits v(32, 0);
    for (std::size_t i = 0; i < 32; ++i)
      if (!config.frozen[i]) v[i] = rng.next_bit();
    auto xv = encode(v, config);
    auto flipped = llr;
    for (std::size_t i = 0; i < 32; ++i)
      if (xv[i]) flipped[i] = -flipped[i];
    auto u = sc_decode(llr, config);
    auto u_flip = sc_decode(flipped, config);
    for (std::size_t i = 0; i < 32; ++i) CHECK(u_flip[i] == (u[i] ^ v[i]));
  }
}

TEST_CASE("llr length is validated") {
  CodeConfig config(8, 4);
  CHECK_THROWS_AS(sc_decode(std::vector<double>(4, 1.0), config), ConfigError);
}
