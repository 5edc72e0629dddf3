#include <catch2/catch_amalgamated.hpp>

#include "polar/channel.hpp"
#include "polar/code.hpp"

using namespace polar;

namespace {

// Independent encoder oracle: explicit Kronecker power G = F^{(x)m}, then
// x = u * G over GF(2).
std::vector<Bits> kronecker_generator(std::size_t n) {
  std::vector<Bits> g{{1}};
  while (g.size() < n) {
    std::size_t half = g.size();
    std::vector<Bits> next(2 * half, Bits(2 * half, 0));
    for (std::size_t r = 0; r < half; ++r)
      for (std::size_t c = 0; c < half; ++c) {
        next[r][c] = g[r][c];
        next[r + half][c] = g[r][c];
        next[r + half][c + half] = g[r][c];
      }
    g = std::move(next);
  }
  return g;
}

Bits matmul_gf2(const Bits& u, const std::vector<Bits>& g) {
  Bits x(u.size(), 0);
  for (std::size_t r = 0; r < u.size(); ++r)
    if (u[r])
      for (std::size_t c = 0; c < u.size(); ++c) x[c] ^= g[r][c];
  return x;
}

Bits random_message(const CodeConfig& config, CounterRng& rng) {
  Bits u(config.n, 0);
  for (std::size_t i = 0; i < config.n; ++i)
    if (!config.frozen[i]) u[i] = rng.next_bit();
  return u;
}

}  // namespace

TEST_CASE("construction rejects bad parameters") {
  CHECK_THROWS_AS(construct_frozen_set(12, 4), ConfigError);
  CHECK_THROWS_AS(construct_frozen_set(8, 0), ConfigError);
  CHECK_THROWS_AS(construct_frozen_set(8, 9), ConfigError);
}

TEST_CASE("rate-1 code freezes nothing") {
  auto mask = construct_frozen_set(8, 8, 0.5);
  CHECK(mask_to_string(mask) == "00000000");
}

TEST_CASE("single information bit lands on channel 7") {
  // Bhattacharyya recursion z <- {2z - z^2, z^2} over three levels; channel 7
  // squares every time and is strictly the most reliable.
  auto mask = construct_frozen_set(8, 1, 0.5);
  CHECK(mask_to_string(mask) == "11111110");
}

TEST_CASE("(8,4) golden frozen set") {
  // Brute-force Bhattacharyya oracle, erasure 0.5: sorted reliabilities put
  // the information set at {3, 5, 6, 7}.
  auto mask = construct_frozen_set(8, 4, 0.5);
  CHECK(mask_to_string(mask) == "11101000");

  std::vector<double> z(8);
  for (std::size_t i = 0; i < 8; ++i) z[i] = bhattacharyya(i, 3, 0.5);
  for (std::size_t info : {3, 5, 6, 7})
    for (std::size_t froz : {0, 1, 2, 4}) CHECK(z[info] < z[froz]);
}

TEST_CASE("mask round-trips through its string form") {
  auto mask = construct_frozen_set(64, 32);
  CHECK(mask_from_string(mask_to_string(mask)) == mask);
  CHECK_THROWS_AS(mask_from_string("01x"), ConfigError);
}

TEST_CASE("encode trivia") {
  CodeConfig config(8, 8);
  Bits zero(8, 0);
  CHECK(encode(zero, config) == zero);

  Bits unit(8, 0);
  unit[7] = 1;  // last row of the generator is all ones
  CHECK(encode(unit, config) == Bits(8, 1));

  CodeConfig small(8, 4);
  Bits bad(8, 0);
  bad[0] = 1;  // frozen position
  CHECK_THROWS_AS(encode(bad, small), ConfigError);
  CHECK_THROWS_AS(encode(Bits(4, 0), small), ConfigError);
}

TEST_CASE("encoder matches the Kronecker-matrix oracle") {
  CounterRng rng(0xC0DE);
  for (std::size_t n : {2, 8, 16, 64}) {
    CodeConfig config(n, n);
    auto g = kronecker_generator(n);
    for (int t = 0; t < 250; ++t) {
      auto u = random_message(config, rng);
      CHECK(encode(u, config) == matmul_gf2(u, g));
    }
  }
}

TEST_CASE("encode is GF(2)-linear and self-inverse") {
  CounterRng rng(0xBEEF);
  CodeConfig config(32, 32);
  for (int t = 0; t < 200; ++t) {
    auto u = random_message(config, rng);
    auto v = random_message(config, rng);
    Bits uv(32);
    for (std::size_t i = 0; i < 32; ++i) uv[i] = u[i] ^ v[i];
    auto xu = encode(u, config), xv = encode(v, config);
    Bits xor_enc(32);
    for (std::size_t i = 0; i < 32; ++i) xor_enc[i] = xu[i] ^ xv[i];
    CHECK(encode(uv, config) == xor_enc);
    CHECK(encode(xu, config) == u);  // F^{(x)m} is an involution over GF(2)
  }
}

TEST_CASE("reliability ordering is deterministic") {
  for (int rep = 0; rep < 3; ++rep)
    CHECK(construct_frozen_set(256, 128) == construct_frozen_set(256, 128));
}
