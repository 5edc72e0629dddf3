#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <sstream>

#include "polar/cli_harness.hpp"

using namespace polar;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.n = 64;
  cfg.k = 32;
  cfg.list = 2;
  cfg.snr_db = {2.0};
  cfg.trials = 20;
  cfg.seed = 5;
  return cfg;
}

}  // namespace

TEST_CASE("k and rate resolution") {
  ExperimentConfig cfg;
  cfg.n = 128;
  CHECK_THROWS_AS(cfg.resolved_k(), ConfigError);  // neither given
  cfg.rate = 0.5;
  CHECK(cfg.resolved_k() == 64);
  cfg.k = 100;
  CHECK_THROWS_AS(cfg.resolved_k(), ConfigError);  // both given
  cfg.rate.reset();
  CHECK(cfg.resolved_k() == 100);
}

TEST_CASE("scheme names resolve") {
  ExperimentConfig cfg;
  for (const char* name : {"plain", "multidecision", "irregular", "plcas", "adaptive"}) {
    cfg.scheme = name;
    CHECK(scheme_name(cfg.scheme_spec().kind) == std::string(name));
  }
  cfg.scheme = "bogus";
  CHECK_THROWS_AS(cfg.scheme_spec(), ConfigError);
}

TEST_CASE("parse_double_list") {
  CHECK(parse_double_list("1,2.5,3") == std::vector<double>{1.0, 2.5, 3.0});
  CHECK_THROWS_AS(parse_double_list(""), ConfigError);
}

TEST_CASE("config file parsing and unknown keys") {
  std::string path = "cli_cfg_test.txt";
  {
    std::ofstream out(path);
    out << "# comment\nn=256\nrate=0.25\nlist=8\nscheme=plcas\nsnr=1,2\nseed=99\n";
  }
  ExperimentConfig cfg;
  apply_config_file(cfg, path);
  CHECK(cfg.n == 256);
  CHECK(cfg.rate == 0.25);
  CHECK(cfg.list == 8);
  CHECK(cfg.scheme == "plcas");
  CHECK(cfg.snr_db == std::vector<double>{1.0, 2.0});
  CHECK(cfg.seed == 99);
  {
    std::ofstream out(path);
    out << "nonsense=1\n";
  }
  CHECK_THROWS_AS(apply_config_file(cfg, path), ConfigError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(apply_config_file(cfg, path), IoError);
}

TEST_CASE("fer output is byte-identical across reruns and emits both rows") {
  auto cfg = small_config();
  std::ostringstream a, b;
  run_fer(cfg, a);
  run_fer(cfg, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("# polarsim") == 0);
  CHECK(a.str().find(",sc,") != std::string::npos);
  CHECK(a.str().find(",lsc,") != std::string::npos);
}

TEST_CASE("fer output is independent of job count") {
  auto cfg = small_config();
  std::ostringstream a, b;
  run_fer(cfg, a);
  cfg.jobs = 4;
  run_fer(cfg, b);
  // the preamble hashes the canonical config, which excludes jobs
  CHECK(a.str() == b.str());
}

TEST_CASE("latency output is deterministic and schema-stable") {
  auto cfg = small_config();
  cfg.n = 128;
  cfg.k.reset();
  cfg.rate.reset();
  std::ostringstream a, b;
  run_latency(cfg, a);
  run_latency(cfg, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("rate,scheme,k,l,m_or_S,overhead_cycles") != std::string::npos);
  CHECK(a.str().find("multidecision") != std::string::npos);
  CHECK(a.str().find("irregular") != std::string::npos);
}

TEST_CASE("efficiency output: custom area model changes ratios only") {
  auto cfg = small_config();
  cfg.n = 256;
  cfg.k.reset();
  std::ostringstream a, b;
  run_efficiency(cfg, a);

  std::string path = "cli_area_test.txt";
  {
    std::ofstream out(path);
    out << "pu_cost=3\n";
  }
  cfg.area_model_file = path;
  run_efficiency(cfg, b);
  std::remove(path.c_str());
  CHECK(a.str() != b.str());
  CHECK(a.str().find("rate,scheme,ratio_lower,ratio_upper") != std::string::npos);
}

TEST_CASE("trace output verifies and reruns byte-identically") {
  auto cfg = small_config();
  std::ostringstream a, b;
  run_trace(cfg, a);
  run_trace(cfg, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("cycle,stage,instance,path,op") != std::string::npos);
}

TEST_CASE("preamble hash distinguishes configs") {
  auto cfg = small_config();
  auto other = cfg;
  other.seed = 6;
  CHECK(fnv1a(cfg.canonical()) != fnv1a(other.canonical()));
}
