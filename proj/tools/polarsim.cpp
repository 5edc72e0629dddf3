#include <iostream>

#include <CLI11.hpp>

#include "polar/cli_harness.hpp"

namespace {

void add_common_flags(CLI::App* cmd, polar::ExperimentConfig& cfg, std::string& config_file,
                      std::string& snr_text) {
  cmd->add_option("--config", config_file, "flat key=value config file");
  cmd->add_option("--n", cfg.n, "block length (power of two)");
  auto* k_opt = cmd->add_option("--k", cfg.k, "information bits");
  cmd->add_option("--rate", cfg.rate, "code rate (alternative to --k)")->excludes(k_opt);
  cmd->add_option("--list", cfg.list, "list size l");
  cmd->add_option("--scheme", cfg.scheme,
                  "plain|multidecision|irregular|plcas|adaptive");
  cmd->add_option("--m", cfg.m, "multi-decision width");
  cmd->add_option("--gamma", cfg.gamma, "adaptive pruning threshold");
  cmd->add_option("--snr", snr_text, "comma-separated Eb/N0 list in dB");
  cmd->add_option("--trials", cfg.trials, "Monte-Carlo frames");
  cmd->add_option("--seed", cfg.seed, "global seed");
  cmd->add_option("--jobs", cfg.jobs, "worker threads for trials");
  cmd->add_option("--output", cfg.output, "output CSV path (default stdout)");
  cmd->add_option("--area-model", cfg.area_model_file, "area model key=value file");
  cmd->add_option("--design", cfg.design_param, "BEC erasure probability for construction");
}

int dispatch(const std::string& sub, polar::ExperimentConfig& cfg) {
  auto emit = [&](auto&& fn) {
    if (cfg.output.empty()) {
      fn(std::cout);
    } else {
      auto out = polar::detail::open_output(cfg.output);
      fn(out);
    }
  };
  if (sub == "fer") emit([&](std::ostream& os) { polar::run_fer(cfg, os); });
  else if (sub == "latency") emit([&](std::ostream& os) { polar::run_latency(cfg, os); });
  else if (sub == "efficiency")
    emit([&](std::ostream& os) { polar::run_efficiency(cfg, os); });
  else if (sub == "trace") emit([&](std::ostream& os) { polar::run_trace(cfg, os); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polar list-SC decoder and path-overlapping architecture simulator"};
  app.require_subcommand(1);

  struct SubState {
    polar::ExperimentConfig cfg;
    std::string config_file;
    std::string snr_text;
  };
  std::map<std::string, SubState> states;
  for (const char* name : {"fer", "latency", "efficiency", "trace"}) {
    auto* cmd = app.add_subcommand(name, "");
    add_common_flags(cmd, states[name].cfg, states[name].config_file,
                     states[name].snr_text);
  }
  app.get_subcommand("fer")->description("Monte-Carlo FER/BER, SC vs overlapped LSC");
  app.get_subcommand("latency")->description("latency-overhead sweep with simulator check");
  app.get_subcommand("efficiency")->description("hardware-efficiency ratio sweep");
  app.get_subcommand("trace")->description("single-frame pipeline timetable");

  CLI11_PARSE(app, argc, argv);

  try {
    auto* sub = app.get_subcommands().front();
    SubState& st = states[sub->get_name()];
    // Re-apply precedence: file values first, then any flag the user passed.
    if (!st.config_file.empty()) {
      polar::ExperimentConfig merged;
      polar::apply_config_file(merged, st.config_file);
      if (sub->count("--n")) merged.n = st.cfg.n;
      if (sub->count("--k")) merged.k = st.cfg.k;
      if (sub->count("--rate")) merged.rate = st.cfg.rate;
      if (sub->count("--list")) merged.list = st.cfg.list;
      if (sub->count("--scheme")) merged.scheme = st.cfg.scheme;
      if (sub->count("--m")) merged.m = st.cfg.m;
      if (sub->count("--gamma")) merged.gamma = st.cfg.gamma;
      if (sub->count("--trials")) merged.trials = st.cfg.trials;
      if (sub->count("--seed")) merged.seed = st.cfg.seed;
      if (sub->count("--jobs")) merged.jobs = st.cfg.jobs;
      if (sub->count("--output")) merged.output = st.cfg.output;
      if (sub->count("--area-model")) merged.area_model_file = st.cfg.area_model_file;
      if (sub->count("--design")) merged.design_param = st.cfg.design_param;
      if (sub->count("--snr")) merged.snr_db = polar::parse_double_list(st.snr_text);
      st.cfg = merged;
    } else if (!st.snr_text.empty()) {
      st.cfg.snr_db = polar::parse_double_list(st.snr_text);
    }
    return dispatch(sub->get_name(), st.cfg);
  } catch (const polar::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const polar::EquivalenceError& e) {
    std::cerr << "equivalence failure: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal assertion: " << e.what() << '\n';
    return 2;
  } catch (const polar::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
