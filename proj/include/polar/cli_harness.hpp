#pragma once

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

#include "polar/efficiency.hpp"

namespace polar {

constexpr const char* kVersion = "0.1.0";

struct EquivalenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::size_t n = 1024;
  std::optional<std::size_t> k;
  std::optional<double> rate;
  std::size_t list = 4;
  std::string scheme = "plain";
  std::size_t m = 4;
  double gamma = 3.0;
  std::vector<double> snr_db = {1.0, 2.0, 3.0};
  uint64_t trials = 1000;
  uint64_t seed = 1;
  unsigned jobs = 1;
  std::string output;
  std::string area_model_file;
  double design_param = 0.5;

  std::size_t resolved_k() const {
    if (k && rate) throw ConfigError("specify k or rate, not both");
    if (k) return *k;
    if (rate) return static_cast<std::size_t>(*rate * static_cast<double>(n) + 0.5);
    throw ConfigError("either k or rate is required");
  }

  CodeConfig code() const { return CodeConfig(n, resolved_k(), design_param); }

  SchemeSpec scheme_spec() const {
    if (scheme == "plain") return SchemeSpec::plain();
    if (scheme == "multidecision") return SchemeSpec::multidecision(m);
    if (scheme == "irregular") return SchemeSpec::irregular();
    if (scheme == "plcas") return SchemeSpec::plcas();
    if (scheme == "adaptive") return SchemeSpec::adaptive(gamma);
    throw ConfigError("unknown scheme: " + scheme);
  }

  std::string canonical() const {
    std::ostringstream os;
    os << "n=" << n;
    if (k) os << ";k=" << *k;
    if (rate) os << ";rate=" << *rate;
    os << ";list=" << list << ";scheme=" << scheme << ";m=" << m << ";gamma=" << gamma
       << ";snr=";
    for (double s : snr_db) os << s << ' ';
    os << ";trials=" << trials << ";seed=" << seed << ";design=" << design_param;
    return os.str();
  }
};

inline std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) values.push_back(std::stod(tok));
  if (values.empty()) throw ConfigError("empty numeric list: " + text);
  return values;
}

/// Flat key=value config file; every key matches the command-line flag of the
/// same name. Precedence is flag > file > default, enforced by the caller
/// applying file values before flag values.
inline void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("bad config line: " + line);
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "n") cfg.n = std::stoull(val);
    else if (key == "k") cfg.k = std::stoull(val);
    else if (key == "rate") cfg.rate = std::stod(val);
    else if (key == "list") cfg.list = std::stoull(val);
    else if (key == "scheme") cfg.scheme = val;
    else if (key == "m") cfg.m = std::stoull(val);
    else if (key == "gamma") cfg.gamma = std::stod(val);
    else if (key == "snr") cfg.snr_db = parse_double_list(val);
    else if (key == "trials") cfg.trials = std::stoull(val);
    else if (key == "seed") cfg.seed = std::stoull(val);
    else if (key == "jobs") cfg.jobs = static_cast<unsigned>(std::stoul(val));
    else if (key == "output") cfg.output = val;
    else if (key == "area-model") cfg.area_model_file = val;
    else if (key == "design") cfg.design_param = std::stod(val);
    else throw ConfigError("unknown config key: " + key);
  }
}

inline uint64_t fnv1a(const std::string& text) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace detail {

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  return out;
}

inline void write_preamble(std::ostream& os, const ExperimentConfig& cfg) {
  os << "# polarsim " << kVersion << " seed=" << cfg.seed << " config=" << std::hex
     << fnv1a(cfg.canonical()) << std::dec << '\n';
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace detail

/// Monte-Carlo FER comparison of SC against LSC. The LSC route decodes every
/// frame with both the golden list decoder and the overlapped-schedule
/// simulator and insists on identical output.
inline void run_fer(const ExperimentConfig& cfg, std::ostream& os) {
  CodeConfig code = cfg.code();
  SchemeSpec scheme = cfg.scheme_spec();
  detail::write_preamble(os, cfg);
  os << "n,k,l,scheme,snr_db,trials,fer,ber\n";
  for (double snr : cfg.snr_db) {
    NoiseSpec spec{snr, code.rate(), cfg.seed, false};
    DecoderFn sc = [&](const std::vector<double>& llr) { return sc_decode(llr, code); };
    DecoderFn lsc = [&](const std::vector<double>& llr) {
      double gamma = scheme.kind == Scheme::adaptive
                         ? scheme.gamma
                         : std::numeric_limits<double>::infinity();
      auto golden = lsc_decode(llr, code, cfg.list, LlrMode::minsum, gamma);
      auto sim = simulate(llr, code, cfg.list, scheme);
      if (sim.u_hat != golden.best)
        throw EquivalenceError("overlapped simulator output differs from golden LSC");
      return golden.best;
    };
    auto sc_res = monte_carlo_fer(code, sc, spec, cfg.trials, cfg.jobs);
    auto lsc_res = monte_carlo_fer(code, lsc, spec, cfg.trials, cfg.jobs);
    os << code.n << ',' << code.k << ',' << 1 << ",sc," << detail::fmt(snr) << ','
       << cfg.trials << ',' << detail::fmt(sc_res.fer) << ',' << detail::fmt(sc_res.ber)
       << '\n';
    os << code.n << ',' << code.k << ',' << cfg.list << ",lsc," << detail::fmt(snr) << ','
       << cfg.trials << ',' << detail::fmt(lsc_res.fer) << ',' << detail::fmt(lsc_res.ber)
       << '\n';
  }
}

/// Closed-form latency sweep with a simulator cross-check on the schemes
/// whose overhead is data independent.
inline void run_latency(const ExperimentConfig& cfg, std::ostream& os) {
  detail::write_preamble(os, cfg);
  os << "rate,scheme,k,l,m_or_S,overhead_cycles\n";
  std::vector<double> rates = {0.1, 0.25, 0.375, 0.5, 0.625, 0.75, 0.9};
  auto rows = fig4_table(cfg.n, cfg.list,
                         rates, {Scheme::plain, Scheme::multidecision, Scheme::irregular},
                         cfg.m, cfg.design_param);
  for (const auto& row : rows) {
    if (row.scheme == Scheme::plain || row.scheme == Scheme::multidecision) {
      CodeConfig code(cfg.n, row.k, cfg.design_param);
      CounterRng rng(frame_seed(cfg.seed, row.k));
      Bits u(code.n, 0);
      for (std::size_t p : code.info_positions()) u[p] = rng.next_bit();
      NoiseSpec spec{2.0, code.rate(), frame_seed(cfg.seed, row.k * 2 + 1), false};
      auto llr = transmit(encode(u, code), spec);
      SchemeSpec ss = row.scheme == Scheme::plain ? SchemeSpec::plain()
                                                  : SchemeSpec::multidecision(cfg.m);
      auto sim = simulate(llr, code, cfg.list, ss);
      if (sim.report.L_m != row.overhead_cycles)
        throw EquivalenceError("simulated overhead differs from closed form at k=" +
                               std::to_string(row.k));
    }
    os << detail::fmt(row.rate) << ',' << scheme_name(row.scheme) << ',' << row.k << ','
       << row.l << ',' << row.m_or_S << ',' << row.overhead_cycles << '\n';
  }
}

/// Fig. 5-style efficiency-ratio sweep with the PLCAS best/worst band.
inline void run_efficiency(const ExperimentConfig& cfg, std::ostream& os) {
  AreaModel model;
  if (!cfg.area_model_file.empty()) model = load_area_model(cfg.area_model_file);
  detail::write_preamble(os, cfg);
  os << "rate,scheme,ratio_lower,ratio_upper\n";
  std::vector<double> rates = {0.25, 0.375, 0.5, 0.625, 0.75, 0.9};
  std::vector<SchemeSpec> schemes = {SchemeSpec::plain(), SchemeSpec::multidecision(cfg.m),
                                     SchemeSpec::irregular(), SchemeSpec::adaptive(cfg.gamma),
                                     SchemeSpec::plcas()};
  for (const auto& row : fig5_table(cfg.n, cfg.list, rates, schemes, model, cfg.seed))
    os << detail::fmt(row.rate) << ',' << scheme_name(row.scheme) << ','
       << detail::fmt(row.ratio_lower) << ',' << detail::fmt(row.ratio_upper) << '\n';
}

/// Single-frame schedule timetable, audited before emission.
inline void run_trace(const ExperimentConfig& cfg, std::ostream& os) {
  CodeConfig code = cfg.code();
  CounterRng rng(frame_seed(cfg.seed, 0));
  Bits u(code.n, 0);
  for (std::size_t p : code.info_positions()) u[p] = rng.next_bit();
  NoiseSpec spec{2.0, code.rate(), frame_seed(cfg.seed, 1), false};
  auto llr = transmit(encode(u, code), spec);
  auto sim = simulate(llr, code, cfg.list, cfg.scheme_spec());
  auto diag = verify_trace(sim.trace, sim.plan, cfg.list, &code);
  if (!diag.ok) throw EquivalenceError("trace verification failed: " + diag.message);
  detail::write_preamble(os, cfg);
  os << sim.trace.to_csv();
}

}  // namespace polar
