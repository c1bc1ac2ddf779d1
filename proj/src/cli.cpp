#include "bufshuf/cli.hpp"

#include "bufshuf/core.hpp"
#include "bufshuf/engine.hpp"
#include "bufshuf/metrics.hpp"
#include "bufshuf/montecarlo.hpp"
#include "bufshuf/oracle.hpp"
#include "bufshuf/rates.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace bufshuf::cli {
namespace {

using nlohmann::json;

const std::vector<std::string> kConfigKeys = {"n", "k", "s", "f", "assignment", "rounds", "trials", "seed"};

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  Int value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw ConfigError("invalid integer for " + std::string(key) + ": '" + std::string(text) + "'");
  }
  return value;
}

double parse_real(std::string_view key, std::string_view text) {
  const std::string copy(trim(text));
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(value)) {
    throw ConfigError("invalid number for " + std::string(key) + ": '" + copy + "'");
  }
  return value;
}

// Expands integers, inclusive ranges "a..b" and caller-defined keywords.
std::vector<std::int64_t> expand_ints(std::string_view key, const std::vector<std::string>& tokens,
                                      const std::function<std::optional<std::vector<std::int64_t>>(std::string_view)>&
                                          keyword = nullptr) {
  std::vector<std::int64_t> out;
  for (const auto& token : tokens) {
    if (keyword) {
      if (auto values = keyword(token)) {
        out.insert(out.end(), values->begin(), values->end());
        continue;
      }
    }
    if (const auto dots = token.find(".."); dots != std::string::npos) {
      const auto lo = parse_int<std::int64_t>(key, std::string_view(token).substr(0, dots));
      const auto hi = parse_int<std::int64_t>(key, std::string_view(token).substr(dots + 2));
      if (hi < lo) throw ConfigError("empty range for " + std::string(key) + ": '" + token + "'");
      for (auto v = lo; v <= hi; ++v) out.push_back(v);
      continue;
    }
    out.push_back(parse_int<std::int64_t>(key, token));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_keyword_token(std::string_view token) {
  return !token.empty() && (std::isalpha(static_cast<unsigned char>(token.front())) != 0);
}

// Validates keyword tokens once so typos fail before the grid is walked.
void check_keywords(std::string_view key, const std::vector<std::string>& tokens,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& token : tokens) {
    if (!is_keyword_token(token)) continue;
    if (std::find(allowed.begin(), allowed.end(), token) == allowed.end()) {
      throw ConfigError("unknown token for " + std::string(key) + ": '" + token + "'");
    }
  }
}

std::optional<std::int64_t> exact_sqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (r * r == n) return r;
  return std::nullopt;
}

std::vector<std::int64_t> resolve_k(const std::vector<std::string>& tokens, std::int64_t n) {
  return expand_ints("k", tokens, [n](std::string_view token) -> std::optional<std::vector<std::int64_t>> {
    if (token == "half") return std::vector<std::int64_t>{n / 2};
    if (token == "n") return std::vector<std::int64_t>{n};
    if (token == "sqrt") {
      if (auto r = exact_sqrt(n)) return std::vector<std::int64_t>{*r};
      return std::vector<std::int64_t>{};
    }
    return std::nullopt;
  });
}

std::vector<std::int64_t> resolve_honest(const std::vector<std::string>& tokens, std::int64_t m) {
  return expand_ints("honest", tokens, [m](std::string_view token) -> std::optional<std::vector<std::int64_t>> {
    if (token == "M") return std::vector<std::int64_t>{m};
    if (token == "all") {
      std::vector<std::int64_t> all;
      for (std::int64_t s = 1; s <= m; ++s) all.push_back(s);
      return all;
    }
    return std::nullopt;
  });
}

class Output {
public:
  Output(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *stream_; }

private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

void check_format(const std::string& format) {
  if (format != "csv" && format != "json") throw ConfigError("format must be 'csv' or 'json', got '" + format + "'");
}

json config_json(const MixConfig& config) {
  return json{{"n", config.n()},
              {"k", config.k()},
              {"m", config.m()},
              {"s", config.s()},
              {"f", config.f()},
              {"assignment", std::string(to_string(config.assignment()))}};
}

// Flags shared by simulate and trace, held as text until merged with --config.
struct RunFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::string format = "csv";
  std::string out_path;
  std::string workers;
  bool strict = false;
};

void add_run_flags(CLI::App& app, RunFlags& flags, bool with_trials) {
  app.add_option("--config", flags.config_path, "flat key=value experiment file");
  auto flag = [&](const char* name, const char* key, const char* help) {
    app.add_option_function<std::string>(
        name, [&flags, key](const std::string& v) { flags.values[key] = v; }, help);
  };
  flag("--n", "n", "number of cards");
  flag("--k", "k", "cards per server");
  flag("--honest", "s", "number of honest servers (default: all)");
  flag("--fake", "f", "number of adversary-marked cards");
  flag("--rounds", "rounds", "rounds per trial");
  flag("--seed", "seed", "master seed");
  flag("--assignment", "assignment", "exact | binomial");
  if (with_trials) {
    flag("--trials", "trials", "number of trials");
    app.add_flag("--strict", flags.strict, "exit 1 when the theory comparison fails");
    app.add_option("--workers", flags.workers, "worker threads (default: $BUFSHUF_WORKERS or 1)");
  }
  app.add_option("--format", flags.format, "csv | json");
  app.add_option("--out", flags.out_path, "write output to PATH instead of stdout");
}

struct RunSettings {
  MixConfig config;
  std::size_t rounds = 10;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunSettings resolve_run_settings(const RunFlags& flags) {
  std::map<std::string, std::string> values;
  if (!flags.config_path.empty()) values = parse_config_document(read_file(flags.config_path));
  for (const auto& [key, value] : flags.values) values[key] = value;

  auto get = [&](const std::string& key) -> std::optional<std::string> {
    if (auto it = values.find(key); it != values.end()) return it->second;
    return std::nullopt;
  };
  if (!get("n") || !get("k")) throw ConfigError("both n and k are required");

  RawParameters raw;
  raw.n = parse_int<std::int64_t>("n", *get("n"));
  raw.k = parse_int<std::int64_t>("k", *get("k"));
  raw.s = get("s") ? parse_int<std::int64_t>("s", *get("s")) : (raw.k > 0 ? raw.n / raw.k : 0);
  raw.f = get("f") ? parse_int<std::int64_t>("f", *get("f")) : 0;
  if (auto mode = get("assignment")) raw.assignment = parse_assignment_mode(trim(*mode));

  RunSettings settings{validate_config(raw)};
  if (auto v = get("rounds")) settings.rounds = parse_int<std::size_t>("rounds", *v);
  if (auto v = get("trials")) settings.trials = parse_int<std::size_t>("trials", *v);
  if (auto v = get("seed")) settings.seed = parse_int<std::uint64_t>("seed", *v);

  std::string workers = flags.workers;
  if (workers.empty()) {
    if (const char* env = std::getenv("BUFSHUF_WORKERS"); env != nullptr && *env != '\0') workers = env;
  }
  if (!workers.empty()) settings.workers = parse_int<std::size_t>("workers", workers);
  if (settings.workers == 0) throw ConfigError("workers must be positive");
  check_format(flags.format);
  return settings;
}

int cmd_simulate(const RunFlags& flags, std::ostream& out, std::ostream& err) {
  const RunSettings settings = resolve_run_settings(flags);
  if (settings.trials < 2) throw ConfigError("trials must be at least 2");
  const MixConfig& config = settings.config;

  const NamedRate rate = model_rate(config);
  const double phi0 = phi(initial_state(config));
  const RatePrediction prediction(to_double(rate.value), phi0);
  const ExperimentResult result = run_experiment(config, settings.rounds, settings.trials, settings.seed, settings.workers);
  const Comparison comparison = compare_to_theory(result, prediction);

  Output sink(flags.out_path, out);
  std::ostream& os = sink.stream();
  if (flags.format == "csv") {
    os << "round,mean_phi,stderr,predicted_phi,z_score\n";
    for (const auto& row : comparison.rows) {
      os << row.round << ',' << format_double(row.empirical) << ',' << format_double(row.std_error) << ','
         << format_double(row.predicted) << ',' << format_double(row.z_score) << '\n';
    }
  } else {
    json doc;
    doc["config"] = config_json(config);
    doc["config"]["rounds"] = settings.rounds;
    doc["config"]["trials"] = settings.trials;
    doc["config"]["seed"] = settings.seed;
    json rows = json::array();
    for (std::size_t i = 0; i < comparison.rows.size(); ++i) {
      const auto& row = comparison.rows[i];
      rows.push_back({{"round", row.round},
                      {"mean_phi", row.empirical},
                      {"sample_std", result.per_round[i].sample_std},
                      {"stderr", row.std_error},
                      {"predicted_phi", row.predicted},
                      {"z_score", row.z_score},
                      {"within_3_sigma", row.within_3_sigma},
                      {"checked", row.checked}});
    }
    doc["rows"] = std::move(rows);
    json verdict{{"pass", comparison.pass},
                 {"rate_name", rate.name},
                 {"rate", to_double(rate.value)},
                 {"rate_exact", to_string(rate.value)},
                 {"phi0", phi0}};
    if (config.assignment() == AssignmentMode::BinomialAssignment) {
      const Rational printed =
          rate_binomial(static_cast<std::int64_t>(config.n()), static_cast<std::int64_t>(config.k()),
                        static_cast<std::int64_t>(config.s()), static_cast<std::int64_t>(config.f()),
                        ExponentPolicy::AsPrinted);
      verdict["rate_binomial_as_printed"] = to_double(printed);
    }
    doc["verdict"] = std::move(verdict);
    os << doc.dump(2) << '\n';
  }
  os.flush();

  if (!comparison.pass) {
    err << "simulate: empirical potential deviates from " << rate.name << " by more than 3 standard errors\n";
    if (flags.strict) return kExitStatistical;
  }
  return kExitOk;
}

int cmd_trace(const RunFlags& flags, std::ostream& out) {
  const RunSettings settings = resolve_run_settings(flags);
  RngStream rng(derive_stream_seed(settings.seed, 0));
  const Trajectory trajectory = run_trial(settings.config, settings.rounds, rng, TrialOptions{true});

  Output sink(flags.out_path, out);
  std::ostream& os = sink.stream();
  if (flags.format == "csv") {
    os << "round," << metric_csv_header() << '\n';
    for (std::size_t t = 0; t < trajectory.metrics->size(); ++t) {
      os << t << ',' << metric_csv_row((*trajectory.metrics)[t]) << '\n';
    }
  } else {
    json rows = json::array();
    for (std::size_t t = 0; t < trajectory.metrics->size(); ++t) {
      json row = (*trajectory.metrics)[t];
      row["round"] = t;
      rows.push_back(std::move(row));
    }
    json doc{{"config", config_json(settings.config)}, {"rows", std::move(rows)}};
    doc["config"]["rounds"] = settings.rounds;
    doc["config"]["seed"] = settings.seed;
    os << doc.dump(2) << '\n';
  }
  return kExitOk;
}

struct VerifyFlags {
  std::string n = "4,6,8";
  std::string k = "2,half";
  std::string honest = "all";
  std::string fake = "0,1,2";
  std::size_t probes = 5;
  std::uint64_t seed = 1;
  std::uint64_t cap = oracle::kDefaultCap;
  std::string format = "csv";
  std::string out_path;
};

struct RateRow {
  std::string name;
  std::int64_t n, k, s, f;
  Rational value;
  Rational oracle_value;
  bool verified;
  bool applicable;
};

int cmd_verify_rates(const VerifyFlags& flags, std::ostream& out, std::ostream& err) {
  check_format(flags.format);
  if (flags.probes < 3) throw ConfigError("probes must be at least 3");
  const auto k_tokens = split_list(flags.k);
  const auto s_tokens = split_list(flags.honest);
  check_keywords("k", k_tokens, {"half", "n", "sqrt"});
  check_keywords("honest", s_tokens, {"all", "M"});
  const auto ns = expand_ints("n", split_list(flags.n));
  const auto fs = expand_ints("fake", split_list(flags.fake));

  std::vector<RateRow> rows;
  std::size_t instances = 0;
  std::size_t unmatched = 0;
  std::size_t f0_mismatches = 0;
  for (const auto n : ns) {
    for (const auto k : resolve_k(k_tokens, n)) {
      if (k < 2 || k > n || n % k != 0) continue;
      const std::int64_t m = n / k;
      for (const auto f : fs) {
        if (f < 0 || f > n - 2) continue;
        for (const auto s : resolve_honest(s_tokens, m)) {
          if (s < 1 || s > m) continue;
          const MixConfig config = validate_config({n, k, s, f, AssignmentMode::ExactPartition});
          const auto probes = oracle::random_probe_states(
              config.unmarked(), flags.probes,
              derive_stream_seed(flags.seed, static_cast<std::uint64_t>((((n * 64) + k) * 64 + s) * 64 + f)));
          const Rational truth = oracle::exact_rate(config, probes, flags.cap).rate;

          const std::vector<std::tuple<std::string, Rational, bool>> families = {
              {"rate_uniform", rate_uniform(n, k), s == m && f == 0},
              {"rate_corrupt_servers", rate_corrupt_servers(n, k, s), f == 0},
              {"rate_fake_paper", rate_fake_paper(n, k, f), s == m},
              {"rate_fake_derived", rate_fake_derived(n, k, f), s == m},
              {"rate_combined_paper", rate_combined_paper(n, k, s, f), true},
              {"rate_combined_derived", rate_combined_derived(n, k, s, f), true},
          };
          bool matched = false;
          bool f0_failure = false;
          for (const auto& [name, value, applicable] : families) {
            const bool verified = value == truth;
            rows.push_back({name, n, k, s, f, value, truth, verified, applicable});
            if (applicable && verified) matched = true;
            const bool printed_formula = name != "rate_fake_derived" && name != "rate_combined_derived";
            if (f == 0 && applicable && printed_formula && !verified) f0_failure = true;
          }
          ++instances;
          if (!matched) ++unmatched;
          if (f0_failure) ++f0_mismatches;
        }
      }
    }
  }

  const int code = f0_mismatches > 0 ? kExitOracleMismatch : (unmatched > 0 ? kExitStatistical : kExitOk);

  Output sink(flags.out_path, out);
  std::ostream& os = sink.stream();
  if (flags.format == "csv") {
    os << "name,n,k,s,f,value_exact,value_float,oracle_value,verified,applicable\n";
    for (const auto& r : rows) {
      os << r.name << ',' << r.n << ',' << r.k << ',' << r.s << ',' << r.f << ',' << to_string(r.value) << ','
         << format_double(to_double(r.value)) << ',' << to_string(r.oracle_value) << ','
         << (r.verified ? "true" : "false") << ',' << (r.applicable ? "true" : "false") << '\n';
    }
  } else {
    json list = json::array();
    for (const auto& r : rows) {
      list.push_back({{"name", r.name},
                      {"n", r.n},
                      {"k", r.k},
                      {"s", r.s},
                      {"f", r.f},
                      {"value_exact", to_string(r.value)},
                      {"value_float", to_double(r.value)},
                      {"oracle_value", to_string(r.oracle_value)},
                      {"verified", r.verified},
                      {"applicable", r.applicable}});
    }
    json doc{{"grid", {{"n", flags.n}, {"k", flags.k}, {"honest", flags.honest}, {"fake", flags.fake}}},
             {"rows", std::move(list)},
             {"verdict",
              {{"instances", instances},
               {"unmatched", unmatched},
               {"f0_mismatches", f0_mismatches},
               {"exit_code", code}}}};
    os << doc.dump(2) << '\n';
  }
  os.flush();
  err << "verify-rates: " << instances << " instances, " << unmatched << " unmatched, " << f0_mismatches
      << " f=0 mismatches\n";
  return code;
}

struct SweepFlags {
  std::string n = "256";
  std::string k = "16";
  std::string honest = "M";
  std::string fake = "0";
  std::string b = "1";
  std::string format = "csv";
  std::string out_path;
};

int cmd_sweep(const SweepFlags& flags, std::ostream& out, std::ostream& err) {
  check_format(flags.format);
  const auto k_tokens = split_list(flags.k);
  const auto s_tokens = split_list(flags.honest);
  check_keywords("k", k_tokens, {"half", "n", "sqrt"});
  check_keywords("honest", s_tokens, {"all", "M"});
  const auto ns = expand_ints("n", split_list(flags.n));
  const auto fs = expand_ints("fake", split_list(flags.fake));
  std::vector<double> bs;
  for (const auto& token : split_list(flags.b)) {
    const double b = parse_real("b", token);
    if (b < 1.0) throw ConfigError("b must be at least 1, got '" + token + "'");
    bs.push_back(b);
  }

  struct Row {
    MixConfig config;
    double b;
    NamedRate rate;
    std::optional<std::int64_t> rounds;
    std::optional<std::int64_t> markov;
  };
  std::vector<Row> rows;
  std::size_t skipped = 0;
  for (const auto n : ns) {
    for (const auto k : resolve_k(k_tokens, n)) {
      if (k < 2 || k > n || n % k != 0) {
        ++skipped;
        continue;
      }
      for (const auto s : resolve_honest(s_tokens, n / k)) {
        for (const auto f : fs) {
          std::optional<MixConfig> config;
          try {
            config = validate_config({n, k, s, f, AssignmentMode::ExactPartition});
          } catch (const ConfigError&) {
            ++skipped;
            continue;
          }
          const NamedRate rate = model_rate(*config);
          const double value = to_double(rate.value);
          for (const double b : bs) {
            Row row{*config, b, rate, std::nullopt, std::nullopt};
            if (value > 0.0) {
              row.rounds = rounds_for_target(value, n, b);
              row.markov = markov_rounds(value, n, b);
            }
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }

  Output sink(flags.out_path, out);
  std::ostream& os = sink.stream();
  auto count_text = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string("inf"); };
  if (flags.format == "csv") {
    os << "n,k,m,s,f,b,rate_name,rate,rounds_for_target,markov_rounds\n";
    for (const auto& r : rows) {
      os << r.config.n() << ',' << r.config.k() << ',' << r.config.m() << ',' << r.config.s() << ',' << r.config.f()
         << ',' << format_double(r.b) << ',' << r.rate.name << ',' << format_double(to_double(r.rate.value)) << ','
         << count_text(r.rounds) << ',' << count_text(r.markov) << '\n';
    }
  } else {
    json list = json::array();
    for (const auto& r : rows) {
      json row = config_json(r.config);
      row["b"] = r.b;
      row["rate_name"] = r.rate.name;
      row["rate"] = to_double(r.rate.value);
      row["rate_exact"] = to_string(r.rate.value);
      row["rounds_for_target"] = r.rounds ? json(*r.rounds) : json(nullptr);
      row["markov_rounds"] = r.markov ? json(*r.markov) : json(nullptr);
      list.push_back(std::move(row));
    }
    os << json{{"rows", std::move(list)}, {"skipped", skipped}}.dump(2) << '\n';
  }
  os.flush();
  if (skipped > 0) err << "sweep: skipped " << skipped << " invalid grid points\n";
  return kExitOk;
}

}  // namespace

std::map<std::string, std::string> parse_config_document(std::string_view text) {
  std::map<std::string, std::string> values;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!values.emplace(key, value).second) {
      throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  return values;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  while (true) {
    const auto comma = text.find(',');
    const auto token = trim(text.substr(0, comma));
    if (token.empty()) throw ConfigError("empty element in list");
    out.emplace_back(token);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anonymous buffer shuffling simulator and rate verifier", "bufshuf"};
  app.require_subcommand(1);

  RunFlags simulate_flags;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo Phi(t) compared with the model rate");
  add_run_flags(*simulate, simulate_flags, true);

  RunFlags trace_flags;
  auto* trace = app.add_subcommand("trace", "all anonymity metrics along one trajectory");
  add_run_flags(*trace, trace_flags, false);

  VerifyFlags verify_flags;
  auto* verify = app.add_subcommand("verify-rates", "exact enumeration oracle against every closed-form rate");
  verify->add_option("--n", verify_flags.n, "card counts (list, ranges a..b)");
  verify->add_option("--k", verify_flags.k, "server capacities (integers, half, n, sqrt)");
  verify->add_option("--honest", verify_flags.honest, "honest server counts (integers, all, M)");
  verify->add_option("--fake", verify_flags.fake, "marked card counts");
  verify->add_option("--probes", verify_flags.probes, "probe states per instance");
  verify->add_option("--seed", verify_flags.seed, "probe seed");
  verify->add_option("--cap", verify_flags.cap, "maximum partitions enumerated per instance");
  verify->add_option("--format", verify_flags.format, "csv | json");
  verify->add_option("--out", verify_flags.out_path, "write output to PATH instead of stdout");

  SweepFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "round counts over a parameter grid");
  sweep->add_option("--n", sweep_flags.n, "card counts");
  sweep->add_option("--k", sweep_flags.k, "server capacities (integers, half, n, sqrt)");
  sweep->add_option("--honest", sweep_flags.honest, "honest server counts (integers, all, M)");
  sweep->add_option("--fake", sweep_flags.fake, "marked card counts");
  sweep->add_option("--b", sweep_flags.b, "target exponents b >= 1");
  sweep->add_option("--format", sweep_flags.format, "csv | json");
  sweep->add_option("--out", sweep_flags.out_path, "write output to PATH instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(simulate_flags, out, err);
    if (*trace) return cmd_trace(trace_flags, out);
    if (*verify) return cmd_verify_rates(verify_flags, out, err);
    if (*sweep) return cmd_sweep(sweep_flags, out, err);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const oracle::TooLarge& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace bufshuf::cli
