#include "permfsk/experiment.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "permfsk/reference_codes.hpp"
#include "permfsk/rng.hpp"

namespace permfsk {

namespace {

// The carrier position does not influence envelope statistics; any legal
// value serves the simulation.
constexpr double kBaseFrequencyHz = 40e3;

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

int code_source_count(const ExperimentConfig& c) {
  return int(!c.code_file.empty()) + int(!c.reference_code.empty()) +
         int(c.search_d >= 2);
}

nlohmann::ordered_json config_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["m"] = c.m;
  j["bit_rate"] = c.bit_rate;
  nlohmann::ordered_json code;
  if (!c.code_file.empty()) {
    code["source"] = "file";
    code["path"] = c.code_file;
  } else if (!c.reference_code.empty()) {
    code["source"] = "reference";
    code["name"] = c.reference_code;
  } else {
    code["source"] = "search";
    code["d"] = c.search_d;
  }
  j["code"] = code;
  if (c.scenario)
    j["scenario"] = nlohmann::ordered_json::parse(c.scenario->to_json_text());
  else
    j["scenario"] = nullptr;
  j["snr_db"] = c.snr_db_points;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["noise_margin_c"] = c.noise_margin_c;
  j["injection"] = {{"jammer_scale", c.injection.jammer_scale},
                    {"impulse_scale", c.injection.impulse_scale},
                    {"insertion_scale", c.injection.insertion_scale}};
  return j;
}

struct TrialCounts {
  std::uint64_t insertions = 0;
  std::uint64_t deletions = 0;
  std::uint64_t word_errors = 0;
  std::uint64_t ties = 0;

  void add(const TrialCounts& o) {
    insertions += o.insertions;
    deletions += o.deletions;
    word_errors += o.word_errors;
    ties += o.ties;
  }
};

TrialCounts run_trials(const CodeBook& code, const ChannelScenario& scenario,
                       const ModemParams& params, const Thresholds& thresholds,
                       const EnvelopeInjection& injection, std::uint64_t seed,
                       std::uint64_t first, std::uint64_t last) {
  TrialCounts counts;
  const int m = code.m();
  std::vector<EnvelopeVector> envelopes;
  DemodFrame frame(m);
  std::uniform_int_distribution<std::size_t> pick_message(0, code.size() - 1);
  for (std::uint64_t t = first; t < last; ++t) {
    auto rng = trial_rng(seed, t);
    const std::size_t message = pick_message(rng);
    const Codeword& tx = code.word(message);
    apply_scenario_stochastic(tx, scenario, params, rng, injection, envelopes);
    threshold_demodulate(envelopes, thresholds, frame);
    for (int k = 1; k <= m; ++k) {
      const std::uint32_t mask = frame.slot_mask(k);
      const std::uint32_t tx_bit = 1U
                                   << (tx[static_cast<std::size_t>(k - 1)] - 1);
      counts.insertions +=
          static_cast<std::uint64_t>(std::popcount(mask & ~tx_bit));
      counts.deletions += (mask & tx_bit) == 0;
    }
    const Decision decision = decode_max_agreement(frame, code);
    const bool correct = decision.kind == Decision::Kind::kUnique &&
                         *decision.message == message;
    counts.word_errors += !correct;
    counts.ties += decision.kind == Decision::Kind::kTie;
  }
  return counts;
}

ExperimentRow run_point(const ExperimentConfig& config, const CodeBook& code,
                        const std::string& label, double snr_db,
                        double noise_psd) {
  const auto t0 = std::chrono::steady_clock::now();
  const int m = code.m();
  const ModemParams params =
      derive_params(m, config.bit_rate, code.size(), kBaseFrequencyHz, 1.0);
  const Thresholds thresholds =
      make_thresholds(m, params.symbol_energy, config.noise_margin_c,
                      std::sqrt(noise_psd / 2.0));
  ChannelScenario scenario =
      config.scenario ? *config.scenario : ChannelScenario{};
  scenario.background_noise_psd = noise_psd;
  scenario.validate(m);

  unsigned threads = config.threads > 0
                         ? static_cast<unsigned>(config.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, config.trials)));

  std::vector<TrialCounts> partial(threads);
  if (threads == 1) {
    partial[0] = run_trials(code, scenario, params, thresholds,
                            config.injection, config.seed, 0, config.trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::uint64_t chunk = config.trials / threads;
    const std::uint64_t extra = config.trials % threads;
    std::uint64_t first = 0;
    for (unsigned i = 0; i < threads; ++i) {
      const std::uint64_t len = chunk + (i < extra ? 1 : 0);
      const std::uint64_t last = first + len;
      pool.emplace_back([&, i, first, last] {
        partial[i] = run_trials(code, scenario, params, thresholds,
                                config.injection, config.seed, first, last);
      });
      first = last;
    }
    for (auto& th : pool) th.join();
  }
  TrialCounts total;
  for (const auto& p : partial) total.add(p);

  ExperimentRow row;
  row.label = label;
  row.snr_db = snr_db;
  row.trials = config.trials;
  const double n = static_cast<double>(config.trials);
  row.insertion_rate =
      static_cast<double>(total.insertions) / (n * m * (m - 1));
  row.deletion_rate = static_cast<double>(total.deletions) / (n * m);
  row.word_error_rate = static_cast<double>(total.word_errors) / n;
  row.tie_rate = static_cast<double>(total.ties) / n;
  row.seed = config.seed;
  row.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return row;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (m < 0) throw std::invalid_argument("config: M must be >= 0");
  if (!(bit_rate > 0.0))
    throw std::invalid_argument("config: bit rate must be positive");
  const int sources = code_source_count(*this);
  if (sources == 0)
    throw std::invalid_argument(
        "config: need a code source (file, reference name, or search "
        "distance)");
  if (sources > 1)
    throw std::invalid_argument("config: more than one code source given");
  if (search_d == 1)
    throw std::invalid_argument("config: search distance must be >= 2");
  if (trials == 0) throw std::invalid_argument("config: need at least one trial");
  if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
  if (noise_margin_c < 0.0)
    throw std::invalid_argument("config: noise margin must be >= 0");
  for (double s : snr_db_points)
    if (!std::isfinite(s))
      throw std::invalid_argument("config: SNR points must be finite");
  if (scenario && scenario->background_noise_psd < 0.0)
    throw std::invalid_argument("config: noise level must be >= 0");
}

CodeBook resolve_code_book(const ExperimentConfig& config) {
  config.validate();
  CodeBook code = [&] {
    if (!config.code_file.empty()) return CodeBook::load_file(config.code_file);
    if (!config.reference_code.empty())
      return reference_code_book(config.reference_code);
    const int m = config.m;
    if (m == 0)
      throw std::invalid_argument("config: searching for a code requires M");
    return search_max_code(m, config.search_d, config.search_budget).best_code;
  }();
  if (config.m != 0 && code.m() != config.m)
    throw std::invalid_argument(
        "config: code book alphabet does not match M");
  if (code.size() < 2)
    throw std::invalid_argument(
        "config: the code must have at least two words");
  return code;
}

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const CodeBook& code) {
  config.validate();
  if (config.m != 0 && code.m() != config.m)
    throw std::invalid_argument("config: code book alphabet does not match M");
  if (code.size() < 2)
    throw std::invalid_argument("config: the code must have at least two words");

  ExperimentResult result;
  if (config.snr_db_points.empty()) {
    const double noise =
        config.scenario ? config.scenario->background_noise_psd : 0.0;
    result.rows.push_back(run_point(config, code, "scenario",
                                    std::numeric_limits<double>::quiet_NaN(),
                                    noise));
  } else {
    for (double snr_db : config.snr_db_points) {
      // Per-detector SNR = Es / N.
      const double noise = 1.0 / std::pow(10.0, snr_db / 10.0);
      result.rows.push_back(run_point(config, code,
                                      "snr_db=" + fmt_double(snr_db), snr_db,
                                      noise));
    }
  }
  return result;
}

std::string experiment_csv(const ExperimentConfig& config,
                           const ExperimentResult& result) {
  std::ostringstream out;
  out << "# permfsk simulate\n";
  out << "# config: " << config_json(config).dump() << "\n";
  out << "label,snr_db,trials,insertion_rate,deletion_rate,word_error_rate,"
         "tie_rate,seed\n";
  for (const auto& row : result.rows) {
    out << row.label << ',';
    if (std::isfinite(row.snr_db)) out << fmt_double(row.snr_db);
    out << ',' << row.trials << ',' << fmt_double(row.insertion_rate) << ','
        << fmt_double(row.deletion_rate) << ','
        << fmt_double(row.word_error_rate) << ',' << fmt_double(row.tie_rate)
        << ',' << row.seed << '\n';
  }
  return out.str();
}

std::string experiment_json(const ExperimentConfig& config,
                            const ExperimentResult& result) {
  nlohmann::ordered_json j;
  j["config"] = config_json(config);
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) {
    nlohmann::ordered_json r;
    r["label"] = row.label;
    if (std::isfinite(row.snr_db))
      r["snr_db"] = row.snr_db;
    else
      r["snr_db"] = nullptr;
    r["trials"] = row.trials;
    r["insertion_rate"] = row.insertion_rate;
    r["deletion_rate"] = row.deletion_rate;
    r["word_error_rate"] = row.word_error_rate;
    r["tie_rate"] = row.tie_rate;
    r["seed"] = row.seed;
    j["rows"].push_back(r);
  }
  return j.dump(2) + "\n";
}

std::string experiment_meta_json(const ExperimentResult& result) {
  nlohmann::ordered_json j;
  double total = 0.0;
  j["wall_ms_per_row"] = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) {
    j["wall_ms_per_row"].push_back(row.wall_ms);
    total += row.wall_ms;
  }
  j["total_wall_ms"] = total;
  return j.dump(2) + "\n";
}

std::string code_size_table_csv(int max_m, const SearchBudget& budget) {
  if (max_m < 2 || max_m > 7)
    throw std::invalid_argument("code_size_table_csv: max M must be in 2..7");
  std::ostringstream out;
  out << "M,d,size,bound,certified\n";
  for (int m = 2; m <= max_m; ++m) {
    for (int d = 2; d <= m; ++d) {
      const SearchReport report = search_max_code(m, d, budget);
      out << m << ',' << d << ',' << report.best_code.size() << ','
          << to_string(cardinality_bound(m, d)) << ','
          << (report.proven_optimal ? "yes" : "no") << '\n';
    }
  }
  return out.str();
}

std::string link_budget_csv(double bit_rate, int m) {
  const bool nominal = bit_rate == 4800.0 && m == 4;
  std::ostringstream out;
  out << "d_min,code_size,bandwidth_khz,snr_db";
  if (nominal) out << ",nominal_bandwidth_khz,nominal_snr_db";
  out << '\n';
  for (const auto& row : link_budget_table(bit_rate, m)) {
    out << row.d_min << ',' << row.code_size << ','
        << fmt_double(row.bandwidth_khz) << ',' << fmt_double(row.snr_db);
    if (nominal) {
      // Rounded design values for the 4800 bit/s, M = 4 operating points.
      if (row.d_min == 2)
        out << ",16,40";
      else if (row.d_min == 3)
        out << ",21,37";
      else if (row.d_min == 4)
        out << ",38,27";
      else
        out << ",,";
    }
    out << '\n';
  }
  return out.str();
}

std::string reference_books_text() {
  std::ostringstream out;
  for (const auto& name : reference_code_names()) {
    out << "# code book " << name << '\n';
    out << reference_code_book(name).to_text();
  }
  return out.str();
}

}  // namespace permfsk
