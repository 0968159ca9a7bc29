#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permfsk/channel.hpp"
#include "permfsk/codec.hpp"
#include "permfsk/modem.hpp"
#include "permfsk/permcode.hpp"

namespace permfsk {

enum class OutputFormat { kCsv, kJson };

// Full description of one simulation run. Exactly one code source must be
// set: a code book file, a bundled reference book, or a searched code.
struct ExperimentConfig {
  int m = 0;  // 0: take the alphabet size from the code book
  double bit_rate = 4800.0;

  std::string code_file;
  std::string reference_code;
  int search_d = 0;  // >= 2: search a maximum code at this distance
  SearchBudget search_budget;

  std::optional<ChannelScenario> scenario;
  // Per-detector SNR sweep in dB; the background noise level is set to
  // Es / snr per point. Empty: one row at the scenario's own noise level.
  std::vector<double> snr_db_points;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
  double noise_margin_c = 0.0;
  EnvelopeInjection injection;

  void validate() const;
};

struct ExperimentRow {
  std::string label;   // "snr_db=10" or "scenario"
  double snr_db = 0.0; // NaN when the row is not an SNR sweep point
  std::uint64_t trials = 0;
  // Spurious detections per detector opportunity: count / (trials * M(M-1)).
  double insertion_rate = 0.0;
  // Missing transmitted tones per slot: count / (trials * M).
  double deletion_rate = 0.0;
  // Ties and no-evidence decisions count as word errors.
  double word_error_rate = 0.0;
  double tie_rate = 0.0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;  // timing only; kept out of result files
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
};

// Resolves the configured code source. Throws before any trial runs if the
// config is unusable.
CodeBook resolve_code_book(const ExperimentConfig& config);

// Seeded Monte Carlo word-error run over the configured points. Results are
// a pure function of (config minus threads, seed): trials are split across
// threads by index, each trial draws from its own derived stream, and only
// counts are aggregated.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const CodeBook& code);

// Result serialization. Both formats embed the resolved config (threads
// excluded, since it cannot affect the rows) so a result file identifies the
// run that produced it byte-for-byte across repeats.
std::string experiment_csv(const ExperimentConfig& config,
                           const ExperimentResult& result);
std::string experiment_json(const ExperimentConfig& config,
                            const ExperimentResult& result);
// Wall-clock sidecar (not reproducible, so kept out of the result file).
std::string experiment_meta_json(const ExperimentResult& result);

// CSV of certified maximum code sizes for M = 2..max_m, one row per (M, d):
// M,d,size,bound,certified.
std::string code_size_table_csv(int max_m = 5, const SearchBudget& budget = {});

// CSV of the link budget at the given rate, one row per operating point:
// d_min,code_size,bandwidth_khz,snr_db,nominal_bandwidth_khz,nominal_snr_db.
// The nominal columns carry the rounded design values for the default
// 4800 bit/s, M = 4 sweep and are omitted for other configurations.
std::string link_budget_csv(double bit_rate = 4800.0, int m = 4);

// The bundled example code books in code book text format, each preceded by
// a "# code book <name>" line.
std::string reference_books_text();

}  // namespace permfsk
