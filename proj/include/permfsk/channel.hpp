#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "permfsk/codec.hpp"
#include "permfsk/modem.hpp"
#include "permfsk/permcode.hpp"

namespace permfsk {

// Declarative error pattern applied on top of the background noise. All slot
// and tone indices are 1-based. Deletions only matter where they hit the
// transmitted tone of their slot; insertions only where they add a tone that
// was not transmitted. Out-of-scope entries are ignored when applied.
struct ChannelScenario {
  std::vector<int> jammed_tones;   // narrow-band disturbances, always on
  std::vector<int> impulse_slots;  // broadband bursts: every tone detected
  std::vector<std::pair<int, int>> deletions;   // (slot, tone) suppressed
  std::vector<std::pair<int, int>> insertions;  // (slot, tone) added
  double background_noise_psd = 0.0;  // N; 0 disables stochastic noise

  // Index-range check against an M-tone alphabet.
  void validate(int m) const;

  std::string to_json_text() const;
  static ChannelScenario from_json_text(const std::string& text);
  void save_file(const std::string& path) const;
  static ChannelScenario load_file(const std::string& path);

  bool operator==(const ChannelScenario& other) const = default;
};

// S_in * 10^(-0.01 L): received power after L meters of bad line.
double received_power(double input_power_w, double distance_m);

// 10^(-8 - 4e-5 f): worst-case single-sided background noise density at
// f Hz, W/Hz. Decays from 1e-8 at DC by two decades per 50 kHz.
double worst_case_noise_psd(double frequency_hz);

// Worst-case per-detector SNR (linear power ratio, not dB) for an M-tone
// band of width B kHz parked against the top of the usable band: the
// transmitted tone carries the full received power, and each detector
// integrates B/M of noise at the band's quietest (lowest) edge.
// Requires 0 < B < band_edge.
double snr_lower_bound(double bandwidth_khz, double input_power_w = 25.0,
                       double distance_m = 500.0, double band_edge_khz = 95.0,
                       int m = 4);

struct LinkBudgetRow {
  int d_min;
  std::size_t code_size;
  double bandwidth_khz;
  double snr_db;
};

// Bandwidth and worst-case SNR for each (d_min, |C|) operating point at the
// given information rate.
std::vector<LinkBudgetRow> link_budget_table(
    double bit_rate = 4800.0, int m = 4,
    const std::vector<std::pair<int, std::size_t>>& code_sizes = {
        {2, 24}, {3, 12}, {4, 4}});

// Noise-free frame for a transmitted word under a scenario. Build-up order:
// transmitted tones, impulse slots (all tones), jammed tones (every slot),
// insertions, then deletions last.
DemodFrame apply_scenario_symbolic(const Codeword& tx,
                                   const ChannelScenario& scenario);

// Injected amplitudes for the stochastic path, as multiples of sqrt(Es);
// 1.0 means as strong as the transmitted tone.
struct EnvelopeInjection {
  double jammer_scale = 1.0;
  double impulse_scale = 1.0;
  double insertion_scale = 1.0;
};

// Per-slot envelope vectors for a transmitted word under a scenario: random
// tone phases and circular Gaussian background noise (from the scenario's
// noise level), plus the scenario's deterministic injections. Deletions
// force the affected envelope to zero after everything else. With zero
// background noise the demodulated frame matches apply_scenario_symbolic
// exactly.
std::vector<EnvelopeVector> apply_scenario_stochastic(
    const Codeword& tx, const ChannelScenario& scenario,
    const ModemParams& params, std::mt19937_64& rng,
    const EnvelopeInjection& injection = {});
void apply_scenario_stochastic(const Codeword& tx,
                               const ChannelScenario& scenario,
                               const ModemParams& params, std::mt19937_64& rng,
                               const EnvelopeInjection& injection,
                               std::vector<EnvelopeVector>& out);

// Symbol slots hit by one impulse of the given duration in the worst case
// (straddling slot boundaries): ceil(duration * rate) + 1.
int impulse_slot_count(double signaling_rate_hz, double impulse_duration_s);

// Impulsive noise arrival model: fixed burst duration, uniformly distributed
// inter-arrival gaps.
struct ImpulseProcess {
  double duration_s = 100e-6;
  double min_inter_arrival_s = 0.1;
  double max_inter_arrival_s = 1.0;

  double draw_inter_arrival(std::mt19937_64& rng) const;
};

}  // namespace permfsk
