#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "permfsk/permcode.hpp"

namespace permfsk {

// Per-tone envelope magnitudes for one symbol slot, in sqrt(energy) units.
using EnvelopeVector = std::vector<double>;

enum class PhasePolicy { kZeroPhase, kRandomPerSymbol };

// Derived signalling parameters for an M-tone FSK alphabet carrying messages
// from a code of the given size at the given information rate.
struct ModemParams {
  int m = 0;                    // number of tones
  double bit_rate = 0.0;        // information rate b, bit/s
  std::size_t code_size = 0;    // |C|
  double base_frequency = 0.0;  // f0, Hz
  double symbol_duration = 0.0; // Ts = log2|C| / (M b), s
  double tone_spacing = 0.0;    // 1/Ts, Hz (orthogonal non-coherent spacing)
  double symbol_energy = 1.0;   // Es per transmitted tone

  double tone_frequency(int tone) const;  // f_i = f0 + (i-1)/Ts, 1-based
  double bandwidth() const;               // B = M/Ts
};

ModemParams derive_params(int m, double bit_rate, std::size_t code_size,
                          double base_frequency, double symbol_energy = 1.0);

// log2|C| / M^2, bit/s per Hz.
double bandwidth_efficiency(int m, std::size_t code_size);

// log2(M) / M: one symbol per slot, the uncoded M-ary FSK reference.
double uncoded_efficiency(int m);

// ((M - d + 1) / M) * log2(M) / M: large-M efficiency of codes meeting the
// cardinality bound.
double asymptotic_efficiency(int m, int d);

// log2(M!/(d-1)!) / M^2: exact efficiency of a bound-meeting code.
double bound_bandwidth_efficiency(int m, int d);

// Sampled transmit waveform: M concatenated segments of
// sqrt(2 Es / Ts) cos(2 pi f_{w_k} t + theta_k), t local to each segment.
// Requires sample_rate >= 4 (f0 + M/Ts); random phase policy needs an rng.
std::vector<double> modulate(const Codeword& word, const ModemParams& params,
                             PhasePolicy policy, double sample_rate,
                             std::mt19937_64* rng = nullptr);

// Non-coherent detector-bank statistic for one slot: e_i = |s_i + n_i| where
// s_i is the transmitted tone (amplitude sqrt(Es), uniform random phase) and
// n_i is circular complex Gaussian noise with per-component variance N/2 on
// every tone. noise_psd == 0 yields the exact noiseless envelopes and draws
// nothing from the rng.
EnvelopeVector envelope_statistics(std::optional<int> tx_tone,
                                   const ModemParams& params, double noise_psd,
                                   std::mt19937_64& rng);
void envelope_statistics(std::optional<int> tx_tone, const ModemParams& params,
                         double noise_psd, std::mt19937_64& rng,
                         EnvelopeVector& out);

// 0.5 exp(-Es/2N0): high-SNR symbol error approximation for non-coherent
// M-ary FSK on AWGN.
double awgn_symbol_error_approx(double es_over_n0);

// 0.5 exp(-SNR/4): insertion/deletion probability approximation for the
// threshold detector at threshold sqrt(Es)/2.
double insertion_deletion_prob_approx(double snr);

}  // namespace permfsk
