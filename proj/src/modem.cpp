#include "permfsk/modem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace permfsk {

double ModemParams::tone_frequency(int tone) const {
  return base_frequency + (tone - 1) * tone_spacing;
}

double ModemParams::bandwidth() const { return m / symbol_duration; }

ModemParams derive_params(int m, double bit_rate, std::size_t code_size,
                          double base_frequency, double symbol_energy) {
  if (m < 2) throw std::invalid_argument("derive_params: M must be >= 2");
  if (!(bit_rate > 0.0))
    throw std::invalid_argument("derive_params: bit rate must be positive");
  if (code_size < 2)
    throw std::invalid_argument(
        "derive_params: need at least two code words for a positive symbol "
        "duration");
  if (base_frequency < 0.0)
    throw std::invalid_argument("derive_params: base frequency must be >= 0");
  if (!(symbol_energy > 0.0))
    throw std::invalid_argument("derive_params: symbol energy must be positive");
  ModemParams p;
  p.m = m;
  p.bit_rate = bit_rate;
  p.code_size = code_size;
  p.base_frequency = base_frequency;
  p.symbol_duration =
      std::log2(static_cast<double>(code_size)) / (m * bit_rate);
  p.tone_spacing = 1.0 / p.symbol_duration;
  p.symbol_energy = symbol_energy;
  return p;
}

double bandwidth_efficiency(int m, std::size_t code_size) {
  if (m < 2) throw std::invalid_argument("bandwidth_efficiency: M must be >= 2");
  if (code_size < 2)
    throw std::invalid_argument("bandwidth_efficiency: need |C| >= 2");
  return std::log2(static_cast<double>(code_size)) /
         (static_cast<double>(m) * m);
}

double uncoded_efficiency(int m) {
  if (m < 2) throw std::invalid_argument("uncoded_efficiency: M must be >= 2");
  return std::log2(static_cast<double>(m)) / m;
}

double asymptotic_efficiency(int m, int d) {
  if (m < 2) throw std::invalid_argument("asymptotic_efficiency: M must be >= 2");
  if (d < 2 || d > m)
    throw std::invalid_argument("asymptotic_efficiency: need 2 <= d <= M");
  return (static_cast<double>(m - d + 1) / m) *
         std::log2(static_cast<double>(m)) / m;
}

double bound_bandwidth_efficiency(int m, int d) {
  if (m < 2)
    throw std::invalid_argument("bound_bandwidth_efficiency: M must be >= 2");
  if (d < 2 || d > m)
    throw std::invalid_argument("bound_bandwidth_efficiency: need 2 <= d <= M");
  // log2(M!/(d-1)!) as a sum of logs; immune to integer overflow.
  double bits = 0.0;
  for (int k = d; k <= m; ++k) bits += std::log2(static_cast<double>(k));
  return bits / (static_cast<double>(m) * m);
}

std::vector<double> modulate(const Codeword& word, const ModemParams& params,
                             PhasePolicy policy, double sample_rate,
                             std::mt19937_64* rng) {
  if (!is_permutation_word(word, params.m))
    throw std::invalid_argument("modulate: word is not a permutation of 1..M");
  const double f_top = params.base_frequency + params.m / params.symbol_duration;
  if (!(sample_rate >= 4.0 * f_top))
    throw std::invalid_argument(
        "modulate: sample rate below 4x the top of the band");
  if (policy == PhasePolicy::kRandomPerSymbol && rng == nullptr)
    throw std::invalid_argument("modulate: random phase policy needs an rng");

  const long n = std::lround(params.symbol_duration * sample_rate);
  const double amp =
      std::sqrt(2.0 * params.symbol_energy / params.symbol_duration);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(params.m));
  for (int k = 0; k < params.m; ++k) {
    const double f = params.tone_frequency(word[static_cast<std::size_t>(k)]);
    const double theta =
        policy == PhasePolicy::kRandomPerSymbol ? phase(*rng) : 0.0;
    const double w = 2.0 * std::numbers::pi * f;
    for (long j = 0; j < n; ++j)
      out.push_back(amp * std::cos(w * (static_cast<double>(j) / sample_rate) +
                                   theta));
  }
  return out;
}

void envelope_statistics(std::optional<int> tx_tone, const ModemParams& params,
                         double noise_psd, std::mt19937_64& rng,
                         EnvelopeVector& out) {
  if (noise_psd < 0.0)
    throw std::invalid_argument("envelope_statistics: noise level must be >= 0");
  if (tx_tone && (*tx_tone < 1 || *tx_tone > params.m))
    throw std::invalid_argument("envelope_statistics: tone out of range");
  out.assign(static_cast<std::size_t>(params.m), 0.0);
  const double a = std::sqrt(params.symbol_energy);
  if (noise_psd == 0.0) {
    if (tx_tone) out[static_cast<std::size_t>(*tx_tone - 1)] = a;
    return;
  }
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> gauss(0.0, std::sqrt(noise_psd / 2.0));
  double sig_re = 0.0;
  double sig_im = 0.0;
  if (tx_tone) {
    const double theta = phase(rng);
    sig_re = a * std::cos(theta);
    sig_im = a * std::sin(theta);
  }
  for (int i = 0; i < params.m; ++i) {
    double re = gauss(rng);
    double im = gauss(rng);
    if (tx_tone && i == *tx_tone - 1) {
      re += sig_re;
      im += sig_im;
    }
    out[static_cast<std::size_t>(i)] = std::sqrt(re * re + im * im);
  }
}

EnvelopeVector envelope_statistics(std::optional<int> tx_tone,
                                   const ModemParams& params, double noise_psd,
                                   std::mt19937_64& rng) {
  EnvelopeVector out;
  envelope_statistics(tx_tone, params, noise_psd, rng, out);
  return out;
}

double awgn_symbol_error_approx(double es_over_n0) {
  if (es_over_n0 < 0.0)
    throw std::invalid_argument("awgn_symbol_error_approx: SNR must be >= 0");
  return 0.5 * std::exp(-es_over_n0 / 2.0);
}

double insertion_deletion_prob_approx(double snr) {
  if (snr < 0.0)
    throw std::invalid_argument(
        "insertion_deletion_prob_approx: SNR must be >= 0");
  return 0.5 * std::exp(-snr / 4.0);
}

}  // namespace permfsk
