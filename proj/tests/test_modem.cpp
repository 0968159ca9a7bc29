#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "doctest.h"

#include "permfsk/modem.hpp"

using namespace permfsk;
using doctest::Approx;

namespace {

// Parameters chosen so that f0*Ts and fs*Ts are integers: segment energies
// and cross-correlations are then exact up to floating-point rounding.
ModemParams nice_params(int m) {
  // Ts = log2(4) / (m * (2000/m)) = 1e-3 s for every m.
  return derive_params(m, 2000.0 / m, 4, 5000.0);
}

double segment_energy(const std::vector<double>& samples, std::size_t first,
                      std::size_t count, double sample_rate) {
  double e = 0.0;
  for (std::size_t j = first; j < first + count; ++j) e += samples[j] * samples[j];
  return e / sample_rate;
}

double segment_correlation(const std::vector<double>& samples, std::size_t a,
                           std::size_t b, std::size_t count,
                           double sample_rate) {
  double c = 0.0;
  for (std::size_t j = 0; j < count; ++j) c += samples[a + j] * samples[b + j];
  return c / sample_rate;
}

}  // namespace

TEST_CASE("derived parameters match the closed forms") {
  const ModemParams p = derive_params(4, 4800.0, 12, 60e3);
  CHECK(p.symbol_duration == Approx(1.867167969e-4).epsilon(1e-9));
  CHECK(p.tone_spacing == Approx(1.0 / 1.867167969e-4).epsilon(1e-9));
  CHECK(p.bandwidth() == Approx(21422.818226).epsilon(1e-9));
  CHECK(p.tone_frequency(1) == Approx(60e3));
  CHECK(p.tone_frequency(4) == Approx(60e3 + 3.0 * p.tone_spacing));

  const ModemParams q = derive_params(4, 4800.0, 24, 60e3);
  CHECK(q.symbol_duration == Approx(2.388001302e-4).epsilon(1e-9));
  CHECK(q.bandwidth() == Approx(16750.409624).epsilon(1e-9));

  CHECK(derive_params(4, 4800.0, 4, 60e3).bandwidth() == Approx(38400.0));
}

TEST_CASE("derived parameter failure modes") {
  CHECK_THROWS_AS(derive_params(1, 4800.0, 12, 60e3), std::invalid_argument);
  CHECK_THROWS_AS(derive_params(4, 0.0, 12, 60e3), std::invalid_argument);
  CHECK_THROWS_AS(derive_params(4, -4800.0, 12, 60e3), std::invalid_argument);
  CHECK_THROWS_AS(derive_params(4, 4800.0, 1, 60e3), std::invalid_argument);
  CHECK_THROWS_AS(derive_params(4, 4800.0, 12, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(derive_params(4, 4800.0, 12, 60e3, 0.0),
                  std::invalid_argument);
}

TEST_CASE("bandwidth shrinks as the code grows") {
  double prev = 1e300;
  for (std::size_t size : {4, 8, 12, 24, 60, 120}) {
    const double b = derive_params(4, 4800.0, size, 60e3).bandwidth();
    CHECK(b < prev);
    prev = b;
  }
}

TEST_CASE("efficiency formulas") {
  CHECK(bandwidth_efficiency(4, 24) == Approx(0.2865601563).epsilon(1e-9));
  CHECK(bandwidth_efficiency(4, 4) == Approx(0.125));
  CHECK(uncoded_efficiency(4) == Approx(0.5));
  // A repetition-style code (d = M) meets the bound with |C| = M, and all
  // three formulas agree there.
  CHECK(asymptotic_efficiency(4, 4) == Approx(0.125));
  CHECK(bound_bandwidth_efficiency(4, 4) == Approx(0.125));
  CHECK(bound_bandwidth_efficiency(4, 3) ==
        Approx(bandwidth_efficiency(4, 12)));
  CHECK_THROWS_AS(bandwidth_efficiency(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(bandwidth_efficiency(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(asymptotic_efficiency(4, 5), std::invalid_argument);
  CHECK_THROWS_AS(bound_bandwidth_efficiency(4, 1), std::invalid_argument);
}

TEST_CASE("full-code efficiency stays within half of uncoded, approaching it") {
  double prev = 0.49;
  for (int m = 2; m <= 64; ++m) {
    const double ratio = bound_bandwidth_efficiency(m, 2) / uncoded_efficiency(m);
    CHECK(ratio >= 0.5);
    CHECK(ratio <= 1.0);
    CHECK(ratio > prev);
    prev = ratio;
  }
}

TEST_CASE("modulated segments carry Es and are pairwise orthogonal") {
  for (int m = 2; m <= 8; ++m) {
    const ModemParams p = nice_params(m);
    const double fs = 4.0 * (p.base_frequency + m * p.tone_spacing);
    Codeword word(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
      word[static_cast<std::size_t>(i)] = (i + 1) % m + 1;  // cyclic shift
    const auto samples = modulate(word, p, PhasePolicy::kZeroPhase, fs);
    const std::size_t n = static_cast<std::size_t>(
        std::lround(p.symbol_duration * fs));
    REQUIRE(samples.size() == n * static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
      CHECK(segment_energy(samples, static_cast<std::size_t>(k) * n, n, fs) ==
            Approx(p.symbol_energy).epsilon(1e-6));
    }
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        const double c = segment_correlation(
            samples, static_cast<std::size_t>(i) * n,
            static_cast<std::size_t>(j) * n, n, fs);
        CHECK(std::abs(c) < 1e-6 * p.symbol_energy);
      }
  }
}

TEST_CASE("random per-symbol phase keeps segment energy exact") {
  const ModemParams p = nice_params(4);
  const double fs = 4.0 * (p.base_frequency + 4 * p.tone_spacing);
  std::mt19937_64 rng(11);
  const auto samples =
      modulate({2, 4, 1, 3}, p, PhasePolicy::kRandomPerSymbol, fs, &rng);
  const std::size_t n =
      static_cast<std::size_t>(std::lround(p.symbol_duration * fs));
  for (int k = 0; k < 4; ++k)
    CHECK(segment_energy(samples, static_cast<std::size_t>(k) * n, n, fs) ==
          Approx(p.symbol_energy).epsilon(1e-6));
}

TEST_CASE("modulate failure modes") {
  const ModemParams p = nice_params(4);
  const double fs = 4.0 * (p.base_frequency + 4 * p.tone_spacing);
  CHECK_THROWS_AS(modulate({1, 2, 3}, p, PhasePolicy::kZeroPhase, fs),
                  std::invalid_argument);
  CHECK_THROWS_AS(modulate({1, 2, 2, 4}, p, PhasePolicy::kZeroPhase, fs),
                  std::invalid_argument);
  CHECK_THROWS_AS(modulate({1, 2, 3, 4}, p, PhasePolicy::kZeroPhase, fs / 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      modulate({1, 2, 3, 4}, p, PhasePolicy::kRandomPerSymbol, fs, nullptr),
      std::invalid_argument);
}

TEST_CASE("noiseless envelopes are exact") {
  const ModemParams p = derive_params(4, 4800.0, 4, 60e3, 2.25);
  std::mt19937_64 rng(1);
  const EnvelopeVector env = envelope_statistics(2, p, 0.0, rng);
  REQUIRE(env.size() == 4);
  CHECK(env[0] == 0.0);
  CHECK(env[1] == 1.5);  // sqrt(2.25)
  CHECK(env[2] == 0.0);
  CHECK(env[3] == 0.0);
  const EnvelopeVector quiet = envelope_statistics(std::nullopt, p, 0.0, rng);
  for (double e : quiet) CHECK(e == 0.0);
}

TEST_CASE("noise-only envelope exceedance matches the Rayleigh tail") {
  // P(e > sqrt(Es)/2) = exp(-Es/4N) for a tone carrying nothing.
  const ModemParams p = derive_params(4, 4800.0, 4, 60e3);
  std::mt19937_64 rng(42);
  const double noise = 0.5;  // Es/(4N) = 0.5
  const double expected = 0.6065306597;
  const int trials = 200000;
  std::int64_t exceed = 0;
  EnvelopeVector env;
  for (int t = 0; t < trials; ++t) {
    envelope_statistics(std::nullopt, p, noise, rng, env);
    for (double e : env) exceed += e > 0.5;
  }
  const double n = 4.0 * trials;
  const double se = std::sqrt(expected * (1 - expected) / n);
  CHECK(std::abs(exceed / n - expected) < 4.0 * se);
}

TEST_CASE("transmitted tone envelope concentrates at sqrt(Es)") {
  const ModemParams p = derive_params(4, 4800.0, 4, 60e3);
  std::mt19937_64 rng(43);
  double sum = 0.0;
  const int trials = 20000;
  EnvelopeVector env;
  for (int t = 0; t < trials; ++t) {
    envelope_statistics(3, p, 1e-4, rng, env);
    sum += env[2];
  }
  CHECK(sum / trials == Approx(1.0).epsilon(1e-2));
}

TEST_CASE("envelope statistics failure modes") {
  const ModemParams p = derive_params(4, 4800.0, 4, 60e3);
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(envelope_statistics(0, p, 0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(envelope_statistics(5, p, 0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(envelope_statistics(1, p, -0.1, rng), std::invalid_argument);
}

TEST_CASE("error probability approximations") {
  CHECK(awgn_symbol_error_approx(0.0) == Approx(0.5));
  CHECK(awgn_symbol_error_approx(7.8240460109) == Approx(0.01).epsilon(1e-9));
  CHECK(insertion_deletion_prob_approx(0.0) == Approx(0.5));
  CHECK(insertion_deletion_prob_approx(6.4377516497) ==
        Approx(0.1).epsilon(1e-9));
  // Monotone decreasing in SNR.
  double prev = 1.0;
  for (double snr = 0.0; snr <= 40.0; snr += 2.0) {
    const double p = insertion_deletion_prob_approx(snr);
    CHECK(p < prev);
    prev = p;
  }
  CHECK_THROWS_AS(awgn_symbol_error_approx(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(insertion_deletion_prob_approx(-1.0), std::invalid_argument);
}
