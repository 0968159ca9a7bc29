#include "permfsk/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace permfsk {

namespace {

void check_index(int value, int m, const char* what) {
  if (value < 1 || value > m)
    throw std::invalid_argument(std::string("scenario: ") + what +
                                " out of range 1..M");
}

}  // namespace

void ChannelScenario::validate(int m) const {
  if (m < 1) throw std::invalid_argument("scenario: M must be positive");
  for (int t : jammed_tones) check_index(t, m, "jammed tone");
  for (int s : impulse_slots) check_index(s, m, "impulse slot");
  for (const auto& [slot, tone] : deletions) {
    check_index(slot, m, "deletion slot");
    check_index(tone, m, "deletion tone");
  }
  for (const auto& [slot, tone] : insertions) {
    check_index(slot, m, "insertion slot");
    check_index(tone, m, "insertion tone");
  }
  if (background_noise_psd < 0.0)
    throw std::invalid_argument("scenario: noise level must be >= 0");
}

std::string ChannelScenario::to_json_text() const {
  nlohmann::ordered_json j;
  j["jammed_tones"] = jammed_tones;
  j["impulse_slots"] = impulse_slots;
  j["deletions"] = nlohmann::json::array();
  for (const auto& [slot, tone] : deletions)
    j["deletions"].push_back({slot, tone});
  j["insertions"] = nlohmann::json::array();
  for (const auto& [slot, tone] : insertions)
    j["insertions"].push_back({slot, tone});
  j["background_noise_psd"] = background_noise_psd;
  return j.dump(2) + "\n";
}

ChannelScenario ChannelScenario::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("scenario: bad JSON: ") + e.what());
  }
  if (!j.is_object())
    throw std::invalid_argument("scenario: expected a JSON object");
  ChannelScenario sc;
  try {
    sc.jammed_tones = j.value("jammed_tones", std::vector<int>{});
    sc.impulse_slots = j.value("impulse_slots", std::vector<int>{});
    for (const auto& pair : j.value("deletions", nlohmann::json::array())) {
      if (!pair.is_array() || pair.size() != 2)
        throw std::invalid_argument(
            "scenario: each deletion must be a [slot, tone] pair");
      sc.deletions.emplace_back(pair[0].get<int>(), pair[1].get<int>());
    }
    for (const auto& pair : j.value("insertions", nlohmann::json::array())) {
      if (!pair.is_array() || pair.size() != 2)
        throw std::invalid_argument(
            "scenario: each insertion must be a [slot, tone] pair");
      sc.insertions.emplace_back(pair[0].get<int>(), pair[1].get<int>());
    }
    sc.background_noise_psd = j.value("background_noise_psd", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("scenario: bad field: ") +
                                e.what());
  }
  if (sc.background_noise_psd < 0.0)
    throw std::invalid_argument("scenario: noise level must be >= 0");
  return sc;
}

void ChannelScenario::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << to_json_text();
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

ChannelScenario ChannelScenario::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

double received_power(double input_power_w, double distance_m) {
  if (!(input_power_w > 0.0))
    throw std::invalid_argument("received_power: input power must be positive");
  if (distance_m < 0.0)
    throw std::invalid_argument("received_power: distance must be >= 0");
  return input_power_w * std::pow(10.0, -0.01 * distance_m);
}

double worst_case_noise_psd(double frequency_hz) {
  if (frequency_hz < 0.0)
    throw std::invalid_argument("worst_case_noise_psd: frequency must be >= 0");
  return std::pow(10.0, -8.0 - 4e-5 * frequency_hz);
}

double snr_lower_bound(double bandwidth_khz, double input_power_w,
                       double distance_m, double band_edge_khz, int m) {
  if (m < 1) throw std::invalid_argument("snr_lower_bound: M must be >= 1");
  if (!(bandwidth_khz > 0.0) || bandwidth_khz >= band_edge_khz)
    throw std::invalid_argument(
        "snr_lower_bound: bandwidth must lie inside (0, band edge)");
  // The transmitted tone carries the full received power during its slot;
  // each detector integrates noise over its own B/M sub-band.
  const double signal = received_power(input_power_w, distance_m);
  // The quietest spot available to the band is against the top edge, so its
  // lowest (noisiest) frequency is band_edge - B.
  const double psd = worst_case_noise_psd((band_edge_khz - bandwidth_khz) * 1e3);
  const double detector_noise = (bandwidth_khz / m) * 1e3 * psd;
  return signal / detector_noise;
}

std::vector<LinkBudgetRow> link_budget_table(
    double bit_rate, int m,
    const std::vector<std::pair<int, std::size_t>>& code_sizes) {
  if (!(bit_rate > 0.0))
    throw std::invalid_argument("link_budget_table: bit rate must be positive");
  std::vector<LinkBudgetRow> rows;
  rows.reserve(code_sizes.size());
  for (const auto& [d_min, size] : code_sizes) {
    const double bandwidth_hz = static_cast<double>(m) * m * bit_rate /
                                std::log2(static_cast<double>(size));
    const double b_khz = bandwidth_hz / 1e3;
    const double snr = snr_lower_bound(b_khz, 25.0, 500.0, 95.0, m);
    rows.push_back({d_min, size, b_khz, 10.0 * std::log10(snr)});
  }
  return rows;
}

DemodFrame apply_scenario_symbolic(const Codeword& tx,
                                   const ChannelScenario& scenario) {
  const int m = static_cast<int>(tx.size());
  if (!is_permutation_word(tx, m))
    throw std::invalid_argument(
        "apply_scenario_symbolic: tx word is not a permutation");
  scenario.validate(m);
  DemodFrame frame(m);
  for (int k = 1; k <= m; ++k)
    frame.add(k, tx[static_cast<std::size_t>(k - 1)]);
  for (int slot : scenario.impulse_slots) frame.fill_slot(slot);
  for (int tone : scenario.jammed_tones)
    for (int k = 1; k <= m; ++k) frame.add(k, tone);
  for (const auto& [slot, tone] : scenario.insertions)
    if (tone != tx[static_cast<std::size_t>(slot - 1)]) frame.add(slot, tone);
  for (const auto& [slot, tone] : scenario.deletions)
    if (tone == tx[static_cast<std::size_t>(slot - 1)])
      frame.remove(slot, tone);
  return frame;
}

void apply_scenario_stochastic(const Codeword& tx,
                               const ChannelScenario& scenario,
                               const ModemParams& params, std::mt19937_64& rng,
                               const EnvelopeInjection& injection,
                               std::vector<EnvelopeVector>& out) {
  const int m = params.m;
  if (!is_permutation_word(tx, m))
    throw std::invalid_argument(
        "apply_scenario_stochastic: tx word is not a permutation");
  scenario.validate(m);
  const double a = std::sqrt(params.symbol_energy);
  out.resize(static_cast<std::size_t>(m));
  std::uint32_t impulse_mask = 0;
  for (int slot : scenario.impulse_slots) impulse_mask |= 1U << (slot - 1);
  for (int k = 1; k <= m; ++k) {
    EnvelopeVector& env = out[static_cast<std::size_t>(k - 1)];
    const int tx_tone = tx[static_cast<std::size_t>(k - 1)];
    envelope_statistics(tx_tone, params, scenario.background_noise_psd, rng,
                        env);
    if ((impulse_mask >> (k - 1)) & 1U)
      for (int i = 0; i < m; ++i)
        env[static_cast<std::size_t>(i)] += injection.impulse_scale * a;
    for (int tone : scenario.jammed_tones)
      env[static_cast<std::size_t>(tone - 1)] += injection.jammer_scale * a;
    for (const auto& [slot, tone] : scenario.insertions)
      if (slot == k && tone != tx_tone)
        env[static_cast<std::size_t>(tone - 1)] += injection.insertion_scale * a;
    // Deletions last: a deleted tone is gone regardless of what else hit it.
    for (const auto& [slot, tone] : scenario.deletions)
      if (slot == k && tone == tx_tone) env[static_cast<std::size_t>(tone - 1)] = 0.0;
  }
}

std::vector<EnvelopeVector> apply_scenario_stochastic(
    const Codeword& tx, const ChannelScenario& scenario,
    const ModemParams& params, std::mt19937_64& rng,
    const EnvelopeInjection& injection) {
  std::vector<EnvelopeVector> out;
  apply_scenario_stochastic(tx, scenario, params, rng, injection, out);
  return out;
}

int impulse_slot_count(double signaling_rate_hz, double impulse_duration_s) {
  if (!(signaling_rate_hz > 0.0))
    throw std::invalid_argument("impulse_slot_count: rate must be positive");
  if (!(impulse_duration_s > 0.0))
    throw std::invalid_argument("impulse_slot_count: duration must be positive");
  return static_cast<int>(std::ceil(impulse_duration_s * signaling_rate_hz)) +
         1;
}

double ImpulseProcess::draw_inter_arrival(std::mt19937_64& rng) const {
  if (!(duration_s > 0.0))
    throw std::invalid_argument("ImpulseProcess: duration must be positive");
  if (!(min_inter_arrival_s > 0.0) ||
      !(max_inter_arrival_s >= min_inter_arrival_s))
    throw std::invalid_argument(
        "ImpulseProcess: need 0 < min inter-arrival <= max");
  std::uniform_real_distribution<double> gap(min_inter_arrival_s,
                                             max_inter_arrival_s);
  return gap(rng);
}

}  // namespace permfsk
