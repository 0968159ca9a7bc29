#include "permfsk/codec.hpp"

#include <sstream>
#include <stdexcept>

namespace permfsk {

DemodFrame::DemodFrame(int m) : m_(m) {
  if (m < 1 || m > 31)
    throw std::invalid_argument("DemodFrame: M must be in 1..31");
  slots_.assign(static_cast<std::size_t>(m), 0);
}

DemodFrame DemodFrame::from_slots(int m,
                                  const std::vector<std::vector<int>>& slots) {
  DemodFrame frame(m);
  if (slots.size() != static_cast<std::size_t>(m))
    throw std::invalid_argument("DemodFrame: expected exactly M slots");
  for (std::size_t k = 0; k < slots.size(); ++k)
    for (int tone : slots[k]) frame.add(static_cast<int>(k) + 1, tone);
  return frame;
}

void DemodFrame::check_slot(int slot) const {
  if (slot < 1 || slot > m_)
    throw std::out_of_range("DemodFrame: slot out of range");
}

void DemodFrame::check_tone(int tone) const {
  if (tone < 1 || tone > m_)
    throw std::out_of_range("DemodFrame: tone out of range");
}

bool DemodFrame::contains(int slot, int tone) const {
  check_slot(slot);
  check_tone(tone);
  return (slots_[static_cast<std::size_t>(slot - 1)] >> (tone - 1)) & 1U;
}

void DemodFrame::add(int slot, int tone) {
  check_slot(slot);
  check_tone(tone);
  slots_[static_cast<std::size_t>(slot - 1)] |= 1U << (tone - 1);
}

void DemodFrame::remove(int slot, int tone) {
  check_slot(slot);
  check_tone(tone);
  slots_[static_cast<std::size_t>(slot - 1)] &= ~(1U << (tone - 1));
}

void DemodFrame::fill_slot(int slot) {
  check_slot(slot);
  slots_[static_cast<std::size_t>(slot - 1)] =
      (m_ == 31) ? 0x7fffffffU : ((1U << m_) - 1U);
}

void DemodFrame::clear() { slots_.assign(slots_.size(), 0); }

bool DemodFrame::slot_empty(int slot) const {
  check_slot(slot);
  return slots_[static_cast<std::size_t>(slot - 1)] == 0;
}

std::uint32_t DemodFrame::slot_mask(int slot) const {
  check_slot(slot);
  return slots_[static_cast<std::size_t>(slot - 1)];
}

std::vector<int> DemodFrame::slot_tones(int slot) const {
  const std::uint32_t mask = slot_mask(slot);
  std::vector<int> tones;
  for (int t = 1; t <= m_; ++t)
    if ((mask >> (t - 1)) & 1U) tones.push_back(t);
  return tones;
}

std::string DemodFrame::to_text() const {
  std::ostringstream out;
  for (int k = 1; k <= m_; ++k) {
    const auto tones = slot_tones(k);
    if (tones.empty()) {
      out << '-';
    } else {
      for (std::size_t i = 0; i < tones.size(); ++i) {
        if (i) out << ',';
        out << tones[i];
      }
    }
    out << '\n';
  }
  return out.str();
}

DemodFrame DemodFrame::parse_text(const std::string& text, int m) {
  DemodFrame frame(m);
  std::istringstream in(text);
  std::string line;
  int slot = 0;
  while (std::getline(in, line)) {
    if (line.empty() && in.eof()) break;
    ++slot;
    if (slot > m) throw std::invalid_argument("frame: more lines than slots");
    if (line == "-") continue;
    if (!line.empty() && line.back() == ',')
      throw std::invalid_argument("frame: trailing comma in slot line");
    std::istringstream fields(line);
    std::string field;
    bool any = false;
    while (std::getline(fields, field, ',')) {
      std::size_t used = 0;
      int tone = 0;
      try {
        tone = std::stoi(field, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("frame: bad tone number '" + field + "'");
      }
      if (used != field.size())
        throw std::invalid_argument("frame: bad tone number '" + field + "'");
      frame.add(slot, tone);
      any = true;
    }
    if (!any) throw std::invalid_argument("frame: empty slot line (use '-')");
  }
  if (slot != m)
    throw std::invalid_argument("frame: expected one line per slot");
  return frame;
}

Thresholds make_thresholds(int m, double es_per_tone, double noise_margin_c,
                           double noise_sigma) {
  if (m < 1) throw std::invalid_argument("make_thresholds: M must be >= 1");
  if (!(es_per_tone > 0.0))
    throw std::invalid_argument("make_thresholds: tone energy must be positive");
  if (noise_margin_c < 0.0 || noise_sigma < 0.0)
    throw std::invalid_argument("make_thresholds: margin terms must be >= 0");
  const double t = std::sqrt(es_per_tone) / 2.0 + noise_margin_c * noise_sigma;
  Thresholds out;
  out.values.assign(static_cast<std::size_t>(m), t);
  return out;
}

void threshold_demodulate(const std::vector<EnvelopeVector>& slots,
                          const Thresholds& thresholds, DemodFrame& out) {
  const std::size_t m = thresholds.values.size();
  if (slots.size() != m)
    throw std::invalid_argument(
        "threshold_demodulate: expected one envelope vector per slot");
  if (out.m() != static_cast<int>(m))
    throw std::invalid_argument("threshold_demodulate: frame size mismatch");
  out.clear();
  for (std::size_t k = 0; k < m; ++k) {
    const EnvelopeVector& env = slots[k];
    if (env.size() != m)
      throw std::invalid_argument(
          "threshold_demodulate: envelope vector length mismatch");
    for (std::size_t i = 0; i < m; ++i)
      if (env[i] > thresholds.values[i])
        out.add(static_cast<int>(k) + 1, static_cast<int>(i) + 1);
  }
}

DemodFrame threshold_demodulate(const std::vector<EnvelopeVector>& slots,
                                const Thresholds& thresholds) {
  DemodFrame out(static_cast<int>(thresholds.values.size()));
  threshold_demodulate(slots, thresholds, out);
  return out;
}

int agreement_score(const Codeword& word, const DemodFrame& frame) {
  if (word.size() != static_cast<std::size_t>(frame.m()))
    throw std::invalid_argument("agreement_score: word length mismatch");
  int score = 0;
  for (int k = 1; k <= frame.m(); ++k)
    score += frame.contains(k, word[static_cast<std::size_t>(k - 1)]);
  return score;
}

Decision decode_max_agreement(const DemodFrame& frame, const CodeBook& code) {
  if (code.size() == 0)
    throw std::invalid_argument("decode_max_agreement: empty code book");
  if (frame.m() != code.m())
    throw std::invalid_argument(
        "decode_max_agreement: frame does not match the code's alphabet");
  int best = -1;
  std::vector<std::size_t> argmax;
  for (std::size_t i = 0; i < code.size(); ++i) {
    const int s = agreement_score(code.word(i), frame);
    if (s > best) {
      best = s;
      argmax.assign(1, i);
    } else if (s == best) {
      argmax.push_back(i);
    }
  }
  Decision decision;
  decision.score = best;
  if (best == 0) {
    decision.kind = Decision::Kind::kEmpty;
  } else if (argmax.size() == 1) {
    decision.kind = Decision::Kind::kUnique;
    decision.message = argmax.front();
    decision.candidates = std::move(argmax);
  } else {
    decision.kind = Decision::Kind::kTie;
    decision.candidates = std::move(argmax);
  }
  return decision;
}

}  // namespace permfsk
