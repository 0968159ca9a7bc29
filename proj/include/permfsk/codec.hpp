#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permfsk/modem.hpp"
#include "permfsk/permcode.hpp"

namespace permfsk {

// Multi-valued demodulator output: one set of detected tones per symbol slot.
// Slots and tones are 1-based; a frame for an M-tone alphabet has exactly M
// slots. Sets are stored as bit masks (tone t <-> bit t-1), so M <= 31.
class DemodFrame {
 public:
  explicit DemodFrame(int m);
  static DemodFrame from_slots(int m,
                               const std::vector<std::vector<int>>& slots);

  int m() const { return m_; }
  bool contains(int slot, int tone) const;
  void add(int slot, int tone);
  void remove(int slot, int tone);
  void fill_slot(int slot);  // all M tones detected
  void clear();
  bool slot_empty(int slot) const;
  std::uint32_t slot_mask(int slot) const;
  std::vector<int> slot_tones(int slot) const;  // ascending

  // Text format: one line per slot, detected tones as comma-separated 1-based
  // numbers in ascending order, '-' for an empty slot. Round-trips exactly.
  std::string to_text() const;
  static DemodFrame parse_text(const std::string& text, int m);

  bool operator==(const DemodFrame& other) const = default;

 private:
  void check_slot(int slot) const;
  void check_tone(int tone) const;

  int m_ = 0;
  std::vector<std::uint32_t> slots_;
};

// Per-tone detection thresholds, in the same sqrt(energy) units as
// EnvelopeVector.
struct Thresholds {
  std::vector<double> values;
};

// T_i = sqrt(Es)/2 + c * sigma for every tone. The default margin c = 0 puts
// the threshold halfway up the noiseless tone amplitude.
Thresholds make_thresholds(int m, double es_per_tone,
                           double noise_margin_c = 0.0,
                           double noise_sigma = 0.0);

// A tone is detected when its envelope strictly exceeds its threshold.
DemodFrame threshold_demodulate(const std::vector<EnvelopeVector>& slots,
                                const Thresholds& thresholds);
void threshold_demodulate(const std::vector<EnvelopeVector>& slots,
                          const Thresholds& thresholds, DemodFrame& out);

// Number of slots whose detected set contains the word's symbol.
int agreement_score(const Codeword& word, const DemodFrame& frame);

// Decoding outcome. Ties are surfaced, never silently broken:
//  - kUnique: exactly one word attains the maximum score (message is set)
//  - kTie:    two or more words attain it (candidates lists them, ascending)
//  - kEmpty:  the maximum score is 0, i.e. the frame carries no agreement
//             evidence for any word (candidates is empty)
struct Decision {
  enum class Kind { kUnique, kTie, kEmpty };
  Kind kind = Kind::kEmpty;
  std::optional<std::size_t> message;   // 0-based, set iff kind == kUnique
  std::vector<std::size_t> candidates;  // argmax set, ascending
  int score = 0;                        // the maximum agreement score
};

Decision decode_max_agreement(const DemodFrame& frame, const CodeBook& code);

}  // namespace permfsk
