#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace permfsk {

// A codeword of length M over the alphabet {1..M}. Valid codewords are
// permutations: every symbol occurs exactly once.
using Codeword = std::vector<int>;

// Code sizes are exact integers; M!/(d-1)! outgrows 64 bits well before the
// M = 20 ceiling we care about, so bounds are carried in 128 bits.
using uint128 = unsigned __int128;

std::string to_string(uint128 value);

bool is_permutation_word(const Codeword& word, int m);

// Number of positions in which a and b differ. Lengths must match.
int hamming_distance(const Codeword& a, const Codeword& b);

// Upper bound M!/(d-1)! on the size of a permutation code of length M with
// minimum Hamming distance d. Exact integer arithmetic; throws
// std::overflow_error if the product does not fit in 128 bits.
uint128 cardinality_bound(int m, int d);

// Ordered collection of pairwise-distinct permutations of 1..M. The exact
// minimum pairwise Hamming distance is computed once on construction.
class CodeBook {
 public:
  // Validates every word and rejects duplicates.
  CodeBook(int m, std::vector<Codeword> words);

  int m() const { return m_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<Codeword>& words() const { return words_; }
  const Codeword& word(std::size_t index) const;

  // Message indices are 0-based in the API; file formats and the CLI number
  // messages from 1.
  const Codeword& encode(std::size_t message) const;

  // Cached minimum pairwise Hamming distance; 0 when fewer than two words.
  int min_hamming_distance() const { return d_min_; }

  // Text format: header "M d_min count", then one word per line as 1-based
  // space-separated symbols. Round-trips byte-exactly.
  void save(std::ostream& out) const;
  static CodeBook load(std::istream& in);
  std::string to_text() const;
  void save_file(const std::string& path) const;
  static CodeBook load_file(const std::string& path);

  bool operator==(const CodeBook& other) const = default;

 private:
  int m_ = 0;
  int d_min_ = 0;
  std::vector<Codeword> words_;
};

// Exact minimum pairwise distance, recomputed from the word list.
// Throws std::domain_error when the book has fewer than two words.
int min_distance(const CodeBook& code);

// The even permutations of 1..M as a code book: M!/2 words with minimum
// distance exactly 3 (the product of two distinct even permutations is never
// a transposition). Meets the cardinality bound for d = 3.
CodeBook even_permutation_code(int m);

// All M! permutations in lexicographic order.
std::vector<Codeword> all_permutations(int m);

// 0 for even permutations, 1 for odd.
int permutation_parity(const Codeword& word);

struct SearchBudget {
  std::uint64_t max_nodes = 0;  // search-tree nodes; 0 = unlimited
  double max_seconds = 0.0;     // wall clock; 0 = unlimited
};

struct SearchReport {
  CodeBook best_code;
  // True when the result is certified maximum: the search either ran to
  // completion or produced a code meeting the cardinality bound.
  bool proven_optimal;
  std::uint64_t nodes_explored;
  double seconds;
};

// Exhaustive maximum-code search, exact for M <= 7.
//
// d = 2 and d = 3 are closed forms (all permutations / even permutations,
// both meeting the cardinality bound). Otherwise: any maximum code can be
// translated so that it contains the identity, so the search fixes the
// identity word and runs a branch-and-bound maximum-clique search over the
// permutations at distance >= d from it, with a greedy-colouring upper bound
// and a greedy clique as the initial incumbent. Fully deterministic; with a
// node budget the truncation point is reproducible as well.
SearchReport search_max_code(int m, int d, const SearchBudget& budget = {});

}  // namespace permfsk
