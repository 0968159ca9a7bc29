#include "permfsk/permcode.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace permfsk {

namespace {

using Clock = std::chrono::steady_clock;

// Exact minimum distance over a list of pairwise-distinct permutations.
// Distinct permutations are at distance >= 2, so 2 is an exact early exit.
int min_distance_of(const std::vector<Codeword>& words) {
  int best = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      best = std::min(best, hamming_distance(words[i], words[j]));
      if (best <= 2) return best;
    }
  }
  return best;
}

}  // namespace

std::string to_string(uint128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out.push_back(static_cast<char>('0' + int(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool is_permutation_word(const Codeword& word, int m) {
  if (m < 1 || word.size() != static_cast<std::size_t>(m)) return false;
  std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
  for (int s : word) {
    if (s < 1 || s > m || seen[static_cast<std::size_t>(s)]) return false;
    seen[static_cast<std::size_t>(s)] = true;
  }
  return true;
}

int hamming_distance(const Codeword& a, const Codeword& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("hamming_distance: length mismatch");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

uint128 cardinality_bound(int m, int d) {
  if (m < 2) throw std::invalid_argument("cardinality_bound: M must be >= 2");
  if (d < 2 || d > m)
    throw std::invalid_argument("cardinality_bound: need 2 <= d <= M");
  const uint128 max = ~uint128{0};
  uint128 p = 1;
  for (int k = d; k <= m; ++k) {
    if (p > max / uint128(k))
      throw std::overflow_error("cardinality_bound: M!/(d-1)! exceeds 128 bits");
    p *= uint128(k);
  }
  return p;
}

CodeBook::CodeBook(int m, std::vector<Codeword> words)
    : m_(m), words_(std::move(words)) {
  if (m_ < 1) throw std::invalid_argument("CodeBook: M must be positive");
  for (const auto& w : words_) {
    if (!is_permutation_word(w, m_))
      throw std::invalid_argument(
          "CodeBook: every word must be a permutation of 1..M");
  }
  {
    auto sorted = words_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("CodeBook: duplicate code word");
  }
  d_min_ = words_.size() >= 2 ? min_distance_of(words_) : 0;
}

const Codeword& CodeBook::word(std::size_t index) const {
  if (index >= words_.size())
    throw std::out_of_range("CodeBook: word index out of range");
  return words_[index];
}

const Codeword& CodeBook::encode(std::size_t message) const {
  if (message >= words_.size())
    throw std::out_of_range("CodeBook::encode: message index out of range");
  return words_[message];
}

void CodeBook::save(std::ostream& out) const {
  out << m_ << ' ' << d_min_ << ' ' << words_.size() << '\n';
  for (const auto& w : words_) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out << ' ';
      out << w[i];
    }
    out << '\n';
  }
}

CodeBook CodeBook::load(std::istream& in) {
  int m = 0;
  int d = 0;
  long long count = 0;
  if (!(in >> m >> d >> count) || m < 1 || count < 0)
    throw std::invalid_argument("code book: malformed header");
  std::vector<Codeword> words(static_cast<std::size_t>(count),
                              Codeword(static_cast<std::size_t>(m)));
  for (auto& w : words) {
    for (auto& s : w) {
      if (!(in >> s))
        throw std::invalid_argument("code book: truncated word list");
    }
  }
  CodeBook book(m, std::move(words));
  if (book.min_hamming_distance() != d)
    throw std::invalid_argument(
        "code book: header distance does not match word list");
  return book;
}

std::string CodeBook::to_text() const {
  std::ostringstream out;
  save(out);
  return out.str();
}

void CodeBook::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  save(out);
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

CodeBook CodeBook::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open code book: " + path);
  return load(in);
}

int min_distance(const CodeBook& code) {
  if (code.size() < 2)
    throw std::domain_error("min_distance: needs at least two code words");
  return min_distance_of(code.words());
}

std::vector<Codeword> all_permutations(int m) {
  if (m < 1) throw std::invalid_argument("all_permutations: M must be >= 1");
  Codeword w(static_cast<std::size_t>(m));
  std::iota(w.begin(), w.end(), 1);
  std::vector<Codeword> out;
  do {
    out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

int permutation_parity(const Codeword& word) {
  int inversions = 0;
  for (std::size_t i = 0; i < word.size(); ++i)
    for (std::size_t j = i + 1; j < word.size(); ++j)
      inversions += word[i] > word[j];
  return inversions & 1;
}

CodeBook even_permutation_code(int m) {
  if (m < 3)
    throw std::invalid_argument("even_permutation_code: M must be >= 3");
  std::vector<Codeword> words;
  for (auto& w : all_permutations(m))
    if (permutation_parity(w) == 0) words.push_back(std::move(w));
  return CodeBook(m, std::move(words));
}

namespace {

// Sorted cycle lengths of a permutation; equal signatures mean the two
// permutations are conjugate.
std::vector<int> cycle_signature(const Codeword& word) {
  std::vector<int> sig;
  std::vector<bool> seen(word.size(), false);
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = static_cast<std::size_t>(word[j] - 1);
      ++len;
    }
    sig.push_back(len);
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

// Dense bitset rows for the clique search.
using BitRow = std::vector<std::uint64_t>;

inline bool bit_test(const BitRow& r, int i) {
  return (r[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1U;
}
inline void bit_set(BitRow& r, int i) {
  r[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63);
}
inline void bit_clear(BitRow& r, int i) {
  r[static_cast<std::size_t>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63));
}
inline bool rows_intersect(const BitRow& a, const BitRow& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] & b[k]) return true;
  return false;
}
inline bool row_empty(const BitRow& r) {
  for (auto w : r)
    if (w) return false;
  return true;
}

// Branch-and-bound maximum clique with a greedy-colouring upper bound
// (Tomita-style). Deterministic: vertices are visited in a fixed order and
// budget truncation is by node count before wall clock.
class CliqueSolver {
 public:
  CliqueSolver(const std::vector<BitRow>& adj, int n, int stop_at_size,
               const SearchBudget& budget)
      : adj_(adj),
        n_(n),
        row_words_(adj.empty() ? 0 : adj[0].size()),
        stop_at_(stop_at_size),
        max_nodes_(budget.max_nodes) {
    if (budget.max_seconds > 0.0)
      deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(
                                         budget.max_seconds));
  }

  void seed(std::vector<int> clique) { best_ = std::move(clique); }

  // Exhausts every clique containing vertex r (plus whatever the incumbent
  // already holds). Callers cover the graph with a set of such roots.
  void run_rooted(int r) {
    current_.assign(1, r);
    BitRow cand = adj_[static_cast<std::size_t>(r)];
    if (row_empty(cand)) {
      if (current_.size() > best_.size()) best_ = current_;
    } else {
      expand(std::move(cand));
    }
    current_.clear();
  }

  const std::vector<int>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }
  bool hit_target() const { return hit_target_; }

 private:
  bool out_of_budget() {
    if (max_nodes_ && nodes_ >= max_nodes_) return true;
    if (deadline_ && (nodes_ & 0x3ff) == 0 && Clock::now() > *deadline_)
      return true;
    return false;
  }

  void expand(BitRow cand) {
    ++nodes_;
    if (out_of_budget()) {
      aborted_ = true;
      return;
    }
    std::vector<int> seq;
    std::vector<int> colour;
    colour_sort(cand, seq, colour);
    for (int i = static_cast<int>(seq.size()) - 1; i >= 0; --i) {
      if (aborted_ || hit_target_) return;
      // seq is sorted by colour, so once one vertex cannot beat the
      // incumbent none of the remaining ones can either.
      if (current_.size() + static_cast<std::size_t>(colour[static_cast<std::size_t>(i)]) <=
          best_.size())
        return;
      const int v = seq[static_cast<std::size_t>(i)];
      current_.push_back(v);
      BitRow next(row_words_);
      const BitRow& av = adj_[static_cast<std::size_t>(v)];
      bool any = false;
      for (std::size_t k = 0; k < row_words_; ++k) {
        next[k] = cand[k] & av[k];
        any = any || next[k];
      }
      if (!any) {
        if (current_.size() > best_.size()) {
          best_ = current_;
          if (stop_at_ > 0 && static_cast<int>(best_.size()) >= stop_at_)
            hit_target_ = true;
        }
      } else {
        expand(std::move(next));
      }
      current_.pop_back();
      bit_clear(cand, v);
    }
  }

  // Greedy colouring in ascending vertex order; the colour of a vertex bounds
  // the largest clique extendable through it within cand.
  void colour_sort(const BitRow& cand, std::vector<int>& seq,
                   std::vector<int>& colour) {
    class_masks_.clear();
    class_members_.clear();
    for (std::size_t k = 0; k < row_words_; ++k) {
      std::uint64_t w = cand[k];
      while (w) {
        const int v = static_cast<int>(k * 64) + std::countr_zero(w);
        w &= w - 1;
        std::size_t c = 0;
        while (c < class_masks_.size() &&
               rows_intersect(adj_[static_cast<std::size_t>(v)], class_masks_[c]))
          ++c;
        if (c == class_masks_.size()) {
          class_masks_.emplace_back(row_words_, 0);
          class_members_.emplace_back();
        }
        bit_set(class_masks_[c], v);
        class_members_[c].push_back(v);
      }
    }
    for (std::size_t c = 0; c < class_members_.size(); ++c)
      for (int v : class_members_[c]) {
        seq.push_back(v);
        colour.push_back(static_cast<int>(c) + 1);
      }
  }

  const std::vector<BitRow>& adj_;
  int n_;
  std::size_t row_words_;
  int stop_at_;
  std::uint64_t max_nodes_;
  std::optional<Clock::time_point> deadline_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  bool hit_target_ = false;
  std::vector<int> best_;
  std::vector<int> current_;
  std::vector<BitRow> class_masks_;
  std::vector<std::vector<int>> class_members_;
};

}  // namespace

SearchReport search_max_code(int m, int d, const SearchBudget& budget) {
  if (m < 2) throw std::invalid_argument("search_max_code: M must be >= 2");
  if (d < 2 || d > m)
    throw std::invalid_argument("search_max_code: need 2 <= d <= M");
  // 8! = 40320 vertices is past what this exact search is sized for.
  constexpr int kMaxExactM = 7;
  if (m > kMaxExactM)
    throw std::invalid_argument("search_max_code: exact search supports M <= 7");

  const auto t0 = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  };
  const uint128 bound = cardinality_bound(m, d);

  // Closed forms that meet the bound certify themselves: all permutations
  // for d = 2, the even permutations for d = 3.
  if (d == 2) return {CodeBook(m, all_permutations(m)), true, 0, elapsed()};
  if (d == 3) return {even_permutation_code(m), true, 0, elapsed()};

  // Any maximum code can be translated (by composing every word with a fixed
  // permutation, which preserves pairwise distances) so that it contains the
  // identity. Fix the identity and search the permutations at distance >= d
  // from it; the answer is one more than the largest clique found there.
  Codeword identity(static_cast<std::size_t>(m));
  std::iota(identity.begin(), identity.end(), 1);
  std::vector<Codeword> verts;
  for (auto& w : all_permutations(m))
    if (hamming_distance(w, identity) >= d) verts.push_back(std::move(w));

  const int n = static_cast<int>(verts.size());
  const std::size_t row_words = static_cast<std::size_t>(n + 63) / 64;
  std::vector<BitRow> adj(static_cast<std::size_t>(n), BitRow(row_words, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (hamming_distance(verts[static_cast<std::size_t>(i)],
                           verts[static_cast<std::size_t>(j)]) >= d) {
        bit_set(adj[static_cast<std::size_t>(i)], j);
        bit_set(adj[static_cast<std::size_t>(j)], i);
      }

  // Greedy clique in canonical order as the initial incumbent.
  std::vector<int> best;
  {
    BitRow allowed(row_words, 0);
    for (int v = 0; v < n; ++v) bit_set(allowed, v);
    for (int v = 0; v < n; ++v) {
      if (!bit_test(allowed, v)) continue;
      best.push_back(v);
      const BitRow& av = adj[static_cast<std::size_t>(v)];
      for (std::size_t k = 0; k < row_words; ++k) allowed[k] &= av[k];
    }
  }

  // Clique size that would meet the cardinality bound (bound <= 5040 here).
  const int target = static_cast<int>(bound) - 1;
  std::uint64_t nodes = 0;
  bool proven = false;
  if (static_cast<int>(best.size()) >= target) {
    proven = true;
  } else {
    // Second symmetry cut: conjugating every word by a fixed permutation
    // preserves pairwise distances and keeps the identity in place, and two
    // vertices are conjugate exactly when they share a cycle type. So every
    // maximum code is equivalent to one whose second word is a cycle-type
    // representative, and it suffices to exhaust the cliques through one
    // representative per type (the lexicographically first works).
    std::map<std::vector<int>, int> reps;
    for (int v = 0; v < n; ++v)
      reps.try_emplace(cycle_signature(verts[static_cast<std::size_t>(v)]), v);

    CliqueSolver solver(adj, n, target, budget);
    solver.seed(std::move(best));
    for (const auto& [signature, root] : reps) {
      solver.run_rooted(root);
      if (solver.aborted() || solver.hit_target()) break;
    }
    best = solver.best();
    nodes = solver.nodes();
    proven = solver.hit_target() || !solver.aborted();
  }

  std::sort(best.begin(), best.end());
  std::vector<Codeword> code_words;
  code_words.reserve(best.size() + 1);
  code_words.push_back(identity);  // identity is the lexicographic minimum
  for (int v : best) code_words.push_back(verts[static_cast<std::size_t>(v)]);
  return {CodeBook(m, std::move(code_words)), proven, nodes, elapsed()};
}

}  // namespace permfsk
