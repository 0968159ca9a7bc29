// Command-line front end: code bounds and searches, study tables, link
// budgets, encoding, decoding, and Monte Carlo error-rate simulation.
//
// Exit codes: 0 success, 1 bad arguments or malformed input, 2 runtime
// failure (I/O, overflow), 3 search budget exhausted without a certified
// result.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "permfsk/channel.hpp"
#include "permfsk/codec.hpp"
#include "permfsk/experiment.hpp"
#include "permfsk/modem.hpp"
#include "permfsk/permcode.hpp"
#include "permfsk/reference_codes.hpp"

namespace {

using namespace permfsk;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

double parse_double(const std::string& field, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("bad ") + what + ": '" + field +
                                "'");
  }
  if (used != field.size())
    throw std::invalid_argument(std::string("bad ") + what + ": '" + field +
                                "'");
  return v;
}

// "8,10,12" or "8:14:2" (inclusive range).
std::vector<double> parse_snr_list(const std::string& points) {
  std::vector<double> out;
  if (points.empty()) return out;
  if (points.find(':') != std::string::npos) {
    std::vector<std::string> fields;
    std::istringstream in(points);
    std::string field;
    while (std::getline(in, field, ':')) fields.push_back(field);
    if (fields.size() != 3)
      throw std::invalid_argument("bad SNR range, expected first:last:step");
    const double first = parse_double(fields[0], "SNR");
    const double last = parse_double(fields[1], "SNR");
    const double step = parse_double(fields[2], "SNR step");
    if (!(step > 0.0) || last < first)
      throw std::invalid_argument("bad SNR range, expected first:last:step");
    for (double v = first; v <= last + 1e-9; v += step) out.push_back(v);
  } else {
    std::istringstream in(points);
    std::string field;
    while (std::getline(in, field, ',')) out.push_back(parse_double(field, "SNR"));
  }
  return out;
}

CodeBook load_code_cli(const std::string& file, const std::string& ref) {
  if (!file.empty() && !ref.empty())
    throw std::invalid_argument("give either --code-file or --ref, not both");
  if (!file.empty()) return CodeBook::load_file(file);
  if (!ref.empty()) return reference_code_book(ref);
  throw std::invalid_argument("need --code-file or --ref");
}

std::string format_word(const Codeword& word) {
  std::ostringstream out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out << ' ';
    out << word[i];
  }
  return out.str();
}

std::string decision_text(const Decision& decision) {
  std::ostringstream out;
  switch (decision.kind) {
    case Decision::Kind::kUnique:
      out << "message " << (*decision.message + 1) << " score "
          << decision.score << '\n';
      break;
    case Decision::Kind::kTie: {
      out << "tie score " << decision.score << " candidates";
      for (std::size_t c : decision.candidates) out << ' ' << (c + 1);
      out << '\n';
      break;
    }
    case Decision::Kind::kEmpty:
      out << "no agreement\n";
      break;
  }
  return out.str();
}

std::string decision_json(const Decision& decision) {
  std::ostringstream out;
  out << "{\"kind\":\"";
  switch (decision.kind) {
    case Decision::Kind::kUnique:
      out << "unique";
      break;
    case Decision::Kind::kTie:
      out << "tie";
      break;
    case Decision::Kind::kEmpty:
      out << "empty";
      break;
  }
  out << "\",\"message\":";
  if (decision.message)
    out << (*decision.message + 1);
  else
    out << "null";
  out << ",\"score\":" << decision.score << ",\"candidates\":[";
  for (std::size_t i = 0; i < decision.candidates.size(); ++i) {
    if (i) out << ',';
    out << (decision.candidates[i] + 1);
  }
  out << "]}\n";
  return out.str();
}

struct Options {
  int m = 0;
  int d = 0;
  double bit_rate = 4800.0;
  std::string code_file;
  std::string ref;
  std::string scenario;
  std::string snr_db;
  std::string frame = "-";
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  int threads = 0;
  std::uint64_t max_nodes = 0;
  double max_seconds = 0.0;
  int max_m = 5;
  double noise_margin = 0.0;
  double jammer_scale = 1.0;
  double impulse_scale = 1.0;
  double insertion_scale = 1.0;
  long long message = 0;
  std::string out;
  std::string format = "csv";
};

int cmd_bound(const Options& o) {
  std::cout << to_string(cardinality_bound(o.m, o.d)) << '\n';
  return 0;
}

int cmd_search(const Options& o) {
  const SearchReport report =
      search_max_code(o.m, o.d, {o.max_nodes, o.max_seconds});
  std::ostringstream summary;
  summary << "M=" << o.m << " d=" << o.d << " size=" << report.best_code.size()
          << " d_min=" << report.best_code.min_hamming_distance()
          << " certified=" << (report.proven_optimal ? "yes" : "no")
          << " nodes=" << report.nodes_explored << " seconds=" << std::fixed
          << report.seconds << '\n';
  std::cout << summary.str();
  if (!o.out.empty())
    report.best_code.save_file(o.out);
  else
    std::cout << report.best_code.to_text();
  return report.proven_optimal ? 0 : 3;
}

int cmd_tables(const Options& o) {
  const std::string sizes =
      code_size_table_csv(o.max_m, {o.max_nodes, o.max_seconds});
  std::ostringstream out;
  out << "# maximum code sizes\n" << sizes << '\n';
  out << "# link budget (4800 bit/s, M=4)\n" << link_budget_csv() << '\n';
  out << "# bundled code books\n" << reference_books_text();
  write_text(o.out, out.str());
  // A "certified,no" cell means a search ran out of budget without proof.
  return sizes.find(",no\n") == std::string::npos ? 0 : 3;
}

int cmd_linkbudget(const Options& o) {
  const int m = o.m > 0 ? o.m : 4;
  if (o.format == "json") {
    std::ostringstream out;
    out << "[";
    const auto rows = link_budget_table(o.bit_rate, m);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) out << ',';
      out << "\n  {\"d_min\":" << rows[i].d_min
          << ",\"code_size\":" << rows[i].code_size << ",\"bandwidth_khz\":"
          << rows[i].bandwidth_khz << ",\"snr_db\":" << rows[i].snr_db << '}';
    }
    out << "\n]\n";
    write_text(o.out, out.str());
  } else {
    write_text(o.out, link_budget_csv(o.bit_rate, m));
  }
  return 0;
}

int cmd_encode(const Options& o) {
  const CodeBook code = load_code_cli(o.code_file, o.ref);
  if (o.message < 1)
    throw std::invalid_argument("message numbers start at 1");
  const Codeword& word =
      code.encode(static_cast<std::size_t>(o.message - 1));
  std::cout << format_word(word) << '\n';
  return 0;
}

int cmd_decode(const Options& o) {
  const CodeBook code = load_code_cli(o.code_file, o.ref);
  const DemodFrame frame = DemodFrame::parse_text(read_text(o.frame), code.m());
  const Decision decision = decode_max_agreement(frame, code);
  std::cout << (o.format == "json" ? decision_json(decision)
                                   : decision_text(decision));
  return 0;
}

int cmd_simulate(const Options& o) {
  ExperimentConfig config;
  config.m = o.m;
  config.bit_rate = o.bit_rate;
  config.code_file = o.code_file;
  config.reference_code = o.ref;
  config.search_d = o.d;
  config.search_budget = {o.max_nodes, o.max_seconds};
  if (!o.scenario.empty())
    config.scenario = ChannelScenario::load_file(o.scenario);
  config.snr_db_points = parse_snr_list(o.snr_db);
  config.trials = o.trials;
  config.seed = o.seed;
  config.threads = o.threads;
  config.noise_margin_c = o.noise_margin;
  config.injection = {o.jammer_scale, o.impulse_scale, o.insertion_scale};

  const CodeBook code = resolve_code_book(config);
  const ExperimentResult result = run_experiment(config, code);
  const std::string text = o.format == "json"
                               ? experiment_json(config, result)
                               : experiment_csv(config, result);
  write_text(o.out, text);
  if (!o.out.empty() && o.out != "-")
    write_text(o.out + ".meta.json", experiment_meta_json(result));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permutation-coded M-ary FSK toolkit"};
  app.require_subcommand(1);
  Options o;

  auto* bound = app.add_subcommand(
      "bound", "print the cardinality bound M!/(d-1)! on code size");
  bound->add_option("-M,--tones", o.m, "alphabet size")->required();
  bound->add_option("-d,--distance", o.d, "minimum Hamming distance")
      ->required();

  auto* search = app.add_subcommand(
      "search", "search for a maximum permutation code (exact for M <= 7)");
  search->add_option("-M,--tones", o.m, "alphabet size")->required();
  search->add_option("-d,--distance", o.d, "minimum Hamming distance")
      ->required();
  search->add_option("--max-nodes", o.max_nodes,
                     "search node budget (0 = unlimited)");
  search->add_option("--max-seconds", o.max_seconds,
                     "wall clock budget (0 = unlimited)");
  search->add_option("--out", o.out, "write the code book to this file");

  auto* tables = app.add_subcommand(
      "tables", "emit code-size and link-budget tables plus bundled books");
  tables->add_option("--max-m", o.max_m, "largest alphabet for the size table")
      ->check(CLI::Range(2, 7));
  tables->add_option("--max-nodes", o.max_nodes,
                     "per-search node budget (0 = unlimited)");
  tables->add_option("--max-seconds", o.max_seconds,
                     "per-search wall clock budget (0 = unlimited)");
  tables->add_option("--out", o.out, "output file (default stdout)");

  auto* linkbudget = app.add_subcommand(
      "linkbudget", "bandwidth and worst-case SNR per operating point");
  linkbudget->add_option("--bitrate", o.bit_rate, "information rate, bit/s");
  linkbudget->add_option("-M,--tones", o.m, "alphabet size (default 4)");
  linkbudget->add_option("--out", o.out, "output file (default stdout)");
  linkbudget->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* encode = app.add_subcommand("encode", "map a message number to its codeword");
  encode->add_option("message", o.message, "1-based message number")
      ->required();
  encode->add_option("--code-file", o.code_file, "code book file");
  encode->add_option("--ref", o.ref, "bundled code book name");

  auto* decode = app.add_subcommand(
      "decode", "decode a demodulation frame by maximum agreement");
  decode->add_option("--code-file", o.code_file, "code book file");
  decode->add_option("--ref", o.ref, "bundled code book name");
  decode->add_option("--frame", o.frame, "frame file, '-' for stdin");
  decode->add_option("--format", o.format, "text or json")
      ->default_val("text")
      ->check(CLI::IsMember({"text", "json"}));

  auto* simulate = app.add_subcommand(
      "simulate", "seeded Monte Carlo word-error simulation");
  simulate->add_option("-M,--tones", o.m,
                       "alphabet size (default: from the code book)");
  simulate->add_option("-d,--distance", o.d,
                       "search a maximum code at this distance");
  simulate->add_option("--code-file", o.code_file, "code book file");
  simulate->add_option("--ref", o.ref, "bundled code book name");
  simulate->add_option("--bitrate", o.bit_rate, "information rate, bit/s");
  simulate->add_option("--scenario", o.scenario, "channel scenario JSON file");
  simulate->add_option("--snr-db", o.snr_db,
                       "SNR sweep: '8,10,12' or 'first:last:step'");
  simulate->add_option("--trials", o.trials, "Monte Carlo trials per point");
  simulate->add_option("--seed", o.seed, "master seed");
  simulate->add_option("--threads", o.threads,
                       "worker threads (0 = hardware)");
  simulate->add_option("--noise-margin", o.noise_margin,
                       "threshold margin constant c");
  simulate->add_option("--jammer-scale", o.jammer_scale,
                       "jammer amplitude, multiples of sqrt(Es)");
  simulate->add_option("--impulse-scale", o.impulse_scale,
                       "impulse amplitude, multiples of sqrt(Es)");
  simulate->add_option("--insertion-scale", o.insertion_scale,
                       "insertion amplitude, multiples of sqrt(Es)");
  simulate->add_option("--max-nodes", o.max_nodes,
                       "code search node budget (0 = unlimited)");
  simulate->add_option("--max-seconds", o.max_seconds,
                       "code search wall clock budget (0 = unlimited)");
  simulate->add_option("--out", o.out, "result file (default stdout)");
  simulate->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*bound) return cmd_bound(o);
    if (*search) return cmd_search(o);
    if (*tables) return cmd_tables(o);
    if (*linkbudget) return cmd_linkbudget(o);
    if (*encode) return cmd_encode(o);
    if (*decode) return cmd_decode(o);
    if (*simulate) return cmd_simulate(o);
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
