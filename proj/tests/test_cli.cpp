#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"

#include "permfsk/permcode.hpp"
#include "permfsk/reference_codes.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the packaged command-line tool through the shell and captures stdout.
RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string("\"") + PERMFSK_CLI_PATH + "\" " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0)
    result.output.append(buf, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  REQUIRE(out.good());
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli: size bound") {
  const RunResult r = run_cli("bound -M 4 -d 3");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "12\n");
  CHECK(run_cli("bound -M 6 -d 5").output == "30\n");
  // The 128-bit ceiling is an honest arithmetic failure, not a usage error.
  CHECK(run_cli("bound -M 200 -d 2").exit_code == 2);
}

TEST_CASE("cli: usage errors exit with 1") {
  CHECK(run_cli("bound -M 4").exit_code == 1);           // missing -d
  CHECK(run_cli("frobnicate").exit_code == 1);           // unknown subcommand
  CHECK(run_cli("").exit_code == 1);                     // subcommand required
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("bound -M 1 -d 1").exit_code == 1);      // domain error
  CHECK(run_cli("encode 99 --ref m4d4").exit_code == 1); // message out of range
  CHECK(run_cli("simulate --trials 10").exit_code == 1); // no code source
}

TEST_CASE("cli: missing files exit with 2") {
  CHECK(run_cli("decode --code-file nowhere.txt --frame -").exit_code == 2);
  CHECK(run_cli("encode 1 --code-file nowhere.txt").exit_code == 2);
}

TEST_CASE("cli: exhausted search budget is reported and flagged") {
  const RunResult r = run_cli("search -M 6 -d 5 --max-nodes 2");
  CHECK(r.exit_code == 3);
  CHECK(contains(r.output, "certified=no"));
}

TEST_CASE("cli: search, save, encode") {
  const std::string book_path = "cli_searched_book.txt";
  const RunResult search = run_cli("search -M 4 -d 4 --out " + book_path);
  CHECK(search.exit_code == 0);
  CHECK(contains(search.output, "M=4 d=4 size=4 d_min=4 certified=yes"));

  // The saved book loads back as a valid distance-4 code.
  const permfsk::CodeBook book = permfsk::CodeBook::load_file(book_path);
  CHECK(book.size() == 4);
  CHECK(book.min_hamming_distance() == 4);

  const RunResult encode = run_cli("encode 3 --code-file " + book_path);
  CHECK(encode.exit_code == 0);
  CHECK(encode.output == "3 4 1 2\n");
  std::remove(book_path.c_str());
}

TEST_CASE("cli: decode a jammed frame") {
  const std::string frame_path = "cli_jammed_frame.txt";
  write_file(frame_path, "3,4\n4\n1,4\n2,4\n");

  const RunResult text =
      run_cli("decode --ref m4d4 --frame " + frame_path);
  CHECK(text.exit_code == 0);
  CHECK(text.output == "message 3 score 4\n");

  const RunResult json =
      run_cli("decode --ref m4d4 --format json --frame " + frame_path);
  CHECK(json.exit_code == 0);
  CHECK(json.output ==
        "{\"kind\":\"unique\",\"message\":3,\"score\":4,\"candidates\":[3]}\n");
  std::remove(frame_path.c_str());

  // Same frame through stdin.
  const std::string stdin_path = "cli_stdin_frame.txt";
  write_file(stdin_path, "3,4\n4\n1,4\n2,4\n");
  const RunResult stdin_run =
      run_cli("decode --ref m4d4 --frame - < " + stdin_path);
  CHECK(stdin_run.exit_code == 0);
  CHECK(stdin_run.output == "message 3 score 4\n");
  std::remove(stdin_path.c_str());
}

TEST_CASE("cli: degenerate frames decode to tie and no-agreement") {
  const std::string frame_path = "cli_full_frame.txt";
  write_file(frame_path, "1,2,3,4\n1,2,3,4\n1,2,3,4\n1,2,3,4\n");
  const RunResult tie = run_cli("decode --ref m4d4 --frame " + frame_path);
  CHECK(tie.exit_code == 0);
  CHECK(tie.output == "tie score 4 candidates 1 2 3 4\n");
  std::remove(frame_path.c_str());

  const std::string empty_path = "cli_empty_frame.txt";
  write_file(empty_path, "-\n-\n-\n-\n");
  const RunResult empty = run_cli("decode --ref m4d4 --frame " + empty_path);
  CHECK(empty.exit_code == 0);
  CHECK(empty.output == "no agreement\n");
  std::remove(empty_path.c_str());
}

TEST_CASE("cli: simulation results do not depend on the thread count") {
  const std::string out1 = "cli_sim_threads1.csv";
  const std::string out4 = "cli_sim_threads4.csv";
  const std::string common =
      "simulate --ref m4d4 --snr-db 10,14 --trials 2000 --seed 5 --out ";
  CHECK(run_cli(common + out1 + " --threads 1").exit_code == 0);
  CHECK(run_cli(common + out4 + " --threads 4").exit_code == 0);
  const std::string a = read_file(out1);
  CHECK(a == read_file(out4));
  CHECK(contains(a, "label,snr_db,trials,"));
  CHECK(contains(a, "snr_db=10,10,2000,"));

  // Wall-clock timing lands in the sidecar, never in the result file.
  CHECK_FALSE(contains(a, "wall"));
  CHECK(contains(read_file(out1 + ".meta.json"), "wall_ms_per_row"));

  for (const std::string& p : {out1, out4, out1 + ".meta.json", out4 + ".meta.json"})
    std::remove(p.c_str());
}

TEST_CASE("cli: scenario file drives the simulation") {
  const std::string scenario_path = "cli_scenario.json";
  write_file(scenario_path, "{\"jammed_tones\": [4]}\n");
  const RunResult r = run_cli("simulate --ref m4d4 --scenario " +
                              scenario_path + " --trials 400 --seed 3");
  CHECK(r.exit_code == 0);
  // A lone jammer on a noiseless line: three spurious detections per word
  // (rate exactly 1/4), and the distance-4 book still decodes every word.
  CHECK(contains(r.output, "scenario,,400,0.25,0,0,0,3"));
  std::remove(scenario_path.c_str());
}

TEST_CASE("cli: json simulation output") {
  const RunResult r = run_cli(
      "simulate --ref m4d3 --snr-db 20 --trials 300 --seed 2 --format json");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "\"rows\""));
  CHECK(contains(r.output, "\"label\": \"snr_db=20\""));
  CHECK(contains(r.output, "\"config\""));
}

TEST_CASE("cli: reference tables") {
  const RunResult r = run_cli("tables --max-m 5");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "# maximum code sizes"));
  CHECK(contains(r.output, "5,3,60,60,yes"));
  CHECK(contains(r.output, "# link budget"));
  CHECK(contains(r.output, "# bundled code books"));
}
