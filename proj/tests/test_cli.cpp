#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include <sys/wait.h>

#include "pf/serialize.hpp"
#include "reference_data.hpp"

using namespace pf;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::filesystem::path work_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "pf_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

// Runs the CLI with the given arguments, capturing stdout; stderr goes to
// err_path when given, /dev/null otherwise.
RunResult run(const std::string& args, const std::string& err_path = {}) {
  std::string cmd = std::string(PRUNEFRONT_CLI_PATH) + " " + args;
  cmd += err_path.empty() ? " 2>/dev/null" : " 2>" + err_path;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int st = pclose(pipe);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string path_of(const char* name) { return (work_dir() / name).string(); }

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// Kneading set whose arc codes cover every Minus-initial prelude shape, so
// the completion search cannot rescue a bad window body.
KneadingSet strict_set() {
  KneadingSet K;
  auto add = [&K](int idx, const char* code, const char* tail) {
    KneadingEntry e;
    e.index = idx;
    e.seq.arc_code = parse_word(code);
    e.seq.tail = parse_word(tail);
    K.entries.push_back(e);
  };
  add(-3, "---", "++++");
  add(-2, "-+-", "++++");
  add(-1, "-", "++++");
  add(0, "", "++++");
  add(1, "-+", "++++");
  add(2, "--", "++++");
  validate(K);
  return K;
}

}  // namespace

TEST_CASE("check accepts valid documents and reports broken ones") {
  const std::string good = path_of("ref_kneading.json");
  write_text_file(good, dump_json(json_of(refdata::kneading_set())));
  const RunResult ok = run("check " + good);
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "\"ok\": true"));
  CHECK(contains(ok.out, "kneading_set"));

  const std::string broken = path_of("broken.json");
  write_text_file(broken,
                  "{\"kind\":\"kneading_set\",\"format_version\":1,"
                  "\"entries\":[{\"index\":0,\"arc_code\":\"\",\"tail\":\"-+\"}]}");
  const std::string err = path_of("check_err.json");
  const RunResult bad = run("check " + broken, err);
  CHECK(bad.code == 2);
  CHECK(contains(read_text_file(err), "\"error\""));

  const RunResult missing = run("check " + path_of("does_not_exist.json"), err);
  CHECK(missing.code == 5);
  CHECK(contains(read_text_file(err), "IoError"));
}

TEST_CASE("admissible distinguishes accepted, rejected and budget runs") {
  const std::string strict = path_of("strict.json");
  write_text_file(strict, dump_json(json_of(strict_set())));
  const std::string ref = path_of("adm_ref.json");
  write_text_file(ref, dump_json(json_of(refdata::kneading_set())));

  const RunResult ok =
      run("admissible --window '...--.+-' --from " + ref + " --depth 2");
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "admissible_up_to"));

  const RunResult rej =
      run("admissible --window '--.+-' --from " + strict + " --depth 2");
  CHECK(rej.code == 3);
  CHECK(contains(rej.out, "\"result\": \"rejected\""));
  CHECK(contains(rej.out, "\"witness_index\": -1"));

  const RunResult budget =
      run("admissible --window '--.+-' --from " + strict + " --depth 2 --budget 1");
  CHECK(budget.code == 4);
  CHECK(contains(budget.out, "search_budget_exceeded"));
}

TEST_CASE("compare reports differences through the exit code") {
  const std::string a = path_of("cmp_a.json");
  const std::string b = path_of("cmp_b.json");
  write_text_file(a, dump_json(json_of(refdata::kneading_set())));
  KneadingSet other = refdata::kneading_set();
  for (KneadingEntry& e : other.entries)
    if (e.index == 0) e.seq.tail = parse_word("+---+");
  write_text_file(b, dump_json(json_of(other)));

  const RunResult same = run("compare " + a + " " + a + " --depth 5");
  CHECK(same.code == 0);
  CHECK(contains(same.out, "equal_up_to_depth"));

  const RunResult differ = run("compare " + a + " " + b + " --depth 5");
  CHECK(differ.code == 1);
  CHECK(contains(differ.out, "tail_mismatch"));
  CHECK(contains(differ.out, "\"position\": 4"));

  const std::string batch = path_of("batch.json");
  write_text_file(batch, "[{\"a\":\"" + a + "\",\"b\":\"" + b + "\"},{\"a\":\"" +
                             a + "\",\"b\":\"" + a + "\"}]");
  const RunResult br = run("compare --batch " + batch + " --jobs 2 --depth 5");
  CHECK(br.code == 1);
  CHECK(contains(br.out, "tail_mismatch"));
  CHECK(contains(br.out, "equal_up_to_depth"));
}

TEST_CASE("convert reaches the same kneading text through folding and tree") {
  const std::string folding = path_of("ref_folding.json");
  write_text_file(folding,
                  dump_json(json_of(parse_folding(refdata::kWindowText))));

  const RunResult direct =
      run("convert --from " + folding + " --to kneading --format text");
  REQUIRE(direct.code == 0);
  CHECK(direct.out ==
        "-1\t-\t++\n"
        "0\t\t+----\n"
        "1\t-+\t+\n"
        "2\t--\t+\n");

  const std::string tree = path_of("ref_tree.json");
  const RunResult to_tree =
      run("convert --from " + folding + " --to tree --out " + tree);
  REQUIRE(to_tree.code == 0);
  const RunResult via_tree =
      run("convert --from " + tree + " --to kneading --format text");
  REQUIRE(via_tree.code == 0);
  CHECK(via_tree.out == direct.out);

  // Folding survives the round trip through its own json.
  const RunResult round =
      run("convert --from " + folding + " --to folding --format text");
  REQUIRE(round.code == 0);
  CHECK(round.out == refdata::kWindowText + std::string("\n"));
}

TEST_CASE("engine commands are deterministic") {
  const std::string args = "kneading --map lozi --a 1.8 --b 0.3 --count 6 --depth 8";
  const RunResult first = run(args);
  const RunResult second = run(args);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);

  const std::string dot =
      "tree --map lozi --a 1.8 --b 0.3 --generations 4 --format dot";
  const RunResult d1 = run(dot);
  const RunResult d2 = run(dot);
  REQUIRE(d1.code == 0);
  CHECK(contains(d1.out, "digraph"));
  CHECK(d1.out == d2.out);
}

TEST_CASE("manifold and region emit csv and respect the budget") {
  const RunResult ok =
      run("manifold --map lozi --a 1.8 --b 0.3 --target 2 --seg-tol 0.1");
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("index,param,x,y,arclength,turn_index,iterate\n", 0) == 0);

  const std::string err = path_of("manifold_err.json");
  const RunResult tiny = run(
      "manifold --map lozi --a 1.8 --b 0.3 --target 5 --seg-tol 0.01 --budget 100",
      err);
  CHECK(tiny.code == 4);
  CHECK(contains(read_text_file(err), "BudgetExceeded"));

  const RunResult region =
      run("region --map lozi --a 1.8 --b 0.3 --window '...-.+'");
  CHECK(region.code == 0);
  CHECK(region.out.rfind("polygon_id,vertex_id,x,y\n", 0) == 0);
}
