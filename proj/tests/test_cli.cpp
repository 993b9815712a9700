#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sde/cli.hpp"

namespace fs = std::filesystem;

namespace {

// Splits on blanks; double quotes group words.
std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  bool have = false;
  for (char c : s) {
    if (c == '"') {
      quoted = !quoted;
      have = true;
    } else if (c == ' ' && !quoted) {
      if (have) out.push_back(cur);
      cur.clear();
      have = false;
    } else {
      cur += c;
      have = true;
    }
  }
  if (have) out.push_back(cur);
  return out;
}

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(' '));
  s.erase(s.find_last_not_of(' ') + 1);
  return s;
}

std::string slurp(const fs::path& p) {
  if (!fs::exists(p)) return "";
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = sde::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Runs the commands with the corpus as working directory.
struct InCorpus {
  fs::path saved = fs::current_path();
  InCorpus() { fs::current_path(SDE_CORPUS_DIR); }
  ~InCorpus() { fs::current_path(saved); }
};

}  // namespace

TEST_CASE("golden corpus") {
  InCorpus here;
  std::ifstream cases("golden/cases.txt");
  REQUIRE(cases);
  std::string line;
  int count = 0;
  while (std::getline(cases, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::size_t a = line.find('|');
    std::size_t b = line.rfind('|');
    REQUIRE(a != b);
    std::string name = trim(line.substr(0, a));
    std::string args = trim(line.substr(a + 1, b - a - 1));
    int expect = std::stoi(trim(line.substr(b + 1)));
    CAPTURE(name);
    Run r = run(split_args(args));
    CHECK(r.code == expect);
    CHECK(r.out == slurp(fs::path("golden") / (name + ".out")));
    CHECK(r.err == slurp(fs::path("golden") / (name + ".err")));
    ++count;
  }
  CHECK(count >= 30);
}

TEST_CASE("usage errors") {
  InCorpus here;
  CHECK(run({}).code == sde::cli::kUsage);
  CHECK(run({"frobnicate"}).code == sde::cli::kUsage);
  CHECK(run({"solve"}).code == sde::cli::kUsage);
  CHECK(run({"solve", "fib.sde#nope"}).code == sde::cli::kUsage);
  CHECK(run({"solve", "fib.sde", "-n", "abc"}).code == sde::cli::kUsage);
  CHECK(run({"at", "-1", "thue_morse_eo.sde#TM"}).code == sde::cli::kUsage);
}

TEST_CASE("error lines are single and structured") {
  InCorpus here;
  Run r = run({"solve", "nonproductive.sde", "-n", "5"});
  CHECK(r.code == sde::cli::kUnknown);
  CHECK(r.out.empty());
  CHECK(r.err.rfind("error: kind=NonProductive index=2 ", 0) == 0);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  Run s = run({"solve", "bad_order.sde"});
  CHECK(s.code == sde::cli::kUsage);
  CHECK(s.err.find("line=3 column=11") != std::string::npos);
}

TEST_CASE("budget option") {
  InCorpus here;
  Run r = run({"solve", "catalan.sde", "-n", "40", "--budget", "5"});
  CHECK(r.code == sde::cli::kUnknown);
  CHECK(r.err.rfind("error: kind=BudgetExhausted", 0) == 0);
  CHECK(run({"solve", "catalan.sde", "-n", "40"}).code == sde::cli::kOk);
}

TEST_CASE("algebra override") {
  InCorpus here;
  Run r = run({"solve", "fib.sde#s", "-n", "10", "--algebra", "F2"});
  CHECK(r.code == 0);
  CHECK(r.out == "0, 1, 1, 0, 1, 1, 0, 1, 1, 0\n");
}
