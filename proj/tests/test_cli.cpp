#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "catch_amalgamated.hpp"

namespace fs = std::filesystem;

namespace {
  std::string const data = INVMON_DATA_DIR;

  fs::path scratch() {
    auto d = fs::temp_directory_path() / "invmon_cli_test";
    fs::create_directories(d);
    return d;
  }

  //! Runs the CLI with stdout captured; returns the exit status.
  int run(std::string const& args, std::string* out = nullptr) {
    auto log = scratch() / "stdout.txt";
    auto cmd = std::string("\"") + INVMON_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    int  rc  = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(rc));
    if (out != nullptr) {
      std::ifstream     in(log);
      std::stringstream ss;
      ss << in.rdbuf();
      *out = ss.str();
    }
    return WEXITSTATUS(rc);
  }

  std::string slurp(fs::path const& p) {
    std::ifstream     in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
}  // namespace

TEST_CASE("documented invocations", "[cli]") {
  CHECK(run("pres validate " + data + "/good.pres") == 0);
  CHECK(run("rc mr --r 1 --left \"q0 a0 a0 p0\" --right \"q1 a1 a1 p1\"") == 2);
  CHECK(run("rc mr --r 1 --left \"q0 a0 p0\" --right \"q1 a1 p1\"") == 0);
  CHECK(run("stephen member --pres " + data + "/bicyclic.pres --word a --rounds 2") == 0);
}

TEST_CASE("usage errors exit 1", "[cli]") {
  CHECK(run("") == 1);
  CHECK(run("frobnicate") == 1);
  CHECK(run("pres validate /nonexistent.pres") == 1);
  CHECK(run("stephen member --pres " + data + "/bicyclic.pres --word zz") == 1);
  CHECK(run("stephen member --pres " + data + "/bicyclic.pres --word a --rounds 0") == 1);
  CHECK(run("construct nothing --in " + data + "/good.pres") == 1);
}

TEST_CASE("unknown answers exit 3", "[cli]") {
  // b is not a right unit of the bicyclic monoid; the budget never settles it
  CHECK(run("stephen member --pres " + data + "/bicyclic.pres --word b --rounds 3") == 3);
  auto p = scratch() / "free.pres";
  std::ofstream(p) << "@kind rc_monoid\n@gens a\n";
  CHECK(run("rc solve --pres " + p.string() + " --left a --right \"a a\" --max-len 4 --max-steps 100") == 3);
}

TEST_CASE("chain certificates replay", "[cli]") {
  auto d = scratch();
  std::ofstream(d / "comm.pres") << "@kind rc_monoid\n@gens a b\n@rel a b = b a\n";
  auto pres = (d / "comm.pres").string();
  auto cert = (d / "chain.txt").string();
  REQUIRE(run("rc solve --pres " + pres + " --left \"a b b\" --right \"b b a\" --cert " + cert) == 0);
  CHECK(run("rc verify --pres " + pres + " --cert " + cert + " --left \"a b b\" --right \"b b a\"") == 0);
  CHECK(run("rc verify --pres " + pres + " --cert " + cert + " --left \"b b a\"") == 2);
  // break a step
  auto text = slurp(cert);
  auto pos  = text.find("step ");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, text.find('\n', pos) - pos, "step R0-@0");
  std::ofstream(cert) << text;
  CHECK(run("rc verify --pres " + pres + " --cert " + cert) == 2);
}

TEST_CASE("reports are deterministic and carry the seed", "[cli]") {
  auto d   = scratch();
  auto sys = (d / "sys.json").string();
  REQUIRE(run("subgroup build --model " + data + "/z3xz3_model.txt --j 1,2 -o " + sys) == 0);
  std::string o1, o2;
  auto        j1 = (d / "r1.json").string(), j2 = (d / "r2.json").string();
  CHECK(run("--seed 11 --json-out " + j1 + " subgroup verify --sys " + sys + " --samples 20", &o1) == 0);
  CHECK(run("--seed 11 --json-out " + j2 + " subgroup verify --sys " + sys + " --samples 20", &o2) == 0);
  CHECK(o1 == o2);
  CHECK(slurp(j1) == slurp(j2));
  auto j = nlohmann::json::parse(slurp(j1));
  CHECK(j["seed"] == 11);
  CHECK(j["status"] == "pass");
  CHECK(j["command"] == "subgroup verify");
  CHECK(o1.find("seed: 11") != std::string::npos);

  std::string r;
  CHECK(run("subgroup rewrite --sys " + sys + " --word \"b a b b\"", &r) == 0);
  CHECK(r.find("phi: [1,b] [2,a] [2,b']") != std::string::npos);

  // a tampered system file is rejected
  auto text = slurp(sys);
  auto pos  = text.find("\"kappa\": ");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 10, "\"kappa\": 9");
  std::ofstream(d / "bad.json") << text;
  CHECK(run("subgroup verify --sys " + (d / "bad.json").string()) == 1);
}

TEST_CASE("construction and graph commands", "[cli]") {
  auto d   = scratch();
  auto q   = (d / "q.pres").string();
  auto dot = (d / "omega.dot").string();
  CHECK(run("construct q --in " + data + "/one_letter.pres -o " + q) == 0);
  CHECK(run("construct check-q --s " + data + "/one_letter.pres --q " + q) == 0);
  CHECK(run("construct rqw --in " + data + "/z2group.pres --w \"a,b a\"") == 0);
  CHECK(run("omega ball --in " + data + "/z2.pres --oracle " + data + "/z2.oracle --radius 4 --margin 3 --dot "
            + dot)
        == 0);
  CHECK(slurp(dot).rfind("digraph", 0) == 0);
  CHECK(run("boundary width --graph " + data + "/cycle6.graph --subset " + data + "/cycle6.subset") == 0);
  CHECK(run("boundary cover --graph " + data + "/cycle6.graph --subset 0 --r 2 --mode excursion") == 0);
  CHECK(run("boundary cosets --model " + data + "/z6_model.txt --j 1,2") == 0);
  CHECK(run("boundary rips --graph " + data + "/cycle6.graph --k 5") == 2);
  CHECK(run("boundary rips --graph " + data + "/cycle6.graph --k 6") == 0);
  CHECK(run("qi check --pres " + data + "/good.pres") == 0);
  auto g = (d / "ball.graph").string();
  CHECK(run("stephen run --pres " + data + "/good.pres --base a -o " + g) == 0);
  CHECK(run("boundary width --graph " + g + " --subset 0") == 0);
}
