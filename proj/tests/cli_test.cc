#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

#ifndef SECCACHE_CLI_PATH
#error "SECCACHE_CLI_PATH must name the seccache binary"
#endif

namespace {

class Workspace {
 public:
  Workspace() : dir_(fs::temp_directory_path() / ("seccache_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(SECCACHE_CLI_PATH) + " " + args + " > " +
                            path("stdout.txt") + " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

 private:
  fs::path dir_;
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("construct summaries and guards") {
  Workspace w;
  CHECK(w.run("construct --scheme theorem3 --N 3 --K 3 --t 1 --out " + w.path("t3.json")) == 0);
  const auto out = w.read("stdout.txt");
  CHECK(out.find("M=2 R=3/2") != std::string::npos);
  CHECK(out.find("q=3 B=2") != std::string::npos);
  CHECK(fs::exists(w.path("t3.json")));

  CHECK(w.run("construct --scheme otp --N 4 --K 3 --out " + w.path("otp.json")) == 0);
  CHECK(w.read("stdout.txt").find("M=1 R=3") != std::string::npos);

  CHECK(w.run("construct --scheme theorem1 --N 3 --K 3 --out " + w.path("x.json")) == 2);
  CHECK(w.read("stderr.txt").find("requires N=2") != std::string::npos);
  CHECK(w.run("construct --scheme theorem3 --N 3 --K 2 --t 1 --out " + w.path("x.json")) == 2);
  CHECK(w.run("construct --scheme nope --N 3 --K 2 --out " + w.path("x.json")) == 2);
  CHECK(w.run("construct --N 3 --K 2") == 2);
  CHECK(w.run("") == 2);
  CHECK(w.run("--help") == 0);
}

TEST_CASE("verify exit codes") {
  Workspace w;
  REQUIRE(w.run("construct --scheme theorem2 --N 3 --K 3 --out " + w.path("t2.json")) == 0);
  CHECK(w.run("verify --scheme " + w.path("t2.json") + " --report " + w.path("r.json")) == 0);
  const auto report = json::parse(w.read("r.json"));
  CHECK(report["pass"] == true);
  CHECK(report["demands_checked"] == 27);

  CHECK(w.run("verify --scheme " + w.path("t2.json") + " --demands sample --count 5 --seed 3") == 0);
  CHECK(w.run("verify --scheme " + w.path("t2.json") + " --demands some") == 2);
  CHECK(w.run("verify --scheme " + w.path("missing.json")) == 2);

  // Put W_2 in user 1's cache.
  auto doc = json::parse(w.read("t2.json"));
  doc["cache"][0].push_back({0, 1, 0, 0, 0, 0, 0});
  std::ofstream(w.path("leaky.json")) << doc.dump();
  CHECK(w.run("verify --scheme " + w.path("leaky.json") + " --report " + w.path("bad.json")) == 1);
  CHECK(w.read("stdout.txt").find("FAIL demand (1,1,2) user 1") != std::string::npos);
  const auto bad = json::parse(w.read("bad.json"));
  CHECK(bad["pass"] == false);
  CHECK_FALSE(bad["failures"].empty());

  std::ofstream(w.path("old.json")) << R"({"format_version": 0})";
  CHECK(w.run("verify --scheme " + w.path("old.json")) == 2);
}

TEST_CASE("oracle exit codes") {
  Workspace w;
  REQUIRE(w.run("construct --scheme theorem1 --N 2 --K 3 --out " + w.path("t1.json")) == 0);
  CHECK(w.run("oracle --scheme " + w.path("t1.json") + " --checks lemmas") == 0);
  CHECK(w.run("oracle --scheme " + w.path("t1.json") + " --checks entropy,sharing") == 0);
  CHECK(w.read("stdout.txt").find("0 mismatches") != std::string::npos);
  CHECK(w.run("oracle --scheme " + w.path("t1.json") + " --checks bogus") == 2);

  REQUIRE(w.run("construct --scheme theorem3 --N 2 --K 3 --t 1 --out " + w.path("t3.json")) == 0);
  CHECK(w.run("oracle --scheme " + w.path("t3.json") + " --checks sharing,lemmas") == 0);
  CHECK(w.run("oracle --scheme " + w.path("t3.json") + " --checks entropy --max-enum 100") == 2);
  CHECK(w.read("stderr.txt").find("19683") != std::string::npos);

  // User 1 caches W_1 + S_1: the cache is no longer a function of what it decodes.
  auto doc = json::parse(w.read("t1.json"));
  doc["cache"][0][0] = {1, 0, 1, 0};
  std::ofstream(w.path("broken.json")) << doc.dump();
  CHECK(w.run("oracle --scheme " + w.path("broken.json") + " --checks lemmas") == 1);
}

TEST_CASE("simulate exit codes") {
  Workspace w;
  REQUIRE(w.run("construct --scheme theorem3 --N 3 --K 3 --t 1 --out " + w.path("t3.json")) == 0);
  const auto scheme = w.path("t3.json");
  CHECK(w.run("simulate --scheme " + scheme + " --demand 1,2,3 --seed 42") == 0);
  const auto first = w.read("stdout.txt");
  CHECK(w.run("simulate --scheme " + scheme + " --demand 1,2,3 --seed 42") == 0);
  CHECK(w.read("stdout.txt") == first);
  CHECK(w.run("simulate --scheme " + scheme + " --demand 1,2,3 --seed 42 --corrupt 0") == 1);
  CHECK(w.run("simulate --scheme " + scheme + " --demand 1,2 --seed 42") == 2);
  CHECK(w.run("simulate --scheme " + scheme + " --demand 1,2,4") == 2);
  CHECK(w.run("simulate --scheme " + scheme + " --demand 1,x,3") == 2);
  CHECK(w.run("simulate --scheme " + scheme + " --demand 1,2,3 --corrupt 9") == 2);
}

TEST_CASE("tradeoff export") {
  Workspace w;
  CHECK(w.run("tradeoff --N 2 --K 4 --include-prior --grid 11 --out " + w.path("fig.csv")) == 0);
  const auto csv = w.read("fig.csv");
  CHECK(csv.rfind("M_num,M_den,M_float,R_ach_float,R_prior_float,R_lb_float\n", 0) == 0);
  CHECK(csv.find("\n1,1,1,3,4,3\n") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);
  const auto v = json::parse(w.read("fig.vertices.json"));
  CHECK(v["achievable"]["vertices"].size() == 3);
  CHECK(v["prior"]["vertices"].size() == 4);

  const auto before = w.read("fig.vertices.json");
  CHECK(w.run("tradeoff --N 2 --K 4 --include-prior --grid 11 --out " + w.path("fig.csv")) == 0);
  CHECK(w.read("fig.vertices.json") == before);
  CHECK(w.read("fig.csv") == csv);

  CHECK(w.run("tradeoff --N 2 --K 4 --grid 1 --out " + w.path("fig.csv")) == 2);
  CHECK(w.run("tradeoff --N 1 --K 4 --out " + w.path("fig.csv")) == 2);
  CHECK(w.run("tradeoff --N 2 --K 4") == 2);
}

}  // TEST_SUITE
