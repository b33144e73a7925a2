#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

namespace trapspace::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "trapspace");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string example() { return testing::data_path("running_example.bnet").string(); }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "trapspace_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST_CASE("trapspaces") {
  Result r = run_cli({"trapspaces", "--mode", "min", example()});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "00--\n1101\n");
  r = run_cli({"trapspaces", "--mode", "max", example()});
  CHECK(r.out == "00--\n1---\n");
  r = run_cli({"trapspaces", "--mode", "all", example()});
  CHECK(r.out == "----\n00--\n1---\n1-0-\n1-01\n1101\n");
  r = run_cli({"steady", example()});
  CHECK(r.out == "1101\n");
}

TEST_CASE("json output") {
  const Result r = run_cli({"--json", "trapspaces", "--mode", "min", example()});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["mode"] == "min");
  CHECK(j["spaces"][0] == nlohmann::json{{"v1", 0}, {"v2", 0}});
  CHECK(j["spaces"][1].size() == 4);
  CHECK(j["witnesses"][0] == nlohmann::json{3, 5});
  CHECK(j["stats"]["arcs"] == 11);
  CHECK(j["stats"].contains("elapsed_ms"));
  CHECK(j["status"] == "complete");

  const auto p = nlohmann::json::parse(run_cli({"--json", "primes", example()}).out);
  CHECK(p["count"] == 11);
  CHECK(p["arcs"][2]["tail"] == nlohmann::json{{"v1", 0}, {"v2", 0}});
}

TEST_CASE("primes listing") {
  const Result r = run_cli({"primes", example()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("1 v1=1 -> v1=1\n2 v2=1 -> v1=1\n3 v1=0,v2=0 -> v1=0\n", 0) == 0);
}

TEST_CASE("attractors") {
  const Result r = run_cli({"attractors", "--update", "async", example()});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "4 00-- 0000,0001,0010,0011\n1 1101 1101\n");
  CHECK(run_cli({"attractors", "--update", "sideways", example()}).code == kExitUsage);
  CHECK(run_cli({"--stg-cap", "3", "attractors", example()}).code == kExitResource);
}

TEST_CASE("reduce") {
  Result r = run_cli({"reduce", "--space", "1---", example()});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "targets, factors\nv2, v4\nv3, 0\nv4, !v3\n");
  r = run_cli({"reduce", "--space", "--11", example()});
  CHECK(r.code == kExitInput);
  CHECK(r.err.find("not a trap space") != std::string::npos);
  CHECK(run_cli({"reduce", "--space", "--11", "--unchecked", example()}).code == kExitOk);
  CHECK(run_cli({"reduce", "--space", "1-x-", example()}).code == kExitInput);

  const auto path = scratch("reduced.bnet");
  CHECK(run_cli({"reduce", "--space", "1---", "-o", path.string(), example()}).code == kExitOk);
  CHECK(slurp(path) == "targets, factors\nv2, v4\nv3, 0\nv4, !v3\n");
}

TEST_CASE("bound, commitment and audit") {
  Result r = run_cli({"bound", example()});
  CHECK(r.out == "cyclic attractors >= 1\n00-- free: v3 v4\n");
  r = run_cli({"commitment", example()});
  CHECK(r.out == "row,00--,1---\nsteady,0,1\nsync-cyclic,1,0\nasync-cyclic,1,0\n");
  r = run_cli({"audit", "--update", "sync", example()});
  CHECK(r.code == kExitOk);
  CHECK(r.out ==
        "00-- attractors: 1 spanning: 1\n1101 attractors: 1 spanning: 1\n"
        "outside minimal trap spaces: 0\n");
  const auto j = nlohmann::json::parse(run_cli({"--json", "audit", example()}).out);
  CHECK(j["one_spanning_attractor_each"] == true);
}

TEST_CASE("check") {
  const Result r = run_cli({"check", example()});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "OK\n");
  const auto path = scratch("random.bnet");
  CHECK(run_cli({"random", "--n", "9", "--seed", "3", "-o", path.string()}).code == kExitOk);
  CHECK(run_cli({"check", path.string()}).out == "OK\n");
}

TEST_CASE("random and bench") {
  const Result a = run_cli({"random", "--n", "8", "--k", "3", "--seed", "42"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == slurp(testing::data_path("random_n8_k3_seed42.bnet")));

  const Result b = run_cli({"bench", "--n", "10", "20", "--repetitions", "2", "--jobs", "2"});
  CHECK(b.code == kExitOk);
  std::vector<std::string> lines;
  std::istringstream in(b.out);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0].rfind("# in-degree ~ Poisson(k) clamped", 0) == 0);
  CHECK(lines[1] ==
        "n,seed,arcs,min_count,max_count,min_mean_fixed,max_mean_fixed,min_ms,max_ms,status");
  CHECK(lines[2].rfind("10,0,", 0) == 0);
  CHECK(lines[5].rfind("20,1,", 0) == 0);
  CHECK(lines[5].substr(lines[5].size() - 8) == "complete");
}

TEST_CASE("encode") {
  Result r = run_cli({"encode", "--format", "asp", "--mode", "min", example()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("head(v1,0,a3). tail(v1,0,a3). tail(v2,0,a3).\n") != std::string::npos);
  CHECK(r.out == slurp(testing::data_path("running_example_min.lp")));
  r = run_cli({"encode", "--format", "ilp", example()});
  CHECK(r.out == slurp(testing::data_path("running_example_max.ilp.lp")));
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == kExitUsage);
  CHECK(run_cli({"frobnicate"}).code == kExitUsage);
  CHECK(run_cli({"trapspaces", "--mode", "middle", example()}).code == kExitUsage);
  CHECK(run_cli({"trapspaces"}).code == kExitUsage);
  CHECK(run_cli({"--help"}).code == kExitOk);

  Result r = run_cli({"trapspaces", "/nonexistent/net.bnet"});
  CHECK(r.code == kExitInput);
  CHECK(r.err.rfind("error: ", 0) == 0);

  const auto bad = scratch("bad.bnet");
  std::ofstream(bad) << "a, b &\n";
  r = run_cli({"steady", bad.string()});
  CHECK(r.code == kExitInput);
  CHECK(r.err.find("line 1") != std::string::npos);

  const auto wide = scratch("wide.bnet");
  {
    std::ofstream out(wide);
    for (int i = 0; i < 5; ++i) out << "x" << i << ", x0 | x1 | x2 | x3 | x4\n";
  }
  CHECK(run_cli({"--support-cap", "3", "primes", wide.string()}).code == kExitResource);
  // Two steady states, 00000 and 11111, so a limit of one is hit.
  CHECK(run_cli({"--limit", "1", "trapspaces", "--mode", "min", wide.string()}).code ==
        kExitResource);

  const auto many = scratch("inputs.bnet");
  std::ofstream(many) << "a, a\nb, b\n";
  r = run_cli({"--limit", "1", "trapspaces", "--mode", "max", many.string()});
  CHECK(r.code == kExitResource);
  CHECK(r.err.find("partial") != std::string::npos);
}

}  // namespace
}  // namespace trapspace::cli
