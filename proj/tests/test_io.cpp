#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "aopc/errors.hpp"
#include "aopc/io.hpp"

using namespace aopc;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run runCli(const std::string& args) {
  const std::string cmd = std::string(AOPC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string writeTemp(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "aopc_test_io";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

int parseErrorLine(std::string_view text) {
  try {
    io::parseDimacs(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

const char* kK3 = "c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";

}  // namespace

TEST_CASE("DIMACS parsing") {
  const auto k3 = io::parseDimacs(kK3);
  CHECK(k3.vertexCount() == 3);
  CHECK(k3.edgeCount() == 3);
  CHECK(k3.adjacent(0, 2));

  const auto dup = io::parseDimacs("p edge 2 2\ne 1 2\ne 2 1\n");
  CHECK(dup.edgeCount() == 1);

  CHECK(parseErrorLine("p edge 2 1\ne 1 1\n") == 2);
  CHECK(parseErrorLine("p edge 2 1\ne 1 3\n") == 2);
  CHECK(parseErrorLine("p col 2 1\ne 1 2\n") == 1);
  CHECK(parseErrorLine("e 1 2\n") == 1);
  CHECK(parseErrorLine("p edge 2 1\np edge 2 1\n") == 2);
  CHECK(parseErrorLine("p edge 2 1\nx 1 2\n") == 2);
  CHECK(parseErrorLine("p edge 2 1\ne 1\n") == 2);
  CHECK(parseErrorLine("c nothing\n") > 0);
  // Blank lines and trailing whitespace are fine.
  CHECK(io::parseDimacs("\np edge 2 1  \n\ne 1 2\r\n").edgeCount() == 1);
}

TEST_CASE("FAP JSON parsing") {
  const auto inst = io::parseFapJson(R"({
    "links": 3,
    "freqSets": [[2, 0], [0, 1, 1], [5]],
    "pairs": [{"i": 0, "j": 1, "d": 2}, {"i": 1, "j": 2, "d": 1, "c": 2.5}],
    "spectrum": 5
  })");
  CHECK(inst.links == 3);
  CHECK(inst.freqSets[0] == std::vector<int>{0, 2});
  CHECK(inst.freqSets[1] == std::vector<int>{0, 1});
  CHECK(inst.pairs.size() == 2);
  CHECK(inst.pairs[1].cost == 2.5);
  CHECK_FALSE(inst.pairs[0].cost.has_value());
  CHECK(inst.spectrum == 5);

  const auto open = io::parseFapJson(R"({"links": 2, "pairs": [{"i": 0, "j": 1, "d": 1}], "spectrum": null})");
  CHECK_FALSE(open.spectrum.has_value());
  CHECK(open.freqSets.empty());

  CHECK_THROWS_AS(io::parseFapJson(R"({"links": 2, "pairs": [], "extra": 1})"), InputError);
  CHECK_THROWS_AS(io::parseFapJson(R"({"links": 2, "pairs": [{"i": 0, "j": 1, "d": 1, "x": 0}]})"),
                  InputError);
  CHECK_THROWS_AS(io::parseFapJson(R"({"links": "2", "pairs": []})"), InputError);
  CHECK_THROWS_AS(io::parseFapJson(R"({"links": 2, "pairs": [{"i": 0, "j": 1, "d": 5}]})"),
                  UnsupportedInstance);
  try {
    io::parseFapJson("{\n  \"links\": 2,\n  \"pairs\": [\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("CLI subcommands and exit codes") {
  const auto k3 = writeTemp("k3.col", kK3);
  auto r = runCli("color " + k3);
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["chromatic"] == 3);
  CHECK(j["classes"].size() == 3);
  CHECK(j["status"] == "optimal");
  CHECK(j["instance"]["sha256"].get<std::string>().size() == 64);
  CHECK(j.contains("cutCounts"));
  CHECK(j.contains("boundHistory"));

  r = runCli("orient " + k3 + " --kappa 3 --oracle");
  CHECK(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["z"] == 2);
  CHECK(j["oracle"]["agrees"] == true);

  const auto tri = writeTemp(
      "tri.json",
      R"({"links": 3, "pairs": [{"i":0,"j":1,"d":1},{"i":1,"j":2,"d":1},{"i":0,"j":2,"d":1}], "spectrum": 1})");
  r = runCli("fap " + tri + " --oracle");
  CHECK(r.code == 2);
  CHECK(json::parse(r.out)["status"] == "infeasible");

  const auto triMin = writeTemp(
      "tri_min.json",
      R"({"links": 3, "pairs": [{"i":0,"j":1,"d":1},{"i":1,"j":2,"d":1},{"i":0,"j":2,"d":1}]})");
  r = runCli("fap " + triMin);
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["spectrum"] == 2);

  r = runCli("polytope " + k3 + " --kappa 2 --classify path --oracle");
  CHECK(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["dimension"] == 7);
  CHECK(j["classify"]["counts"]["valid-not-facet"] == 6);

  CHECK(runCli("color " + writeTemp("loop.col", "p edge 2 1\ne 1 1\n")).code == 1);
  CHECK(runCli("color /nonexistent/file.col").code == 1);
  CHECK(runCli("orient " + k3).code == 1);  // --kappa missing
  CHECK(runCli("").code == 1);
}

TEST_CASE("CLI reports are byte-stable with one thread") {
  const auto c5 = writeTemp("c5.col", "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
  const auto a = runCli("color " + c5 + " --seed 3 --threads 1");
  const auto b = runCli("color " + c5 + " --seed 3 --threads 1");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
