#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tauber/cli.hpp"
#include "tauber/error.hpp"
#include "tauber/io.hpp"

using namespace tauber;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "tauber");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tauber_test_" + name);
}

}  // namespace

TEST_CASE("table emission") {
  io::Table empty{{"a", "b"}, {}};
  std::ostringstream csv, json;
  io::emit_table(csv, empty, io::Format::csv);
  io::emit_table(json, empty, io::Format::json);
  CHECK(csv.str() == "a,b\n");
  CHECK(json.str() == "[]\n");

  io::Table one{{"name", "x", "n", "ok"}, {{std::string("p,q \"r\""), 0.5, std::int64_t{7}, true}}};
  std::ostringstream c1, j1;
  io::emit_table(c1, one, io::Format::csv);
  CHECK(c1.str() == "name,x,n,ok\n\"p,q \"\"r\"\"\",5.00000000000e-01,7,true\n");
  io::emit_table(j1, one, io::Format::json);
  const auto parsed = nlohmann::json::parse(j1.str());
  CHECK(parsed.size() == 1);
  CHECK(parsed[0]["name"] == "p,q \"r\"");
  CHECK(parsed[0]["x"] == 0.5);
  CHECK(parsed[0]["n"] == 7);

  io::Table bad{{"a"}, {{std::int64_t{1}, std::int64_t{2}}}};
  CHECK_THROWS_AS(io::emit_table(csv, bad, io::Format::csv), Error);
  CHECK_THROWS_AS(io::parse_format("xml"), Error);
  CHECK(io::format_real(-0.0) == "0.00000000000e+00");
  CHECK_THROWS_AS(io::emit_table("/nonexistent/dir/out.csv", csv, one, io::Format::csv), Error);
}

TEST_CASE("count command") {
  const auto r = run({"count", "--n", "3", "--x", "100"});
  CHECK(r.code == 0);
  CHECK(r.out == "n,disc,conductor,orbit_size\n3,49,7,2\n3,81,9,2\n");
  const auto j = run({"--format", "json", "count", "--n", "3", "--x", "100"});
  CHECK(nlohmann::json::parse(j.out).size() == 2);
}

TEST_CASE("series command") {
  const auto r = run({"series", "--n", "3", "--x", "49"});
  CHECK(r.code == 0);
  CHECK(r.out == "m,a\n1,1\n49,2\n");
}

TEST_CASE("factorize command") {
  const auto r = run({"factorize", "--n", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("modulus,residue,passed,first_bad_degree", 0) == 0);
  CHECK(r.out.find("false") == std::string::npos);
  const auto printed = run({"factorize", "--n", "3", "--rule", "printed"});
  CHECK(printed.out.find("false") != std::string::npos);
}

TEST_CASE("constants command") {
  const auto r = run({"--format", "json", "constants", "--which", "all"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  bool c2 = false, c3 = false;
  for (const auto& row : j) {
    if (row["name"] == "c2_C4") c2 = row["error_bound"].get<double>() > 0;
    if (row["name"] == "c3_C4") c3 = row["error_bound"].get<double>() > 0;
  }
  CHECK(c2);
  CHECK(c3);
}

TEST_CASE("moments and check commands") {
  const auto m = run({"moments", "--sigma", "2", "--t-min", "10", "--t-max", "20", "--z", "3"});
  CHECK(m.code == 0);
  CHECK(m.out.rfind("sigma,T,Z,re,im,abs\n", 0) == 0);
  const auto c = run({"--format", "json", "check", "--n", "3", "--x-min", "1000", "--x-max", "1000000"});
  REQUIRE(c.code == 0);
  CHECK(nlohmann::json::parse(c.out).at(0).contains("slope"));
}

TEST_CASE("errors are single json lines") {
  const auto bad_range = run({"count", "--n", "1", "--x", "10"});
  CHECK(bad_range.code != 0);
  const auto e = nlohmann::json::parse(bad_range.err);
  CHECK(e["code"] == "invalid_range");
  CHECK(bad_range.err.find('\n') == bad_range.err.size() - 1);

  const auto usage = run({"frobnicate"});
  CHECK(usage.code == 2);
  CHECK(nlohmann::json::parse(usage.err)["code"] == "usage");

  const auto unsupported = run({"check", "--n", "6"});
  CHECK(nlohmann::json::parse(unsupported.err)["code"] == "unsupported_n");

  const auto missing = run({"series", "--n", "3", "--x", "10", "--wild", "/nonexistent/wild.txt"});
  CHECK(nlohmann::json::parse(missing.err)["code"] == "io_error");

  cli::RunConfig cfg;
  cfg.command = "nope";
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("config file with flag precedence") {
  const auto cfg = temp_path("config.ini");
  {
    std::ofstream f(cfg);
    f << "format = \"json\"\n[count]\nn = 3\nx = 100\n";
  }
  const auto from_file = run({"--config", cfg.string(), "count"});
  CHECK(from_file.code == 0);
  CHECK(nlohmann::json::parse(from_file.out).size() == 2);
  const auto overridden = run({"--config", cfg.string(), "--format", "csv", "count", "--x", "60"});
  CHECK(overridden.out == "n,disc,conductor,orbit_size\n3,49,7,2\n");
  std::filesystem::remove(cfg);
}

TEST_CASE("output files are deterministic") {
  const auto a = temp_path("a.csv"), b = temp_path("b.csv");
  CHECK(run({"-o", a.string(), "--threads", "1", "series", "--n", "4", "--x", "5000"}).code == 0);
  CHECK(run({"-o", b.string(), "--threads", "4", "series", "--n", "4", "--x", "5000"}).code == 0);
  CHECK(read_file(a) == read_file(b));
  CHECK(!read_file(a).empty());
  const auto c = temp_path("c.json");
  CHECK(run({"-o", c.string(), "--format", "json", "constants", "--which", "c3_C4"}).code == 0);
  const auto first = read_file(c);
  CHECK(run({"-o", c.string(), "--format", "json", "constants", "--which", "c3_C4"}).code == 0);
  CHECK(read_file(c) == first);
  for (const auto& p : {a, b, c}) std::filesystem::remove(p);
}
