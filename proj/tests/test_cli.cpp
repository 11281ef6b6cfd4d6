#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fabius/cli.hpp"
#include "fabius/rational.hpp"

using namespace fabius;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "fabius");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fabius_test_" + name);
}

}  // namespace

TEST_CASE("seq") {
  auto r = run({"seq", "F", "--max", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "0 1\n1 1\n2 19\n3 2915\n4 2788989\n");
  CHECK(r.err.empty());

  r = run({"seq", "d", "--max", "2", "--format", "csv"});
  CHECK(r.out == "n,value\n0,1\n1,1/2\n2,5/18\n");

  r = run({"seq", "R", "--max", "3", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("command") == "seq");
  CHECK(doc.at("params").at("name") == "R");
  CHECK(doc.at("version") == std::string(cli::kVersion));
  CHECK(doc.at("rows").size() == 3);
  CHECK(doc.at("rows")[2].at("n") == 3);
  CHECK(doc.at("rows")[2].at("value") == "15");

  CHECK(run({"seq", "R", "--max", "0"}).code == cli::kUsage);
  CHECK(run({"seq", "Q", "--max", "3"}).code == cli::kUsage);
  CHECK(run({"seq", "c", "--max", "-1"}).code == cli::kUsage);
  CHECK(run({"seq", "c"}).code == cli::kUsage);
}

TEST_CASE("eval") {
  auto r = run({"eval", "--x", "3/8"});
  CHECK(r.code == 0);
  CHECK(r.out == "73/288\n");
  CHECK(run({"eval", "--x", "0.375"}).out == "73/288\n");
  CHECK(run({"eval", "--x", "2^-3"}).out == "1/288\n");
  CHECK(run({"eval", "--x", "0"}).out == "0\n");
  CHECK(run({"eval", "--x", "1/2", "--digits", "3"}).out == "1/2\n0.500\n");

  r = run({"eval", "--x", "1/3"});
  CHECK(r.code == cli::kNeedsTolerance);
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
  CHECK(run({"eval", "--x", "one third"}).code == cli::kUsage);
  CHECK(run({"eval", "--x", "1/3", "--eps", "-1"}).code == cli::kUsage);

  r = run({"eval", "--x", "1/3", "--eps", "1e-30", "--digits", "35", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  const auto& row = doc.at("rows")[0];
  CHECK(row.at("method") == "approx");
  const Rational value = Rational::parse(row.at("value").get<std::string>());
  const Rational bound = Rational::parse(row.at("error_bound").get<std::string>());
  CHECK(bound <= Rational::parse("1/1000000000000000000000000000000"));
  CHECK(row.at("decimal").get<std::string>().size() == 37);
  CHECK(value > Rational::parse("18/100"));
  CHECK(value < Rational::parse("19/100"));

  r = run({"eval", "--x", "1/3", "--eps", "1e-30", "--digits", "35"});
  const auto text = lines(r.out);
  REQUIRE(text.size() == 1);
  CHECK(text[0].rfind("0.18016511480148190695573343593102412 +- ", 0) == 0);
}

TEST_CASE("table") {
  auto r = run({"table", "--level", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "1 1/288\n3 73/288\n5 215/288\n7 287/288\nD 288\n");
  r = run({"table", "--level", "1", "--format", "csv"});
  CHECK(r.out == "a,value\n1,1/2\nD,2\n");
  CHECK(run({"table", "--level", "0"}).code == cli::kUsage);
  CHECK(run({"table", "--level", "15"}).code == cli::kUsage);
  CHECK(run({"table", "--level", "9", "--jobs", "3"}).out == run({"table", "--level", "9"}).out);

  const auto doc = nlohmann::json::parse(run({"table", "--level", "2", "--format", "json"}).out);
  CHECK(doc.at("command") == "table");
  CHECK(doc.at("D") == "72");
  CHECK(doc.at("rows")[1].at("value") == "67/72");
}

TEST_CASE("verify") {
  auto r = run({"verify", "--suite", "reshetnikov", "--max", "30"});
  CHECK(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("command") == "verify");
  CHECK(doc.at("report").size() == 1);
  CHECK(doc.at("report")[0].at("outcome") == "pass");
  CHECK_FALSE(doc.at("report")[0].contains("elapsed_ms"));

  r = run({"verify", "--suite", "all", "--max", "8"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).at("report").size() == 7);
  CHECK(r.out == run({"verify", "--suite", "all", "--max", "8"}).out);

  doc = nlohmann::json::parse(run({"verify", "--suite", "parity", "--max", "4", "--timing"}).out);
  CHECK(doc.at("report")[0].contains("elapsed_ms"));

  CHECK(run({"verify", "--suite", "parity", "--max", "4", "--format", "text"}).out == "parity pass 0..4\n");
  CHECK(run({"verify", "--suite", "nosuch", "--max", "4"}).code == cli::kUsage);
  CHECK(run({"verify", "--suite", "nosuch"}).code == cli::kUsage);
}

TEST_CASE("csv and json round trip") {
  for (const char* name : {"c", "d", "F", "G", "R"}) {
    const std::string csv = run({"seq", name, "--max", "12", "--format", "csv"}).out;
    std::string rebuilt = "n,value\n";
    const auto rows = lines(csv);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto comma = rows[i].find(',');
      rebuilt += rows[i].substr(0, comma + 1) + Rational::parse(rows[i].substr(comma + 1)).to_string() + "\n";
    }
    CHECK(rebuilt == csv);

    const std::string json_text = run({"seq", name, "--max", "12", "--format", "json"}).out;
    auto doc = nlohmann::json::parse(json_text);
    for (auto& row : doc.at("rows")) row["value"] = Rational::parse(row.at("value").get<std::string>()).to_string();
    CHECK(doc.dump(2) + "\n" == json_text);
  }
}

TEST_CASE("output file and config file") {
  const auto out_path = temp_file("out.csv");
  auto r = run({"seq", "F", "--max", "2", "--format", "csv", "--out", out_path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  {
    std::ifstream in(out_path);
    std::stringstream body;
    body << in.rdbuf();
    CHECK(body.str() == "n,value\n0,1\n1,1\n2,19\n");
  }
  std::filesystem::remove(out_path);

  const auto config_path = temp_file("config.ini");
  {
    std::ofstream cfg(config_path);
    cfg << "[eval]\nx=3/8\nformat=csv\n";
  }
  r = run({"--config", config_path.string(), "eval"});
  CHECK(r.code == 0);
  CHECK(r.out == "x,value,error_bound,method\n3/8,73/288,0,reduction\n");
  r = run({"--config", config_path.string(), "eval", "--x", "1/4"});
  CHECK(r.out == "x,value,error_bound,method\n1/4,5/72,0,reduction\n");
  std::filesystem::remove(config_path);
}

TEST_CASE("help and version") {
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("seq") != std::string::npos);
  r = run({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out.find(std::string(cli::kVersion)) != std::string::npos);
  CHECK(run({}).code == cli::kUsage);
}
