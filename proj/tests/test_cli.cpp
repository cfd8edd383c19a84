#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bohrkit/cli.hpp"

using bohrkit::cli::run;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cells;
    std::istringstream cols(line);
    std::string cell;
    while (std::getline(cols, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("radius subcommands") {
  auto r = invoke({"radius", "cesaro", "--gamma", "0"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["equation"] == "cesaro");
  CHECK(std::abs(doc["radius"].get<double>() - 0.5335) <= 5e-4);
  CHECK(doc["residual"].get<double>() <= 1e-10);
  CHECK(doc["converged"] == true);
  CHECK(doc.contains("iterations"));
  CHECK(doc["parameters"]["gamma"] == 0.0);
  CHECK(doc["version"] == bohrkit::cli::kVersion);

  r = invoke({"radius", "bernardi", "--gamma", "0", "--beta", "1"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["radius"].get<double>() == doctest::Approx(0.5828).epsilon(1e-4));

  r = invoke({"radius", "bernardi-classic", "--beta", "1", "--m", "1"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["radius"].get<double>() == doctest::Approx(0.474).epsilon(1e-3));
}

TEST_CASE("radius exit codes") {
  auto r = invoke({"radius", "cesaro", "--gamma", "1.0"});
  CHECK(r.code == 2);
  CHECK(r.err.find("gamma must lie in [0,1)") != std::string::npos);
  CHECK(invoke({"radius", "bernardi", "--gamma", "0", "--beta", "-1"}).code == 2);
  CHECK(invoke({"radius", "cesaro"}).code == 1);
  CHECK(invoke({"radius", "cesaro", "--gamma", "abc"}).code == 1);
  CHECK(invoke({"radius", "cesaro", "-g", "0"}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({}).code == 1);
}

TEST_CASE("sweep over gamma, CSV") {
  auto r = invoke({"sweep", "--op", "cesaro", "--param", "gamma", "--grid",
                   "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 11);
  CHECK(rows[0] == std::vector<std::string>{"gamma", "radius", "residual", "iterations"});
  double prev = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double radius = std::stod(rows[i][1]);
    CHECK(radius > prev);
    prev = radius;
    // 17 significant digits survive a round trip exactly.
    CHECK(bohrkit::cli::format_number(radius) == rows[i][1]);
  }
}

TEST_CASE("sweep over beta, JSON, decreasing radii") {
  auto r = invoke({"sweep", "--op", "bernardi", "--param", "beta", "--grid", "1,2,5", "--gamma",
                   "0.2", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 3);
  CHECK(doc[0]["beta"] == 1.0);
  CHECK(doc[0]["radius"].get<double>() > doc[1]["radius"].get<double>());
  CHECK(doc[1]["radius"].get<double>() > doc[2]["radius"].get<double>());
}

TEST_CASE("sweep validation and output") {
  CHECK(invoke({"sweep", "--op", "cesaro", "--grid", ""}).code == 1);
  CHECK(invoke({"sweep", "--op", "cesaro", "--grid", "0.2,0.1"}).code == 1);
  CHECK(invoke({"sweep", "--op", "cesaro", "--grid", "0.1,x"}).code == 1);
  CHECK(invoke({"sweep", "--op", "cesaro", "--param", "beta", "--grid", "1,2"}).code == 1);
  CHECK(invoke({"sweep", "--op", "cesaro", "--grid", "0.5,1.0"}).code == 2);
  CHECK(invoke({"sweep", "--op", "cesaro", "--grid", "0,0.5", "--out", "/nonexistent-dir/x.csv"}).code == 4);

  const auto path = std::filesystem::temp_directory_path() / "bohrkit_sweep_test.csv";
  auto r = invoke({"sweep", "--op", "cesaro", "--grid", "0,0.5", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(parse_csv(buf.str()).size() == 3);
  std::filesystem::remove(path);
}

TEST_CASE("sweep output is independent of the thread count") {
  const std::vector<std::string> args{"sweep", "--op", "bernardi", "--param", "gamma", "--grid",
                                      "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7", "--beta", "2"};
  setenv("BOHRKIT_THREADS", "1", 1);
  const auto serial = invoke(args);
  setenv("BOHRKIT_THREADS", "8", 1);
  const auto parallel = invoke(args);
  unsetenv("BOHRKIT_THREADS");
  CHECK(serial.code == 0);
  CHECK(serial.out == parallel.out);
}

TEST_CASE("verify subcommands") {
  auto r = invoke({"verify", "identities"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["max_deviation"].get<double>() <= 1e-10);

  r = invoke({"verify", "lemma1", "--gamma", "0.4", "--samples", "1000", "--seed", "7"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["max_ratio"].get<double>() <= 1.0 + 1e-9);
  CHECK(doc["parameters"]["seed"] == 7);
  // Byte-identical reruns.
  CHECK(invoke({"verify", "lemma1", "--gamma", "0.4", "--samples", "1000", "--seed", "7"}).out == r.out);

  CHECK(invoke({"verify", "sharpness", "--op", "cesaro", "--gamma", "0", "--r", "0.50"}).code == 2);
  r = invoke({"verify", "sharpness", "--op", "cesaro", "--gamma", "0", "--r", "0.55"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["witness_found"] == true);
  r = invoke({"verify", "sharpness", "--op", "bernardi", "--gamma", "0", "--beta", "1", "--r", "0.62"});
  CHECK(r.code == 0);
  CHECK(invoke({"verify", "sharpness", "--op", "bernardi", "--gamma", "0", "--r", "0.62"}).code == 2);

  r = invoke({"verify", "remainder-order", "--op", "cesaro", "--gamma", "0.3", "--r", "0.4"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["slope"].get<double>() == doctest::Approx(2.0).epsilon(0.1));
  CHECK(invoke({"verify", "remainder-order", "--op", "cesaro", "--gamma", "0.3", "--r", "0.4", "--a", "0.99"}).code == 3);
}

TEST_CASE("verify reports an assertion failure with exit 5") {
  // A witness cannot appear when every a is far from 1 and r is barely above the radius.
  auto r = invoke({"verify", "sharpness", "--op", "cesaro", "--gamma", "0", "--r", "0.534", "--a", "0.5"});
  CHECK(r.code == 5);
  CHECK(json::parse(r.out)["witness_found"] == false);
}

TEST_CASE("table subcommand") {
  auto r = invoke({"table", "paper-constants"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("bohr gamma=0") != std::string::npos);
  CHECK(r.out.find("0.333333") != std::string::npos);
  CHECK(r.out.find("0.533589") != std::string::npos);
  CHECK(r.out.find("0.474278") != std::string::npos);

  r = invoke({"table", "paper-constants", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["rows"][0]["paper"] == "1/3");
  CHECK(doc["rows"][1]["paper"] == "0.5335");

  r = invoke({"table", "theorem2", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(parse_csv(r.out).size() == 17);
  CHECK(invoke({"table", "theorem1"}).code == 0);
  CHECK(invoke({"table", "nope"}).code == 1);
}

TEST_CASE("csv helpers") {
  CHECK(bohrkit::cli::csv_field("plain") == "plain");
  CHECK(bohrkit::cli::csv_field("a,b") == "\"a,b\"");
  CHECK(bohrkit::cli::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(bohrkit::cli::parse_grid(" 0, 0.5 ,1") == std::vector<double>{0.0, 0.5, 1.0});
}
