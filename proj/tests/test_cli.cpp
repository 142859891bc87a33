#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cesaro/json_io.hpp"
#include "cli.hpp"

using namespace cesaro;
using cesaro::cli::Format;
using cesaro::cli::RunConfig;
using cesaro::json_io::Json;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(const RunConfig& cfg) {
  std::ostringstream out, err;
  const int status = cli::run(cfg, out, err);
  return {status, out.str(), err.str()};
}

std::string write_input(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "cesaro_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

RunConfig config(const std::string& command, const std::string& input = "") {
  RunConfig c;
  c.command = command;
  c.input_path = input;
  return c;
}

const char* const kFamily = R"({
  "family": {"profile": {"breakpoints": [0, 1], "cells": [1]}, "space": {"space": "lp", "p": 2},
             "block": {"indices": [1], "coeffs": [1]}, "offset": 1, "stride": 1},
  "f": {"breakpoints": [0, 1], "cells": [{"indices": [1], "coeffs": [1]}]}})";

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("constant function norm report") {
  RunConfig c = config("norm-fun", write_input("one.json", R"({"breakpoints":[0,1],"cells":[1]})"));
  c.p = 2.0;
  const Run r = run(c);
  REQUIRE(r.status == cli::kExitOk);
  const Json j = json_io::parse(r.out);
  CHECK(j["schema"] == json_io::kReportSchema);
  CHECK(j["command"] == "norm-fun");
  CHECK(j["inputs"]["params"]["p"].get<double>() == 2.0);
  CHECK(std::abs(j["result"]["value"].get<double>() - 1.0) <= 1e-10);
  CHECK(r.out.find("time") == std::string::npos);
  // Echoed input parses back to the same function.
  const ScalarStepFunction back = json_io::scalar_function_from_json(j["inputs"]["function"]);
  CHECK(back == ScalarStepFunction::constant(1.0));
}

TEST_CASE("plot data") {
  RunConfig c = config("norm-fun", write_input("one.json", R"({"breakpoints":[0,1],"cells":[1]})"));
  c.format = Format::Csv;
  Run r = run(c);
  CHECK(r.out.rfind("t,inner_average,integrand\n", 0) == 0);
  for (const auto& row : csv_rows(r.out)) {
    CHECK(row[1] == 1.0);
    CHECK(row[2] == 1.0);
  }

  c.input_path = write_input("half.json", R"({"breakpoints":[0,0.5,1],"cells":[1,0]})");
  c.p = 1.0;
  r = run(c);
  const auto rows = csv_rows(r.out);
  CHECK(rows.size() >= 16);
  for (const auto& row : rows) {
    const double expected = row[0] <= 0.5 ? 1.0 : 1.0 / (2.0 * row[0]);
    CHECK(row[2] == doctest::Approx(expected).epsilon(1e-14));
  }

  // Commands without a sampled function emit the header only.
  RunConfig s = config("sharpness");
  s.format = Format::Csv;
  CHECK(run(s).out == "t,inner_average,integrand\n");
}

TEST_CASE("sharpness report") {
  const Run r = run(config("sharpness"));
  REQUIRE(r.status == cli::kExitOk);
  const Json j = json_io::parse(r.out);
  CHECK(j["result"]["quantities"]["ratio"].get<double>() == 2.0);
  CHECK(j["result"]["holds"] == true);
}

TEST_CASE("theorem commands on the unit family") {
  const std::string path = write_input("family.json", kFamily);
  Run r = run(config("thm31", path));
  REQUIRE(r.status == cli::kExitOk);
  Json j = json_io::parse(r.out);
  CHECK(j["result"]["quantities"]["lhs1"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(j["result"]["quantities"]["rhs1"].get<double>() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(j["result"]["phi"]["cells"][0].get<double>() == std::sqrt(2.0));

  r = run(config("cor32", path));
  CHECK(json_io::parse(r.out)["result"]["holds"] == true);

  RunConfig c = config("thm33", path);
  c.tau = 0.5;
  r = run(c);
  j = json_io::parse(r.out);
  CHECK(j["result"]["quantities"]["eta"].get<double>() == doctest::Approx(6.157477361207266e-4).epsilon(1e-12));
  CHECK(j["inputs"]["params"]["M"].get<double>() == 1.0);

  c = config("thm34", path);
  c.r = 4.0;
  c.eps = 1.0;
  c.K = 1.0;
  c.tau = 0.25;
  r = run(c);
  j = json_io::parse(r.out);
  CHECK(j["result"]["quantities"]["Q"].get<double>() == 9.0 / 256.0);
  CHECK(j["result"]["holds"] == true);

  // Violated hypothesis: computation error, not a schema problem.
  c = config("thm33", path);
  c.R = 0.5;
  r = run(c);
  CHECK(r.status == cli::kExitFailed);
  CHECK(r.err.find("HypothesisViolation") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("schema violations exit with 2") {
  CHECK(run(config("norm-fun")).status == cli::kExitSchema);
  CHECK(run(config("norm-fun", "/nonexistent/input.json")).status == cli::kExitSchema);
  CHECK(run(config("norm-fun", write_input("broken.json", "{\"breakpoints\": [0, 1"))).status == cli::kExitSchema);
  CHECK(run(config("norm-fun", write_input("cells.json", R"({"breakpoints":[0,1],"cells":[1,2]})"))).status ==
        cli::kExitSchema);
  CHECK(run(config("thm31", write_input("nof.json", R"({"family": {}})"))).status == cli::kExitSchema);
  CHECK(run(config("thm34", write_input("family.json", kFamily))).status == cli::kExitSchema);  // r missing
}

TEST_CASE("other commands") {
  Run r = run(config("norm-seq", write_input("e1.json", R"({"indices":[1],"coeffs":[1]})")));
  CHECK(json_io::parse(r.out)["result"]["value"].get<double>() == doctest::Approx(1.2825498301618641).epsilon(1e-9));

  const char* sum = R"({"p":2,"components":[{"slot":1,"vector":{"indices":[1],"coeffs":[1]}}],"stack":[{"space":"lp","p":2}]})";
  r = run(config("sum-norm", write_input("sum.json", sum)));
  CHECK(json_io::parse(r.out)["result"]["value"].get<double>() == doctest::Approx(1.2825498301618641).epsilon(1e-9));
  r = run(config("embed-check", write_input("sum.json", sum)));
  CHECK(json_io::parse(r.out)["result"]["holds"] == true);
  CHECK(json_io::parse(r.out)["inputs"]["map"] == "S");
  r = run(config("embed-check", write_input("e1.json", R"({"indices":[1],"coeffs":[1]})")));
  CHECK(json_io::parse(r.out)["inputs"]["map"] == "T");

  r = run(config("norm-vfun", write_input("vf.json",
                                           R"({"breakpoints":[0,1],"cells":[{"indices":[1,2],"coeffs":[3,4]}],"space":{"space":"lp","p":2}})")));
  CHECK(json_io::parse(r.out)["result"]["value"].get<double>() == doctest::Approx(5.0).epsilon(1e-12));

  r = run(config("modulus"));
  CHECK(json_io::parse(r.out)["result"]["eta"].get<double>() == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));

  const std::string p21 = std::string(R"({"x":)") + sum + R"(,"base":)" + sum + R"(,"offset":1,"stride":1})";
  r = run(config("prop21", write_input("p21.json", p21)));
  const Json j = json_io::parse(r.out);
  CHECK(j["result"]["holds"] == true);
  CHECK(j["result"]["certifying"] == false);
}
