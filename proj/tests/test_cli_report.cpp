#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gribov/errors.hpp"
#include "gribov/report.hpp"
#include "gribov/spec_io.hpp"

using namespace gribov;
using namespace gribov::report;
using nlohmann::json;

namespace {

const std::filesystem::path kData = GRIBOV_TEST_DATA;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_config(const RunConfig& c) {
  std::ostringstream out, err;
  const int code = run(c, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(Command command, const std::string& spec) {
  RunConfig c;
  c.command = command;
  c.spec_path = kData / spec;
  c.trunc = 20;
  return c;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GRIBOV_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli_report") {

TEST_CASE("conditions on the zero-coupling spec") {
  const auto r = run_config(config(Command::kConditions, "zero.json"));
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["closedness"]["value"] == 0.0);
  CHECK(j["closedness"]["satisfied"] == true);
  CHECK(j["selfadjoint"]["applicable"] == true);
  CHECK(j["selfadjoint"]["value"] == 0.0);
  CHECK(j["selfadjoint"]["satisfied"] == true);
  CHECK(j["tool"] == "gribov");
  CHECK(j["version"] == GRIBOV_VERSION);
  CHECK(j["spec"]["n"] == 2);
  CHECK(j["truncation"]["trunc"] == 20);
}

TEST_CASE("example-p6 report") {
  RunConfig c;
  c.command = Command::kExampleP6;
  c.p6_n = 10;
  c.p6_a = 1.4;
  c.p6_lambda2 = 10.0;
  const auto r = run_config(c);
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["S"].get<double>() < 7.0 / 18.0);
  CHECK(j["S_below_7_18"] == true);
  CHECK(j["satisfied"] == true);
  CHECK(j.contains("version"));
}

TEST_CASE("every report carries the spec echo, truncation and version") {
  for (Command c : {Command::kSpectrum, Command::kEnclosure, Command::kSubordination,
                    Command::kConditions, Command::kCounting, Command::kRiesz}) {
    auto cfg = config(c, "triple.json");
    cfg.trunc = 12;
    cfg.trial_vectors = 20;
    const auto r = run_config(cfg);
    INFO(command_name(c), r.err);
    REQUIRE(r.code == kExitOk);
    const json j = json::parse(r.out);
    CHECK(j["command"] == command_name(c));
    CHECK(j["spec"] == io::spec_to_json(io::load_spec(kData / "triple.json")));
    CHECK(j["truncation"]["trunc"] == 12);
    CHECK(j["version"] == GRIBOV_VERSION);
  }
}

TEST_CASE("spectrum, enclosure and subordination contents") {
  auto cfg = config(Command::kEnclosure, "triple.json");
  const json e = build_report(cfg);
  CHECK(e["regions"]["beta_powers"]["membership"] == 1.0);
  CHECK(e["regions"]["certificate"]["membership"] == 1.0);
  CHECK(e["truncation"]["doubled_trunc"] == 40);
  CHECK(e["eigenvalues"].size() == 40);

  cfg.command = Command::kSubordination;
  cfg.trial_vectors = 50;
  const json s = build_report(cfg);
  CHECK(s["merged"]["verification"]["pass"] == true);
  CHECK(s["merged"]["term_count"] == 8);
  for (const auto& entry : s["entries"]) CHECK(entry["verification"]["pass"] == true);

  cfg.command = Command::kCounting;
  const json k = build_report(cfg);
  for (const auto& b : k["blocks"]) CHECK(b["counts_consistent"] == true);
}

TEST_CASE("reports are deterministic") {
  for (Command c : {Command::kSpectrum, Command::kEnclosure, Command::kRiesz, Command::kSubordination}) {
    auto cfg = config(c, "triple.json");
    cfg.trial_vectors = 30;
    CHECK(run_config(cfg).out == run_config(cfg).out);
  }
  auto csv = config(Command::kSpectrum, "triple.json");
  csv.format = Format::kCsv;
  CHECK(run_config(csv).out == run_config(csv).out);
}

TEST_CASE("csv layout") {
  auto cfg = config(Command::kSpectrum, "triple.json");
  cfg.format = Format::kCsv;
  const auto r = run_config(cfg);
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "index,re,im,modulus,stabilized,in_region");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 5);
  }
  CHECK(rows == 40);

  auto mixed = config(Command::kSpectrum, "mixed_sign.json");
  mixed.format = Format::kCsv;
  const auto m = run_config(mixed);
  REQUIRE(m.code == kExitOk);
  CHECK(m.out.find(",na\n") != std::string::npos);

  cfg.command = Command::kCounting;
  const auto k = run_config(cfg);
  CHECK(k.out.rfind("block,k,r,ratio,count\n", 0) == 0);

  cfg.command = Command::kConditions;
  CHECK(run_config(cfg).code == kExitValidation);
}

TEST_CASE("validation failures exit with 2") {
  const auto single = run_config(config(Command::kSpectrum, "single_block.json"));
  CHECK(single.code == kExitValidation);

  const auto missing = run_config(config(Command::kSpectrum, "does_not_exist.json"));
  CHECK(missing.code == kExitValidation);
  CHECK(missing.err.find("does_not_exist.json") != std::string::npos);

  const auto malformed = run_config(config(Command::kSpectrum, "malformed.json"));
  CHECK(malformed.code == kExitValidation);
  CHECK(malformed.err.find("malformed.json:3:") != std::string::npos);

  for (const char* bad : {"beta_three.json", "duplicate.json", "unknown_field.json"}) {
    INFO(bad);
    CHECK(run_config(config(Command::kConditions, bad)).code == kExitValidation);
  }

  auto cfg = config(Command::kSpectrum, "zero.json");
  cfg.trunc = 2;
  CHECK(run_config(cfg).code == kExitValidation);
  cfg.trunc = 10;
  cfg.growth = 1.0;
  CHECK(run_config(cfg).code == kExitValidation);
  cfg.growth = 2.0;
  cfg.alpha_margin = 0.0;
  CHECK(run_config(cfg).code == kExitValidation);
}

TEST_CASE("unsupported ray configuration is a validation failure") {
  auto cfg = config(Command::kEnclosure, "mixed_sign.json");
  const auto r = run_config(cfg);
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find("unsupported") != std::string::npos);
}

TEST_CASE("schema") {
  const json schema = io::spec_schema();
  CHECK(schema["additionalProperties"] == false);
  CHECK(schema["properties"]["off_entries"]["items"]["properties"]["beta"]["exclusiveMaximum"] == 3);
  RunConfig c;
  c.command = Command::kSchema;
  CHECK(json::parse(run_config(c).out) == schema);

  const json doc = io::spec_to_json(io::load_spec(kData / "symmetric.json"));
  CHECK(io::check_document(doc).empty());
  CHECK(io::parse_spec(doc) == io::load_spec(kData / "symmetric.json"));
  json beta = doc;
  beta["off_entries"][0]["beta"] = 3.0;
  CHECK_FALSE(io::check_document(beta).empty());
  json dup = doc;
  dup["off_entries"][1]["i"] = 1;
  dup["off_entries"][1]["j"] = 2;
  CHECK_FALSE(io::check_document(dup).empty());

  const auto spec = io::parse_spec(json::parse(R"({"n": 3, "diag_couplings": [1, 2, 3]})"));
  CHECK(spec.entry(2, 3) == EntryParams{});
}

TEST_CASE("command names") {
  CHECK(parse_command("example-p6") == Command::kExampleP6);
  CHECK_FALSE(parse_command("plot").has_value());
  for (Command c : {Command::kSpectrum, Command::kRiesz, Command::kSchema})
    CHECK(parse_command(command_name(c)) == c);
}

TEST_CASE("command-line tool") {
  const std::string data = kData.string();
  CHECK(run_cli("conditions --spec " + data + "/zero.json") == 0);
  CHECK(run_cli("spectrum --spec " + data + "/single_block.json") == 2);
  CHECK(run_cli("spectrum --spec " + data + "/nope.json") == 2);
  CHECK(run_cli("spectrum --spec " + data + "/zero.json --trunc 2") == 2);
  CHECK(run_cli("spectrum") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("example-p6 --n 10 --a 1.4 --lambda2 10") == 0);
  CHECK(run_cli("spectrum --spec " + data + "/zero.json --format xml") == 2);
  CHECK(run_cli("--version") == 0);

  const auto out = std::filesystem::temp_directory_path() / "gribov_cli_test.csv";
  std::filesystem::remove(out);
  CHECK(run_cli("spectrum --spec " + data + "/triple.json --trunc 10 --format csv --out " + out.string()) == 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "index,re,im,modulus,stabilized,in_region");
}

}
