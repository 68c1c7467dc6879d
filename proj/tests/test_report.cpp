#include <json.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "elliptika/errors.hpp"
#include "elliptika/report.hpp"
#include "support.hpp"

using namespace elliptika;
using nlohmann::json;

namespace {

SuiteConfig small_config() {
  SuiteConfig config;
  config.name = "small";
  config.tau_list = {cplx{0.0, 2.0}, cplx{0.0, 8.0}};
  config.pairs = {CoprimePair(1, 1), CoprimePair(1, 2), CoprimePair(2, 3), CoprimePair(1, 3)};
  config.cases = {IdentityCase{kCs, kCs}, IdentityCase{kDs, kCs}};
  config.N_max = 1;
  config.samples = 6;
  return config;
}

std::string to_json(const SuiteConfig& config, const SuiteResult& result) {
  std::ostringstream os;
  write_json(os, config, result);
  return os.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST_CASE("complex number parsing") {
  CHECK(parse_complex("2i") == cplx(0.0, 2.0));
  CHECK(parse_complex("i") == cplx(0.0, 1.0));
  CHECK(parse_complex("-i") == cplx(0.0, -1.0));
  CHECK(parse_complex("0.3+1.5i") == cplx(0.3, 1.5));
  CHECK(parse_complex("0.25-0.1i") == cplx(0.25, -0.1));
  CHECK(parse_complex(" 1 + i ") == cplx(1.0, 1.0));
  CHECK(parse_complex("-3") == cplx(-3.0, 0.0));
  CHECK(parse_complex("+4.5") == cplx(4.5, 0.0));
  CHECK(parse_complex("1e-3+2e+1i") == cplx(1e-3, 20.0));
  CHECK(parse_complex("-1.5e-2i") == cplx(0.0, -1.5e-2));
  for (const char* bad : {"", "abc", "1+2j", "1+2i3", "i2", "1..2", "2ii", "+-i"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_complex(bad), ParseError);
  }
}

TEST_CASE("case and pair parsing") {
  CHECK(parse_case("11:10") == IdentityCase{kDs, kCs});
  CHECK(parse_case("01:01") == IdentityCase{kNs, kNs});
  CHECK_THROWS_AS(parse_case("00:10"), ParseError);
  CHECK_THROWS_AS(parse_case("1110"), ParseError);
  CHECK_THROWS_AS(parse_case("12:10"), ParseError);
  CHECK(parse_pair("2:3") == CoprimePair(2, 3));
  CHECK_THROWS_AS(parse_pair("2:4"), ConfigError);
  CHECK_THROWS_AS(parse_pair("2,3"), ParseError);
  CHECK_THROWS_AS(parse_pair("x:3"), ParseError);
}

TEST_CASE("config file parsing") {
  std::istringstream in(
      "# comment\n"
      "name = trial\n"
      "tau = 2i, 0.3+1.5i   # two moduli\n"
      "pairs = 1:2, 2:3\n"
      "cases = 10:10, 11:10\n"
      "N_max = 1\n"
      "samples = 4\n"
      "tol.theorem31 = 1e-8\n"
      "format = csv\n");
  const SuiteConfig c = parse_config(in);
  CHECK(c.name == "trial");
  REQUIRE(c.tau_list.size() == 2);
  CHECK(c.tau_list[1] == cplx(0.3, 1.5));
  CHECK(c.pairs.size() == 2);
  CHECK(c.cases.size() == 2);
  CHECK(c.N_max == 1);
  CHECK(c.samples == 4);
  CHECK(c.tolerances.theorem31 == 1e-8);
  CHECK(c.tolerances.corollary33 == 1e-9);
  CHECK(c.output_format == OutputFormat::csv);

  std::istringstream non_coprime("pairs = 2:4\n");
  CHECK_THROWS_AS(parse_config(non_coprime), ConfigError);
  std::istringstream unknown("colour = blue\n");
  CHECK_THROWS_AS(parse_config(unknown), ConfigError);
  std::istringstream lower("tau = 1-2i\n");
  CHECK_THROWS_AS(parse_config(lower), ConfigError);
  std::istringstream no_eq("tau 2i\n");
  CHECK_THROWS_AS(parse_config(no_eq), ConfigError);
  std::istringstream bad_tol("tol.classical = -1\n");
  CHECK_THROWS_AS(parse_config(bad_tol), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/dir/suite.conf"), IoError);
}

TEST_CASE("default configuration") {
  const SuiteConfig c;
  CHECK(c.pairs.size() == 19);
  CHECK(c.cases.size() == 6);
  CHECK(c.N_max == 2);
  CHECK(c.samples == 16);
  CHECK_NOTHROW(c.validate());
  SuiteConfig bad = c;
  bad.samples = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.tau_list = {cplx{0.5, 0.0}};
  CHECK_THROWS_AS(run_suite(bad), ConfigError);
}

TEST_CASE("suite runs, counts and orders deterministically") {
  SuiteConfig config = small_config();
  config.threads = 1;
  const SuiteResult serial = run_suite(config);
  config.threads = 4;
  const SuiteResult threaded = run_suite(config);

  const auto& s = serial.summary;
  CHECK(s.failed == 0);
  CHECK(s.total == s.passed + s.failed + s.skipped_not_admissible);
  // (1,0)(1,0) is not admissible at (1,1) or (1,3); (1,1)(1,0) always is.
  CHECK(s.skipped_not_admissible == 2 * 2);
  CHECK(to_json(config, serial) == to_json(config, threaded));

  // Per admissible cell: identity, z = 0 law, N = 1, classical x2, plus
  // degeneration at 8i.
  const int cells_per_tau = 4 * 2 - 2;
  CHECK(static_cast<int>(serial.reports.size()) == cells_per_tau * 5 + cells_per_tau * 6);
  CHECK(serial.reports.front().identity == "theorem31");
  CHECK(serial.reports.front().identity_case == (IdentityCase{kCs, kCs}));
  CHECK(serial.reports.front().pair == CoprimePair(1, 2));
}

TEST_CASE("JSON and CSV describe the same reports") {
  const SuiteConfig config = small_config();
  const SuiteResult result = run_suite(config);
  const json doc = json::parse(to_json(config, result));

  // nlohmann::json sorts keys; order is checked on the raw text below.
  CHECK(doc.contains("suite"));
  CHECK(doc.contains("config"));
  CHECK(doc.contains("reports"));
  CHECK(doc.contains("summary"));
  const std::string raw = to_json(config, result);
  CHECK(raw.find("\"suite\"") < raw.find("\"config\""));
  CHECK(raw.find("\"config\"") < raw.find("\"reports\""));
  CHECK(raw.find("\"reports\"") < raw.find("\"summary\""));
  CHECK(raw.find("wall") == std::string::npos);

  CHECK(doc["summary"]["total"] == result.summary.total);
  CHECK(doc["summary"]["failed"] == 0);

  std::ostringstream csv;
  write_csv(csv, result);
  const auto rows = csv_rows(csv.str());
  REQUIRE(rows.size() == result.reports.size() + 1);
  CHECK(rows[0].size() == 12);
  const auto& reports = doc["reports"];
  REQUIRE(reports.size() == result.reports.size());
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    const auto& row = rows[k + 1];
    CHECK(r["identity"] == row[0]);
    for (int f = 0; f < 4; ++f) CHECK(r["case"][f].get<int>() == std::stoi(row[1 + f]));
    CHECK(r["pair"][0].get<int>() == std::stoi(row[5]));
    CHECK(r["pair"][1].get<int>() == std::stoi(row[6]));
    CHECK(r["tau"][0].get<double>() == std::stod(row[7]));
    CHECK(r["tau"][1].get<double>() == std::stod(row[8]));
    CHECK(r["max_abs_residual"].get<double>() == std::stod(row[9]));
    CHECK(r["tolerance"].get<double>() == std::stod(row[10]));
    CHECK(r["passed"].get<bool>() == (row[11] == "true"));
    // Round trip of the 17-digit numbers is exact.
    CHECK(r["max_abs_residual"].get<double>() == result.reports[k].max_abs_residual);
  }
}

TEST_CASE("tau outside the fundamental domain runs with a warning") {
  SuiteConfig config = small_config();
  config.tau_list = {cplx{1.5, 2.0}};
  const SuiteResult result = run_suite(config);
  CHECK(result.summary.failed == 0);
  REQUIRE(result.warnings.size() == 1);
  REQUIRE_FALSE(result.reports.empty());
  CHECK(result.reports.front().metadata.count("warning") == 1);
  const json doc = json::parse(to_json(config, result));
  CHECK(doc["warnings"].size() == 1);

  config.tau_list = {cplx{1.0, 0.1}};
  CHECK(run_suite(config).warnings.empty());
}

TEST_CASE("failures are counted, not hidden") {
  SuiteConfig config = small_config();
  config.tau_list = {cplx{0.0, 2.0}};
  config.tolerances.theorem31 = 1e-300;
  const SuiteResult result = run_suite(config);
  CHECK(result.summary.failed > 0);
  CHECK(result.summary.total ==
        result.summary.passed + result.summary.failed + result.summary.skipped_not_admissible);
}

TEST_CASE("output errors") {
  SuiteConfig config = small_config();
  config.output_path = "/nonexistent/dir/report.json";
  CHECK_THROWS_AS(emit_result(config, SuiteResult{}), IoError);
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(-2.0) == "-2");
}
