#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <sys/wait.h>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#ifndef FOCKMETER_CLI_PATH
#error "FOCKMETER_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(FOCKMETER_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.stdout_text.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

// Parsed CSV: comment lines, then a header row, then data rows.
struct Csv {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return i;
    }
    FAIL("missing column " + name);
    return 0;
  }

  std::vector<double> numeric(const std::string& name) const {
    const std::size_t idx = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(std::stod(row.at(idx)));
    return out;
  }
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::stringstream stream(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      csv.comments.push_back(line);
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream fs(line);
    std::string field;
    while (std::getline(fs, field, ',')) fields.push_back(field);
    if (!header_seen) {
      csv.columns = fields;
      header_seen = true;
    } else {
      csv.rows.push_back(fields);
    }
  }
  return csv;
}

}  // namespace

TEST_CASE("fringe emits the grid with oracle agreement") {
  const RunResult run = run_cli("fringe --n 5 --points 101");
  REQUIRE(run.exit_code == 0);
  const Csv csv = parse_csv(run.stdout_text);
  REQUIRE(csv.rows.size() == 101);

  const auto errors = csv.numeric("abs_error");
  for (double e : errors) CHECK(e <= 1e-10);

  // super-resolution: five maxima over one turn (wraparound scan of the
  // first 100 points; the last row repeats phi = 0 mod period)
  const auto p_d = csv.numeric("p_d");
  int maxima = 0;
  const int points = 100;
  for (int j = 0; j < points; ++j) {
    const double prev = p_d[static_cast<std::size_t>((j + points - 1) % points)];
    const double next = p_d[static_cast<std::size_t>((j + 1) % points)];
    if (p_d[static_cast<std::size_t>(j)] > prev && p_d[static_cast<std::size_t>(j)] >= next) {
      ++maxima;
    }
  }
  CHECK(maxima == 5);
}

TEST_CASE("fringe amplitude follows the transmission product") {
  const RunResult run = run_cli("fringe --n 2 --t 0.9,0.8 --points 201");
  REQUIRE(run.exit_code == 0);
  const Csv csv = parse_csv(run.stdout_text);
  const auto p_d = csv.numeric("p_d");
  double lo = 1.0, hi = 0.0;
  for (double p : p_d) {
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  CHECK(hi == Catch::Approx((1.0 + 0.72) / 2.0).margin(2e-3));  // grid resolution
  CHECK(lo == Catch::Approx((1.0 - 0.72) / 2.0).margin(2e-3));
  for (double e : csv.numeric("abs_error")) CHECK(e <= 1e-10);
}

TEST_CASE("usage and domain errors map to distinct exit codes") {
  CHECK(run_cli("fringe --n 0").exit_code == 1);
  CHECK(run_cli("fringe --no-such-flag").exit_code == 1);
  CHECK(run_cli("").exit_code == 1);  // a subcommand is required
  CHECK(run_cli("fringe --n 2 --t 0.5,0.5,0.5").exit_code == 2);
  CHECK(run_cli("loss --n 2 --t-min 0.9 --t-max 0.1").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("identical flags give byte-identical output") {
  for (const std::string args :
       {std::string("fringe --n 3 --points 31"), std::string("fringe --n 3 --points 31 --format json"),
        std::string("sensitivity --n-max 4 --t 0.9"), std::string("loss --n 2 --points 5"),
        std::string("state --n 2 --t 0.7 --phi 0.3 --xi 0.2")}) {
    const RunResult first = run_cli(args);
    const RunResult second = run_cli(args);
    REQUIRE(first.exit_code == 0);
    CHECK(first.stdout_text == second.stdout_text);
    CHECK_FALSE(first.stdout_text.empty());
  }
}

TEST_CASE("check passes on honest oracles and fails on corrupted ones") {
  CHECK(run_cli("fringe --n 2 --points 21 --check").exit_code == 0);
  CHECK(run_cli("fringe --n 2 --points 21 --check --corrupt-oracle 1e-3").exit_code == 3);
  CHECK(run_cli("sensitivity --n-max 3 --check").exit_code == 0);
  CHECK(run_cli("sensitivity --n-max 3 --check --corrupt-oracle 1e-3").exit_code == 3);
  CHECK(run_cli("loss --n 2 --points 4 --check").exit_code == 0);
  CHECK(run_cli("loss --n 2 --points 4 --check --corrupt-oracle 1e-3").exit_code == 3);
}

TEST_CASE("sensitivity table walks the Heisenberg limit when lossless") {
  const RunResult run = run_cli("sensitivity --n-max 5");
  REQUIRE(run.exit_code == 0);
  const Csv csv = parse_csv(run.stdout_text);
  REQUIRE(csv.rows.size() == 5);
  const auto delta = csv.numeric("delta_phi_min");
  for (std::size_t i = 0; i < delta.size(); ++i) {
    CHECK(delta[i] == Catch::Approx(1.0 / static_cast<double>(i + 1)).margin(1e-6));
    CHECK(csv.rows[i][csv.column("regime")] == "heisenberg");
    CHECK(csv.rows[i][csv.column("feasible")] == "1");
  }
}

TEST_CASE("loss sweep covers the GHZ and Heisenberg endpoints") {
  const RunResult run = run_cli("loss --n 2 --points 6");
  REQUIRE(run.exit_code == 0);
  const Csv csv = parse_csv(run.stdout_text);
  REQUIRE(csv.rows.size() == 6);

  CHECK(csv.rows.front()[csv.column("delta_phi_min")] == "inf");
  CHECK(csv.rows.front()[csv.column("regime")] == "infeasible");
  CHECK(std::stod(csv.rows.front()[csv.column("entropy")]) ==
        Catch::Approx(std::log(2.0)).margin(1e-10));

  CHECK(csv.rows.back()[csv.column("regime")] == "heisenberg");
  CHECK(std::stod(csv.rows.back()[csv.column("entropy")]) ==
        Catch::Approx(0.0).margin(1e-10));
  CHECK(std::stod(csv.rows.back()[csv.column("delta_phi_min")]) ==
        Catch::Approx(0.5).margin(1e-6));
}

TEST_CASE("state dump lists the superposition amplitudes") {
  const RunResult run = run_cli("state --n 1");
  REQUIRE(run.exit_code == 0);
  const Csv csv = parse_csv(run.stdout_text);
  REQUIRE(csv.rows.size() == 2);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  // sorted basis order: |p0', p1> before |p0, p1>  (registry p0,p0',p1,loss1)
  CHECK(csv.rows[0][csv.column("basis")] == "0;1;1;0");
  CHECK(csv.rows[1][csv.column("basis")] == "1;0;1;0");
  CHECK(std::stod(csv.rows[0][csv.column("re")]) == Catch::Approx(inv_sqrt2).margin(1e-12));
  CHECK(std::stod(csv.rows[1][csv.column("re")]) == Catch::Approx(inv_sqrt2).margin(1e-12));
}

TEST_CASE("json format carries the manifest and typed rows") {
  const RunResult run = run_cli("fringe --n 2 --points 5 --format json");
  REQUIRE(run.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(run.stdout_text);
  CHECK(doc.at("manifest").at("command") == "fringe");
  CHECK(doc.at("manifest").at("deterministic") == true);
  CHECK(doc.at("manifest").at("config").at("n") == "2");
  REQUIRE(doc.at("rows").size() == 5);
  CHECK(doc.at("rows")[0].at("p_c").is_number());

  // infinities serialize as null in JSON rows
  const RunResult loss = run_cli("loss --n 2 --points 3 --format json");
  const nlohmann::json loss_doc = nlohmann::json::parse(loss.stdout_text);
  CHECK(loss_doc.at("rows")[0].at("delta_phi_min").is_null());
}

TEST_CASE("angles can be supplied in degrees") {
  const RunResult deg = run_cli("state --n 1 --phi 90 --deg");
  const RunResult rad = run_cli("state --n 1 --phi 1.5707963267948966");
  REQUIRE(deg.exit_code == 0);
  REQUIRE(rad.exit_code == 0);
  CHECK(deg.stdout_text == rad.stdout_text);
}

TEST_CASE("stamp opts into a manifest timestamp") {
  const RunResult plain = run_cli("state --n 1");
  const RunResult stamped = run_cli("state --n 1 --stamp");
  REQUIRE(stamped.exit_code == 0);
  CHECK(plain.stdout_text.find("# stamp=") == std::string::npos);
  CHECK(stamped.stdout_text.find("# stamp=") != std::string::npos);
  CHECK(plain.stdout_text.find("# deterministic=true") != std::string::npos);
  CHECK(stamped.stdout_text.find("# deterministic=false") != std::string::npos);
}

TEST_CASE("config file seeds flags and flags override it") {
  const std::string path = "/tmp/fockmeter_test_config.ini";
  {
    FILE* f = fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    fputs("[fringe]\nn=3\npoints=11\n", f);
    fclose(f);
  }
  const RunResult from_file = run_cli("--config " + path + " fringe");
  REQUIRE(from_file.exit_code == 0);
  CHECK(parse_csv(from_file.stdout_text).rows.size() == 11);

  const RunResult overridden = run_cli("--config " + path + " fringe --points 7");
  REQUIRE(overridden.exit_code == 0);
  CHECK(parse_csv(overridden.stdout_text).rows.size() == 7);
  std::remove(path.c_str());
}
