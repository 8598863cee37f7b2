// End-to-end checks of the hstool binary: pinned scalar outputs, CSV/JSON
// shapes, determinism of repeated runs, scenario fit reports, and exit codes.
// The binary path comes in through the HSTOOL_PATH compile definition.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

namespace {

using nlohmann::json;

struct CommandResult {
  int exit_code;
  std::string output;
};

// Runs the tool with the given arguments through the shell and captures one
// of its streams. `capture_stderr` swaps the pipes so usage errors can be
// inspected without mixing them into data output.
CommandResult run_tool(const std::string& args, bool capture_stderr = false) {
  std::string cmd = std::string("'") + HSTOOL_PATH + "' " + args;
  cmd += capture_stderr ? " 2>&1 1>/dev/null" : " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), output};
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<double> split_csv_row(const std::string& line) {
  std::vector<double> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(std::stod(field));
  return fields;
}

}  // namespace

TEST_CASE("scalar distribution queries print pinned values") {
  auto pdf0 = run_tool("dist hs pdf --loc 0 --scale 1 --x 0");
  CHECK(pdf0.exit_code == 0);
  CHECK(pdf0.output == "0.5\n");

  auto cdf0 = run_tool("dist hs cdf --x 0");
  CHECK(cdf0.exit_code == 0);
  CHECK(cdf0.output == "0.5\n");

  auto med = run_tool("dist hs quantile --p 0.5");
  CHECK(med.exit_code == 0);
  CHECK(med.output == "0\n");

  auto q75 = run_tool("dist hs quantile --p 0.75");
  CHECK(q75.exit_code == 0);
  CHECK(q75.output == "0.56109985233918\n");

  auto sum_pdf = run_tool("dist hs-sum pdf --n 2 --scale 3.14159265358979 --x 0");
  CHECK(sum_pdf.exit_code == 0);
  CHECK(sum_pdf.output == "0.101321183642338\n");

  // A one-summand sum is the base law itself.
  auto sum_q = run_tool("dist hs-sum quantile --n 1 --scale 1 --p 0.75");
  CHECK(sum_q.exit_code == 0);
  CHECK(sum_q.output == q75.output);
}

TEST_CASE("sampling output is reproducible and carries its metadata") {
  const std::string args = "dist hs sample --loc 1 --scale 2 --count 5 --seed 42";
  auto first = run_tool(args + " --format csv");
  auto second = run_tool(args + " --format csv");
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);

  auto lines = split_lines(first.output);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "value");
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(std::isfinite(std::stod(lines[i])));

  auto as_json = run_tool(args + " --format json");
  CHECK(as_json.exit_code == 0);
  json j = json::parse(as_json.output);
  CHECK(j["generator"] == "hs");
  CHECK(j["seed"] == 42);
  CHECK(j["stream"] == 0);
  REQUIRE(j["values"].size() == 5);
  // The CSV view is the same batch printed to 15 significant digits.
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(j["values"][i].get<double>() ==
          doctest::Approx(std::stod(lines[i + 1])).epsilon(1e-14));

  auto ratio = run_tool(args + " --format json --mode ratio");
  json jr = json::parse(ratio.output);
  CHECK(jr["generator"] == "hs-ratio");

  auto sum_batch = run_tool("dist hs-sum sample --n 3 --scale 2 --count 4 --seed 9 --format json");
  json js = json::parse(sum_batch.output);
  CHECK(js["generator"] == "hs-sum");
  CHECK(js["values"].size() == 4);
}

TEST_CASE("figure1 table is deterministic and each column has unit mass") {
  auto first = run_tool("figure1");
  auto second = run_tool("figure1");
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);

  auto lines = split_lines(first.output);
  REQUIRE(lines.size() == 1602);  // header + 1601 grid points on [-8, 8]
  CHECK(lines[0] == "y,hs,normal,logistic");

  double mass_hs = 0.0, mass_normal = 0.0, mass_logistic = 0.0;
  bool saw_center = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto row = split_csv_row(lines[i]);
    REQUIRE(row.size() == 4);
    mass_hs += row[1] * 0.01;
    mass_normal += row[2] * 0.01;
    mass_logistic += row[3] * 0.01;
    if (std::abs(row[0]) < 1e-12) {
      saw_center = true;
      CHECK(row[1] == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(row[2] == doctest::Approx(0.398942280401433).epsilon(1e-12));
      CHECK(row[3] == doctest::Approx(0.453449841058554).epsilon(1e-12));
    }
  }
  CHECK(saw_center);
  CHECK(mass_hs == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(mass_normal == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(mass_logistic == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("twin run fits its target law and is thread-count invariant") {
  const std::string args = "twin --rho 0.5 --reps 100000 --seed 7";
  auto res = run_tool(args + " --threads 2");
  CHECK(res.exit_code == 0);

  json j = json::parse(res.output);
  CHECK(j["scenario"] == "twin");
  CHECK(j["params"]["rho"] == 0.5);
  CHECK(j["params"]["target_location"].get<double>() ==
        doctest::Approx(std::atanh(0.5)).epsilon(1e-12));
  CHECK(j["params"]["target_scale"].get<double>() ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
  CHECK(j["n"].get<double>() == 100000.0);
  CHECK(j["threshold"].get<double>() ==
        doctest::Approx(1.63 / std::sqrt(100000.0)).epsilon(1e-12));
  CHECK(j["passed"] == true);
  CHECK(j["ks_statistic"].get<double>() < j["threshold"].get<double>());
  CHECK(j["mean"].get<double>() == doctest::Approx(std::atanh(0.5)).epsilon(0.06));
  const double pi_sq_over_4 = std::numbers::pi * std::numbers::pi / 4.0;
  CHECK(j["variance"].get<double>() == doctest::Approx(pi_sq_over_4).epsilon(0.05));

  // Same seed, different worker counts: byte-identical report.
  auto serial = run_tool(args + " --threads 1");
  CHECK(serial.output == res.output);

  // Uncorrelated pairs: the target is the zero-location law, variance pi^2/4.
  auto zero = run_tool("twin --rho 0 --reps 100000 --seed 7");
  CHECK(zero.exit_code == 0);
  json jz = json::parse(zero.output);
  CHECK(jz["params"]["target_location"] == 0.0);
  CHECK(jz["passed"] == true);
  CHECK(jz["variance"].get<double>() == doctest::Approx(pi_sq_over_4).epsilon(0.05));
}

TEST_CASE("jeffreys both-mode run emits three passing reports") {
  auto res = run_tool("jeffreys --mode both --reps 20000 --seed 11 --threads 2");
  CHECK(res.exit_code == 0);

  json reports = json::parse(res.output);
  REQUIRE(reports.is_array());
  REQUIRE(reports.size() == 3);
  CHECK(reports[0]["scenario"] == "jeffreys-multinomial");
  CHECK(reports[1]["scenario"] == "jeffreys-binomial");
  CHECK(reports[2]["scenario"] == "jeffreys-two-sample");
  for (const auto& rep : reports) CHECK(rep["passed"] == true);

  // Both one-sample fits target the two-summand law at scale pi, whose
  // variance is 2*pi^2.
  const double two_pi_sq = 2.0 * std::numbers::pi * std::numbers::pi;
  CHECK(reports[0]["variance"].get<double>() == doctest::Approx(two_pi_sq).epsilon(0.1));
  CHECK(reports[1]["variance"].get<double>() == doctest::Approx(two_pi_sq).epsilon(0.1));
  CHECK(reports[0]["n"].get<double>() == 20000.0);
  // Two equal-size samples have harmonic effective size n/2.
  CHECK(reports[2]["n"].get<double>() == 10000.0);
}

TEST_CASE("iv run near the large-panel regime passes the fixed tolerance") {
  auto res = run_tool(
      "iv --rho-yd 0.6 --sigma-y 1 --p-d 0.5 --pi1 0.5 "
      "--n 10000 --reps 20000 --seed 3 --threads 2");
  CHECK(res.exit_code == 0);

  json j = json::parse(res.output);
  CHECK(j["scenario"] == "iv");
  CHECK(j["params"]["sigma_d"] == 0.5);
  CHECK(j["params"]["eta"].get<double>() == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(j["params"]["ls_limit"].get<double>() == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(j["target_location"].get<double>() == doctest::Approx(std::log(1.6)).epsilon(1e-12));
  CHECK(j["threshold"] == 0.02);
  CHECK(j["passed"] == true);
  CHECK(j["ks_statistic"].get<double>() < 0.02);
  CHECK(j["median_beta_iv"].get<double>() == doctest::Approx(1.2).epsilon(0.1));
  CHECK(j["median_abs_gap"].get<double>() == doctest::Approx(1.6).epsilon(0.1));

  // Uncorrelated outcome with sigma_Y equal to sigma_D collapses the noise
  // ratio to one, so the gap law is centred at zero.
  auto unit = run_tool(
      "iv --rho-yd 0 --sigma-y 0.5 --p-d 0.5 --pi1 0.5 "
      "--n 10000 --reps 20000 --seed 3 --threads 2");
  CHECK(unit.exit_code == 0);
  json ju = json::parse(unit.output);
  CHECK(ju["params"]["eta"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ju["target_location"] == 0.0);
  CHECK(ju["params"]["ls_limit"] == 0.0);
  CHECK(ju["passed"] == true);
}

TEST_CASE("iv run on a tiny panel fails the fixed tolerance and exits 1") {
  auto res = run_tool(
      "iv --rho-yd 0.6 --sigma-y 1 --p-d 0.5 --pi1 0.5 "
      "--n 20 --reps 20000 --seed 3");
  CHECK(res.exit_code == 1);
  json j = json::parse(res.output);
  CHECK(j["passed"] == false);
  CHECK(j["ks_statistic"].get<double>() >= 0.02);
}

TEST_CASE("usage and domain errors exit with code 2 and a diagnostic") {
  auto unknown_flag = run_tool("dist hs pdf --x 0 --bogus 1", /*capture_stderr=*/true);
  CHECK(unknown_flag.exit_code == 2);
  CHECK(!unknown_flag.output.empty());

  auto missing_required = run_tool("dist hs pdf", true);
  CHECK(missing_required.exit_code == 2);

  auto no_subcommand = run_tool("", true);
  CHECK(no_subcommand.exit_code == 2);

  auto bad_rho = run_tool("twin --rho 1.5 --reps 10", true);
  CHECK(bad_rho.exit_code == 2);
  CHECK(bad_rho.output.rfind("error:", 0) == 0);
  CHECK(split_lines(bad_rho.output).size() == 1);

  auto bad_p = run_tool("dist hs quantile --p 1.5", true);
  CHECK(bad_p.exit_code == 2);
  CHECK(bad_p.output.rfind("error:", 0) == 0);

  auto bad_mode = run_tool("jeffreys --mode quux", true);
  CHECK(bad_mode.exit_code == 2);
}
