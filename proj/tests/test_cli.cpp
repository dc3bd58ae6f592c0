// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <cmath>
#include <filesystem>
#include <numbers>
#include "anisopt/dense.hpp"
#include "anisopt/io.hpp"
#include "anisopt/run.hpp"

using namespace anisopt;
namespace fs = std::filesystem;

namespace
{

fs::path scratch_dir(const std::string &name)
{
  const fs::path dir = fs::temp_directory_path() / ("anisopt_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config round trip")
{
  RunConfig c;
  c.command = Command::Logistic;
  c.a = 0.1 + 0.2;
  c.b = 1.0 / 3.0;
  c.p = 2.718281828459045;
  c.bc = BoundaryCondition::robin(0.3);
  c.lambda = 41.62774679234312;
  c.scan = std::make_pair(1e-3, 7.5);
  c.m_const = -0.125;
  c.solver.seed = 123456789012345ull;
  c.seed = 18446744073709551615ull;
  const std::string text = to_json(c).dump();
  const RunConfig back = config_from_json(nlohmann::json::parse(text));
  CHECK(back == c);
  CHECK(to_json(back).dump() == text);
  CHECK(back.a == c.a);
  CHECK(back.bc == c.bc);
  CHECK(config_hash(back) == config_hash(c));
  RunConfig other = c;
  other.n += 1;
  CHECK(config_hash(other) != config_hash(c));
}

TEST_CASE("malformed configs are rejected")
{
  CHECK_THROWS(config_from_json(nlohmann::json::parse(R"({"mesh": {"n": "many"}})")));
  CHECK_THROWS(config_from_json(nlohmann::json::parse(R"({"unknown": 1})")));
  CHECK_THROWS(config_from_json(nlohmann::json::parse(R"({"anisotropy": {"c": 1}})")));
  CHECK_THROWS(config_from_json(nlohmann::json::parse(R"({"command": "plot"})")));
  CHECK_THROWS(config_from_json(nlohmann::json::parse(R"({"bc": "robin:-1"})")));
  CHECK_THROWS(config_from_json(nlohmann::json::parse(R"({"scan": [1]})")));
  RunConfig c;
  c.n = 2;
  CHECK_THROWS(c.validate());
  c = RunConfig{};
  c.mode = "sideways";
  CHECK_THROWS(c.validate());
  c = RunConfig{};
  c.bc = BoundaryCondition::neumann();
  c.m0 = -0.1;
  CHECK_THROWS(run(c));
}

TEST_CASE("eig command reproduces pi squared")
{
  RunConfig c;
  c.command = Command::Eig;
  c.a = c.b = 1.0;
  c.p = 2.0;
  c.m_const = 1.0;
  c.n = 1024;
  const auto rep = run(c);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  CHECK(std::abs(rep.results["lambda_plus"].get<double>() - pi2) / pi2 < 1e-3);
  CHECK(exit_code(rep) == 0);
  CHECK(rep.files.count("eigenfunction.csv") == 1);
  CHECK(rep.files.at("eigenfunction.svg").find("<svg") == 0);
}

TEST_CASE("outputs are deterministic and written after the run")
{
  RunConfig c;
  c.command = Command::Optimize;
  c.n = 64;
  c.output_dir = scratch_dir("det").string();
  const auto first = run(c);
  const auto second = run(c);
  CHECK(first.files == second.files);
  CHECK_FALSE(fs::exists(c.output_dir));
  write_outputs(first);
  CHECK(fs::exists(fs::path(c.output_dir) / "report.json"));
  const auto report = nlohmann::json::parse(io::read_file(fs::path(c.output_dir) / "report.json"));
  CHECK(report["config_hash"] == config_hash(c));
  CHECK(report["version"] == std::string(version));
  CHECK(report["checks"].size() == first.checks.size());
  fs::remove_all(c.output_dir);
}

TEST_CASE("rearrange command")
{
  const fs::path dir = scratch_dir("rearr");
  std::string text = "x,u\n";
  for (int i = 0; i <= 8; i++)
  {
    const double x = i / 8.0;
    text += std::to_string(x) + "," + std::to_string(std::min(2 * x, 2 - 2 * x)) + "\n";
  }
  io::write_file(dir / "tent.csv", text);
  RunConfig c;
  c.command = Command::Rearrange;
  c.input = (dir / "tent.csv").string();
  c.mode = "aniso";
  const auto rep = run(c);
  CHECK(rep.results["lhs"].get<double>() == doctest::Approx(10.0));
  CHECK(rep.results["rhs"].get<double>() == doctest::Approx(9.0));
  CHECK(rep.results["equality_flag"] == false);
  CHECK(exit_code(rep) == 0);
  fs::remove_all(dir);
}

TEST_CASE("failed checks give exit code 2")
{
  RunReport rep;
  rep.checks.push_back({"ok", true, ""});
  CHECK(exit_code(rep) == 0);
  rep.checks.push_back({"bad", false, ""});
  CHECK(exit_code(rep) == 2);
}

TEST_CASE("csv helpers")
{
  const std::string text = io::csv({"a", "b"}, {{0.1, 1.0 / 3.0}, {2, 3}});
  CHECK(text == "a,b\n0.10000000000000001,2\n0.33333333333333331,3\n");
  CHECK_THROWS(io::csv({"a"}, {{1}, {2}}));
  const fs::path dir = scratch_dir("csv");
  io::write_file(dir / "t.csv", text);
  const auto rows = io::read_csv(dir / "t.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][0] == 1.0 / 3.0);
  io::write_file(dir / "bad.csv", "1,2\n3,x\n");
  CHECK_THROWS(io::read_csv(dir / "bad.csv"));
  fs::remove_all(dir);
}

TEST_CASE("verification case names")
{
  CHECK(verify_case_names().size() == 10);
  const auto c = verify_case("dense-pencil", VerifyLevel::Quick);
  CHECK(c.pass);
  CHECK(c.name.rfind("2 dense-pencil", 0) == 0);
  CHECK_THROWS(verify_case("nothing", VerifyLevel::Quick));
}

TEST_CASE("jacobi eigenvalues")
{
  dense::Matrix A(3);
  const double v[3][3] = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  for (int i = 0; i < 3; i++)
  {
    for (int j = 0; j < 3; j++)
    {
      A(i, j) = v[i][j];
    }
  }
  const auto e = dense::jacobi_eigen(A);
  CHECK(e.values[0] == doctest::Approx(2 - std::sqrt(2.0)));
  CHECK(e.values[1] == doctest::Approx(2.0));
  CHECK(e.values[2] == doctest::Approx(2 + std::sqrt(2.0)));
}
