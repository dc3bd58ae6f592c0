// SPDX-License-Identifier: Apache-2.0

#ifndef ANISOPT_RUN_HPP
#define ANISOPT_RUN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>
#include <json.hpp>
#include "anisopt/anisotropy.hpp"
#include "anisopt/eigen.hpp"
#include "anisopt/mesh.hpp"
#include "anisopt/weight.hpp"

namespace anisopt
{

extern const char *const version;

enum class Command
{
  Eig,
  Optimize,
  Scan,
  Rearrange,
  Logistic,
  Verify
};

std::string to_string(Command c);
Command parse_command(const std::string &text);

struct RunConfig
{
  Command command = Command::Eig;
  double a = 2.0, b = 1.0, p = 2.0;
  BoundaryCondition bc = BoundaryCondition::dirichlet();
  double beta = 1.0, m0 = 0.2;
  int n = 256;
  EigenOptions solver;
  std::string output_dir = "out";
  std::uint64_t seed = 0;
  int threads = 0;

  // Command-specific inputs; unused ones are ignored.
  std::string weight_file;        // CSV of cell values (last column)
  std::optional<double> m_const;  // constant weight, outside class M
  double tol = 1e-10;             // optimizer stopping tolerance
  std::optional<double> lambda;
  std::optional<std::pair<double, double>> scan;
  double q = 1.0;
  std::string input;         // rearrange: CSV of nodal values on [0,1]
  std::string mode = "dec";  // dec | inc | aniso | neg
  std::string verify_case;   // empty: whole battery at `level`
  std::string level = "quick";

  AnisotropyH anisotropy() const { return AnisotropyH(a, b, p); }
  WeightClassParams weight_params() const { return {beta, m0}; }

  // Throws std::invalid_argument on any invariant violation.
  void validate() const;

  bool operator==(const RunConfig &) const;
};

nlohmann::json to_json(const RunConfig &c);
// Unknown keys and mistyped values are errors.
RunConfig config_from_json(const nlohmann::json &j);
RunConfig load_config(const std::string &path);

// 64-bit FNV-1a of the canonical JSON text of the config.
std::string config_hash(const RunConfig &c);

struct Check
{
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunReport
{
  RunConfig config;
  nlohmann::json results = nlohmann::json::object();
  double wall_time = 0.0;
  std::string version;
  std::vector<Check> checks;
  // Output files, relative to config.output_dir, written only after the run succeeds.
  std::map<std::string, std::string> files;

  bool all_pass() const;
  nlohmann::json to_json() const;
};

// Dispatches to the module named by config.command. Throws on invalid input.
RunReport run(const RunConfig &config);

// Writes report.json and the data files under config.output_dir.
void write_outputs(const RunReport &report);

// 0 when every check passes, 2 otherwise.
int exit_code(const RunReport &report);

enum class VerifyLevel
{
  Quick,
  Full
};

// Names accepted by verify_case, in acceptance order.
const std::vector<std::string> &verify_case_names();

// One check per acceptance criterion. Quick runs everything at n <= 256.
RunReport verify_suite(VerifyLevel level, const RunConfig &base = {});

// A single criterion of the battery.
Check verify_case(const std::string &name, VerifyLevel level, const RunConfig &base = {});

}  // namespace anisopt

#endif  // ANISOPT_RUN_HPP
