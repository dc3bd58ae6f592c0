// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <CLI11.hpp>
#include "anisopt/run.hpp"

namespace
{

struct Flags
{
  std::optional<double> a, b, p, beta, m0, m_const, tol, lambda, q;
  std::optional<int> n, threads;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> bc, out, weight, scan, input, mode, verify_case, level;
  std::string config;
};

std::pair<double, double> parse_bracket(const std::string &text)
{
  const auto colon = text.find(':');
  if (colon == std::string::npos)
  {
    throw std::invalid_argument("--scan expects lo:hi");
  }
  return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
}

anisopt::RunConfig build_config(const Flags &f, anisopt::Command command)
{
  anisopt::RunConfig c = f.config.empty() ? anisopt::RunConfig{} : anisopt::load_config(f.config);
  c.command = command;
  if (f.a) c.a = *f.a;
  if (f.b) c.b = *f.b;
  if (f.p) c.p = *f.p;
  if (f.beta) c.beta = *f.beta;
  if (f.m0) c.m0 = *f.m0;
  if (f.n) c.n = *f.n;
  if (f.threads) c.threads = *f.threads;
  if (f.seed)
  {
    c.seed = *f.seed;
    c.solver.seed = *f.seed;
  }
  if (f.bc) c.bc = anisopt::BoundaryCondition::parse(*f.bc);
  if (f.out) c.output_dir = *f.out;
  if (f.weight) c.weight_file = *f.weight;
  if (f.m_const) c.m_const = *f.m_const;
  if (f.tol) c.tol = *f.tol;
  if (f.lambda) c.lambda = *f.lambda;
  if (f.scan) c.scan = parse_bracket(*f.scan);
  if (f.q) c.q = *f.q;
  if (f.input) c.input = *f.input;
  if (f.mode) c.mode = *f.mode;
  if (f.verify_case) c.verify_case = *f.verify_case;
  if (f.level) c.level = *f.level;
  return c;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Optimal weights for anisotropic p-Laplacian eigenvalue problems in one dimension"};
  app.require_subcommand(1);
  Flags f;

  app.add_option("--a", f.a, "slope of H for positive arguments");
  app.add_option("--b", f.b, "slope of H for negative arguments");
  app.add_option("--p", f.p, "exponent p > 1");
  app.add_option("--bc", f.bc, "neumann | dirichlet | robin:K");
  app.add_option("--beta", f.beta, "lower bound of the weight class");
  app.add_option("--m0", f.m0, "mass bound: int m <= -m0");
  app.add_option("--n", f.n, "number of cells");
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--threads", f.threads, "worker threads (0 = all cores)");
  app.add_option("--out", f.out, "output directory");
  app.add_option("--config", f.config, "JSON configuration file")->check(CLI::ExistingFile);

  struct Sub
  {
    anisopt::Command command;
    const char *name;
    const char *help;
  };
  const Sub subs[] = {
      {anisopt::Command::Eig, "eig", "principal eigenvalues lambda+ and lambda- of a weight"},
      {anisopt::Command::Optimize, "optimize", "alternating optimization of the weight"},
      {anisopt::Command::Scan, "scan", "lambda+ over all placements of a bang-bang interval"},
      {anisopt::Command::Rearrange, "rearrange", "monotone and anisotropic rearrangements"},
      {anisopt::Command::Logistic, "logistic", "logistic steady state and survival threshold"},
      {anisopt::Command::Verify, "verify", "acceptance battery"},
  };
  std::optional<anisopt::Command> chosen;
  for (const auto &s : subs)
  {
    CLI::App *sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    sub->callback([&chosen, cmd = s.command]() { chosen = cmd; });
    switch (s.command)
    {
    case anisopt::Command::Eig:
      sub->add_option("--weight", f.weight, "CSV of cell values");
      sub->add_option("--m-const", f.m_const, "constant weight (outside the admissible class)");
      break;
    case anisopt::Command::Optimize:
      sub->add_option("--tol", f.tol, "relative stopping tolerance");
      break;
    case anisopt::Command::Scan:
      break;
    case anisopt::Command::Rearrange:
      sub->add_option("--input", f.input, "CSV of nodal values on a uniform grid of [0,1]")
          ->required();
      sub->add_option("--mode", f.mode, "dec | inc | aniso | neg")
          ->check(CLI::IsMember({"dec", "inc", "aniso", "neg"}));
      break;
    case anisopt::Command::Logistic:
    {
      auto *lam = sub->add_option("--lambda", f.lambda, "reaction strength");
      auto *scan = sub->add_option("--scan", f.scan, "threshold bracket lo:hi");
      lam->excludes(scan);
      sub->add_option("--q", f.q, "logistic exponent q > 0");
      sub->add_option("--weight", f.weight, "CSV of cell values");
      sub->add_option("--m-const", f.m_const, "constant weight");
      break;
    }
    case anisopt::Command::Verify:
      sub->add_option("--case", f.verify_case, "single criterion")
          ->check(CLI::IsMember(anisopt::verify_case_names()));
      sub->add_option("--level", f.level, "quick | full")->check(CLI::IsMember({"quick", "full"}));
      break;
    }
  }

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try
  {
    const anisopt::RunConfig config = build_config(f, *chosen);
    const anisopt::RunReport report = anisopt::run(config);
    anisopt::write_outputs(report);
    for (const auto &c : report.checks)
    {
      std::printf("%s  %s  (%s)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    }
    std::printf("report: %s/report.json\n", config.output_dir.c_str());
    return anisopt::exit_code(report);
  }
  catch (const std::exception &e)
  {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
