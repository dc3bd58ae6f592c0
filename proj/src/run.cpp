// SPDX-License-Identifier: Apache-2.0

#include "anisopt/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include "anisopt/io.hpp"
#include "anisopt/logistic.hpp"
#include "anisopt/optimize.hpp"
#include "anisopt/rearrange.hpp"

namespace anisopt
{

#ifndef ANISOPT_VERSION
#define ANISOPT_VERSION "0.0.0"
#endif
const char *const version = ANISOPT_VERSION;

using nlohmann::json;

namespace
{

const std::vector<std::pair<Command, std::string>> command_names = {
    {Command::Eig, "eig"},           {Command::Optimize, "optimize"},
    {Command::Scan, "scan"},         {Command::Rearrange, "rearrange"},
    {Command::Logistic, "logistic"}, {Command::Verify, "verify"},
};

std::string fmt(const char *f, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void check_keys(const json &j, const std::vector<std::string> &allowed, const std::string &where)
{
  if (!j.is_object())
  {
    throw std::invalid_argument(where + " must be an object");
  }
  for (const auto &item : j.items())
  {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
    {
      throw std::invalid_argument("unknown config key '" + where + "." + item.key() + "'");
    }
  }
}

template <class T>
void read(const json &j, const char *key, T &out)
{
  if (j.contains(key))
  {
    out = j.at(key).get<T>();
  }
}

std::vector<double> node_positions(const Mesh1D &mesh)
{
  return mesh.nodes();
}

std::vector<double> cell_midpoints(const Mesh1D &mesh)
{
  std::vector<double> x(mesh.n());
  for (int c = 0; c < mesh.n(); c++)
  {
    x[c] = mesh.midpoint(c);
  }
  return x;
}

std::optional<PredictedInterval> prediction(const RunConfig &c)
{
  if (c.bc.kind == BoundaryKind::Robin)
  {
    return std::nullopt;
  }
  return predicted_optimal_interval(c.anisotropy(), optimal_measure(c.weight_params()), c.bc);
}

bool near_interval(const PredictedInterval &pred, double left, double right, double tol)
{
  auto close = [&](double l, double r) { return std::abs(left - l) <= tol && std::abs(right - r) <= tol; };
  return close(pred.left, pred.right) ||
         (pred.alternative && close(pred.alternative->first, pred.alternative->second));
}

struct ResolvedWeight
{
  Weight m;
  EigenOptions eigen;
  std::string source;
};

// Weight file, constant weight, or the bang-bang weight of optimal measure at its predicted
// placement (centered under Robin conditions).
ResolvedWeight resolve_weight(const RunConfig &c)
{
  EigenOptions eigen = c.solver;
  const WeightClassParams params = c.weight_params();
  if (!c.weight_file.empty())
  {
    const auto rows = io::read_csv(c.weight_file);
    std::vector<double> cells;
    for (const auto &r : rows)
    {
      cells.push_back(r.back());
    }
    Mesh1D mesh(static_cast<int>(cells.size()));
    return {Weight(mesh, std::move(cells), params), eigen, "file " + c.weight_file};
  }
  Mesh1D mesh(c.n);
  if (c.m_const)
  {
    eigen.enforce_class_m = false;
    return {Weight::constant(mesh, *c.m_const, params), eigen, "constant " + fmt("%.17g", *c.m_const)};
  }
  const double width = optimal_measure(params);
  double left = 0.5 * (1.0 - width);
  if (const auto pred = prediction(c))
  {
    left = pred->left;
  }
  return {bang_bang_from_interval(left, width, params, mesh), eigen, "bang-bang interval"};
}

std::string weight_csv(const Weight &m)
{
  return io::csv({"x", "m"}, {cell_midpoints(m.mesh()), m.cells()});
}

RunReport run_eig(const RunConfig &c)
{
  RunReport rep;
  const AnisotropyH h = c.anisotropy();
  const auto w = resolve_weight(c);
  const auto plus = solve_lambda_plus(w.m, c.bc, h, w.eigen);
  const auto minus = solve_lambda_minus(w.m, c.bc, h, w.eigen);
  rep.results = {{"weight", w.source},
                 {"n", w.m.mesh().n()},
                 {"lambda_plus", plus.lambda},
                 {"lambda_minus", minus.lambda},
                 {"iterations_plus", plus.iterations},
                 {"iterations_minus", minus.iterations},
                 {"residual_plus", plus.residual_norm},
                 {"residual_minus", minus.residual_norm}};
  for (const auto *r : {&plus, &minus})
  {
    const std::string tag = r == &plus ? "lambda+" : "lambda-";
    rep.checks.push_back({tag + " converged", r->converged,
                          std::to_string(r->iterations) + " iterations"});
    rep.checks.push_back({tag + " weak-form residual",
                          r->residual_norm <= 1e-6 * (1.0 + std::abs(r->lambda)),
                          fmt("%.3e", r->residual_norm)});
  }
  const auto x = node_positions(w.m.mesh());
  rep.files["eigenfunction.csv"] =
      io::csv({"x", "phi_plus", "phi_minus"}, {x, plus.phi.values, minus.phi.values});
  rep.files["weight.csv"] = weight_csv(w.m);
  rep.files["eigenfunction.svg"] = io::svg_plot(
      {{x, plus.phi.values, "phi+"}, {x, minus.phi.values, "phi-"}},
      {"principal eigenfunctions", "x", "phi", std::nullopt});
  return rep;
}

RunReport run_optimize(const RunConfig &c)
{
  RunReport rep;
  const AnisotropyH h = c.anisotropy();
  const Mesh1D mesh(c.n);
  const WeightClassParams params = c.weight_params();
  OptimizeOptions opts;
  opts.eigen = c.solver;
  opts.tol = c.tol;
  const auto opt = optimize_weight_plus(params, c.bc, h, mesh, opts);
  const auto sym = check_lambda_symmetry(params, c.bc, h, mesh, opts);
  const auto mono = check_monotone_structure(opt.phi, c.bc);
  const auto deriv = check_derivative_structure(opt.phi, opt.m_opt);

  const int k = bathtub_cell_count(mesh, optimal_measure(params));
  bool two_valued = true;
  for (double v : opt.m_opt.cells())
  {
    two_valued = two_valued && (v == 1.0 || v == -c.beta);
  }
  rep.results = {{"Lambda_plus", opt.Lambda},
                 {"Lambda_minus", sym.Lambda_minus},
                 {"D", {opt.D_left, opt.D_right}},
                 {"alternations", opt.history.size() - 1},
                 {"converged", opt.converged},
                 {"oscillation", opt.oscillation},
                 {"relative_gap", sym.relative_gap},
                 {"weight_shift_cells", sym.weight_shift_cells},
                 {"sign_changes", mono.sign_changes}};
  rep.checks.push_back({"alternation converged", opt.converged && !opt.oscillation,
                        std::to_string(opt.history.size() - 1) + " steps"});
  rep.checks.push_back({"bang-bang weight", two_valued && opt.m_opt.positive_cell_count() == k,
                        std::to_string(opt.m_opt.positive_cell_count()) + " positive cells, expected " +
                            std::to_string(k)});
  rep.checks.push_back({"eigenfunction structure", mono.ok && deriv.ok,
                        std::to_string(mono.sign_changes) + " sign changes, derivative slack " +
                            fmt("%.2e", std::max(deriv.worst_in_D, deriv.worst_in_Dc))});
  rep.checks.push_back({"Lambda+ = Lambda-",
                        sym.relative_gap <= 1e-3 && sym.weight_shift_cells <= 1,
                        "gap " + fmt("%.2e", sym.relative_gap) + ", shift " +
                            std::to_string(sym.weight_shift_cells) + " cells"});
  if (const auto pred = prediction(c))
  {
    rep.results["predicted_D"] = {pred->left, pred->right};
    rep.checks.push_back({"D within 2h of (" + fmt("%.4g", pred->left) + ", " +
                              fmt("%.4g", pred->right) + ")",
                          near_interval(*pred, opt.D_left, opt.D_right, 2.0 * mesh.h()),
                          "D = (" + fmt("%.5f", opt.D_left) + ", " + fmt("%.5f", opt.D_right) + ")"});
  }
  const auto x = node_positions(mesh);
  std::vector<double> it, lam;
  for (const auto &[i, l] : opt.history)
  {
    it.push_back(i);
    lam.push_back(l);
  }
  rep.files["optimal_eigenfunction.csv"] = io::csv({"x", "phi"}, {x, opt.phi.values});
  rep.files["optimal_weight.csv"] = weight_csv(opt.m_opt);
  rep.files["history.csv"] = io::csv({"iteration", "lambda"}, {it, lam});
  rep.files["optimal.svg"] =
      io::svg_plot({{x, opt.phi.values, "phi+"}},
                   {"optimal eigenfunction, shaded: optimal set", "x", "phi",
                    std::make_pair(opt.D_left, opt.D_right)});
  return rep;
}

RunReport run_scan(const RunConfig &c)
{
  RunReport rep;
  const Mesh1D mesh(c.n);
  const double width = optimal_measure(c.weight_params());
  const auto scan = interval_scan(c.weight_params(), c.bc, c.anisotropy(), mesh, width, 0,
                                  c.solver, c.threads);
  std::vector<double> xs, ls;
  for (const auto &pt : scan.curve)
  {
    xs.push_back(pt.c_left);
    ls.push_back(pt.lambda);
  }
  rep.results = {{"width", width},
                 {"positions", scan.curve.size()},
                 {"argmin_c_left", scan.argmin.c_left},
                 {"argmin_lambda", scan.argmin.lambda}};
  if (const auto pred = prediction(c))
  {
    rep.results["predicted_D"] = {pred->left, pred->right};
    const double l = scan.argmin.c_left;
    rep.checks.push_back({"argmin within 2h of " + fmt("%.4g", pred->left),
                          near_interval(*pred, l, l + width, 2.0 * mesh.h()),
                          "c_left = " + fmt("%.5f", l)});
  }
  rep.files["scan.csv"] = io::csv({"c_left", "lambda"}, {xs, ls});
  rep.files["scan.svg"] = io::svg_plot({{xs, ls, "lambda+"}},
                                       {"principal eigenvalue against placement", "left end of D",
                                        "lambda+", std::nullopt});
  return rep;
}

RunReport run_rearrange(const RunConfig &c)
{
  RunReport rep;
  if (c.input.empty())
  {
    throw std::invalid_argument("rearrange needs --input");
  }
  const auto rows = io::read_csv(c.input);
  std::vector<double> values;
  for (const auto &r : rows)
  {
    values.push_back(r.back());
  }
  const Mesh1D mesh(static_cast<int>(values.size()) - 1);
  if (rows.front().size() >= 2)
  {
    for (std::size_t i = 0; i < rows.size(); i++)
    {
      if (std::abs(rows[i].front() - mesh.node(static_cast<int>(i))) > 1e-9)
      {
        throw std::invalid_argument("rearrange input must be sampled on a uniform grid of [0, 1]");
      }
    }
  }
  const GridFunction u(mesh, values);
  const AnisotropyH h = c.anisotropy();

  RearrangedFunction r;
  PolyaReport pr;
  if (c.mode == "dec")
  {
    r = monotone_rearrangement(u, Direction::Decreasing);
    pr = polya_monotone_check(u, h);
  }
  else if (c.mode == "inc")
  {
    r = monotone_rearrangement(u, Direction::Increasing);
    pr.lhs = energy(u, h);
    pr.rhs = r.energy(h);
    pr.equality = std::abs(pr.lhs - pr.rhs) <= 1e-10 * pr.lhs;
  }
  else if (c.mode == "aniso")
  {
    r = anisotropic_rearrangement(u, h);
    pr = polya_anisotropic_check(u, h);
  }
  else
  {
    r = negative_rearrangement(u, h);
    pr = polya_negative_check(u, h);
  }
  rep.results = {{"mode", c.mode},
                 {"domain", {r.domain_left, r.domain_right}},
                 {"lhs", pr.lhs},
                 {"rhs", pr.rhs},
                 {"equality_flag", pr.equality}};
  if (pr.equality && c.mode != "inc")
  {
    rep.results["shift_error"] = pr.shift_error;
  }
  rep.checks.push_back({"lhs >= rhs", pr.lhs >= pr.rhs - 1e-10 * std::max(1.0, pr.lhs),
                        fmt("lhs - rhs = %.3e", pr.lhs - pr.rhs)});
  rep.files["rearranged.csv"] = io::csv({"x", "u"}, {r.x, r.values});
  rep.files["rearranged.svg"] = io::svg_plot(
      {{mesh.nodes(), values, "u"}, {r.x, r.values, "rearranged"}},
      {"rearrangement (" + c.mode + ")", "x", "u", std::nullopt});
  return rep;
}

RunReport run_logistic(const RunConfig &c)
{
  RunReport rep;
  const AnisotropyH h = c.anisotropy();
  const auto w = resolve_weight(c);
  LogisticOptions opts;
  opts.eigen = w.eigen;
  if (c.scan)
  {
    const double lambda_plus = solve_lambda_plus(w.m, c.bc, h, w.eigen).lambda;
    const double t = threshold_scan(w.m, c.q, c.bc, h, *c.scan, opts);
    const double rel = std::abs(t - lambda_plus) / lambda_plus;
    rep.results = {{"weight", w.source}, {"threshold", t}, {"lambda_plus", lambda_plus},
                   {"relative_difference", rel}};
    rep.checks.push_back({"threshold within 5% of lambda+", rel <= 0.05, fmt("%.3e", rel)});
    return rep;
  }
  if (!c.lambda)
  {
    throw std::invalid_argument("logistic needs --lambda or --scan");
  }
  const LogisticProblem prob(*c.lambda, c.q, w.m, c.bc, h);
  const auto res = solve_logistic(prob, opts);
  const double bound = std::pow(w.m.max_positive(), 1.0 / c.q);
  const double mass = integrate_p_mass(res.u, w.m, h.p());
  rep.results = {{"weight", w.source},     {"lambda", *c.lambda},
                 {"q", c.q},               {"energy", res.energy},
                 {"nontrivial", res.nontrivial}, {"sup_norm", res.sup_norm},
                 {"iterations", res.iterations}, {"residual", res.residual},
                 {"converged", res.converged},   {"int_m_u_p", mass}};
  rep.checks.push_back({"converged", res.converged, std::to_string(res.iterations) + " iterations"});
  rep.checks.push_back({"weak-form residual", res.residual <= 1e-6 * (1.0 + *c.lambda),
                        fmt("%.3e", res.residual)});
  rep.checks.push_back({"a-priori bound", res.sup_norm <= bound + 1e-10,
                        fmt("sup u = %.6g", res.sup_norm)});
  if (res.nontrivial)
  {
    rep.checks.push_back({"int m u^p > 0", mass > 0.0, fmt("%.3e", mass)});
  }
  const auto x = node_positions(w.m.mesh());
  rep.files["solution.csv"] = io::csv({"x", "u"}, {x, res.u.values});
  rep.files["solution.svg"] =
      io::svg_plot({{x, res.u.values, "u"}}, {"logistic steady state", "x", "u", std::nullopt});
  return rep;
}

RunReport run_verify(const RunConfig &c)
{
  const VerifyLevel level = c.level == "full" ? VerifyLevel::Full : VerifyLevel::Quick;
  if (!c.verify_case.empty())
  {
    RunReport rep;
    rep.checks.push_back(verify_case(c.verify_case, level, c));
    return rep;
  }
  return verify_suite(level, c);
}

std::uint64_t fnv1a(const std::string &s)
{
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char ch : s)
  {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  return hash;
}

}  // namespace

std::string to_string(Command c)
{
  for (const auto &[cmd, name] : command_names)
  {
    if (cmd == c)
    {
      return name;
    }
  }
  throw std::logic_error("unknown command");
}

Command parse_command(const std::string &text)
{
  for (const auto &[cmd, name] : command_names)
  {
    if (name == text)
    {
      return cmd;
    }
  }
  throw std::invalid_argument("unknown command '" + text + "'");
}

void RunConfig::validate() const
{
  AnisotropyH(a, b, p);
  Mesh1D mesh(n);
  weight_params().check(bc);
  if (!(q > 0.0))
  {
    throw std::invalid_argument("q must be positive");
  }
  if (lambda && !(*lambda > 0.0))
  {
    throw std::invalid_argument("lambda must be positive");
  }
  if (scan && !(0.0 < scan->first && scan->first < scan->second))
  {
    throw std::invalid_argument("scan bracket needs 0 < lo < hi");
  }
  if (!(tol > 0.0))
  {
    throw std::invalid_argument("tol must be positive");
  }
  if (mode != "dec" && mode != "inc" && mode != "aniso" && mode != "neg")
  {
    throw std::invalid_argument("mode must be dec, inc, aniso or neg");
  }
  if (level != "quick" && level != "full")
  {
    throw std::invalid_argument("level must be quick or full");
  }
  const auto &names = verify_case_names();
  if (!verify_case.empty() && std::find(names.begin(), names.end(), verify_case) == names.end())
  {
    throw std::invalid_argument("unknown verification case '" + verify_case + "'");
  }
  if (threads < 0)
  {
    throw std::invalid_argument("threads must be >= 0");
  }
  if (!(solver.tol_rel > 0.0) || solver.max_iters < 1 || !(solver.smoothing_eps > 0.0) ||
      solver.restarts < 1 || !(solver.vector_tol > 0.0))
  {
    throw std::invalid_argument("invalid solver options");
  }
}

bool RunConfig::operator==(const RunConfig &other) const
{
  return to_json(*this) == to_json(other);
}

json to_json(const RunConfig &c)
{
  json j;
  j["command"] = to_string(c.command);
  j["anisotropy"] = {{"a", c.a}, {"b", c.b}, {"p", c.p}};
  j["bc"] = c.bc.to_string();
  j["weight_params"] = {{"beta", c.beta}, {"m0", c.m0}};
  j["mesh"] = {{"n", c.n}};
  j["solver"] = {{"tol_rel", c.solver.tol_rel},
                 {"max_iters", c.solver.max_iters},
                 {"smoothing_eps", c.solver.smoothing_eps},
                 {"restarts", c.solver.restarts},
                 {"seed", c.solver.seed},
                 {"enforce_class_m", c.solver.enforce_class_m},
                 {"vector_tol", c.solver.vector_tol}};
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["weight_file"] = c.weight_file;
  j["m_const"] = c.m_const ? json(*c.m_const) : json(nullptr);
  j["tol"] = c.tol;
  j["lambda"] = c.lambda ? json(*c.lambda) : json(nullptr);
  j["scan"] = c.scan ? json::array({c.scan->first, c.scan->second}) : json(nullptr);
  j["q"] = c.q;
  j["input"] = c.input;
  j["mode"] = c.mode;
  j["case"] = c.verify_case;
  j["level"] = c.level;
  return j;
}

RunConfig config_from_json(const json &j)
{
  check_keys(j,
             {"command", "anisotropy", "bc", "weight_params", "mesh", "solver", "output_dir",
              "seed", "threads", "weight_file", "m_const", "tol", "lambda", "scan", "q", "input",
              "mode", "case", "level"},
             "config");
  RunConfig c;
  try
  {
    if (j.contains("command"))
    {
      c.command = parse_command(j.at("command").get<std::string>());
    }
    if (j.contains("anisotropy"))
    {
      const auto &a = j.at("anisotropy");
      check_keys(a, {"a", "b", "p"}, "anisotropy");
      read(a, "a", c.a);
      read(a, "b", c.b);
      read(a, "p", c.p);
    }
    if (j.contains("bc"))
    {
      c.bc = BoundaryCondition::parse(j.at("bc").get<std::string>());
    }
    if (j.contains("weight_params"))
    {
      const auto &w = j.at("weight_params");
      check_keys(w, {"beta", "m0"}, "weight_params");
      read(w, "beta", c.beta);
      read(w, "m0", c.m0);
    }
    if (j.contains("mesh"))
    {
      check_keys(j.at("mesh"), {"n"}, "mesh");
      read(j.at("mesh"), "n", c.n);
    }
    if (j.contains("solver"))
    {
      const auto &s = j.at("solver");
      check_keys(s, {"tol_rel", "max_iters", "smoothing_eps", "restarts", "seed",
                     "enforce_class_m", "vector_tol"}, "solver");
      read(s, "tol_rel", c.solver.tol_rel);
      read(s, "max_iters", c.solver.max_iters);
      read(s, "smoothing_eps", c.solver.smoothing_eps);
      read(s, "restarts", c.solver.restarts);
      read(s, "seed", c.solver.seed);
      read(s, "enforce_class_m", c.solver.enforce_class_m);
      read(s, "vector_tol", c.solver.vector_tol);
    }
    read(j, "output_dir", c.output_dir);
    read(j, "seed", c.seed);
    read(j, "threads", c.threads);
    read(j, "weight_file", c.weight_file);
    if (j.contains("m_const") && !j.at("m_const").is_null())
    {
      c.m_const = j.at("m_const").get<double>();
    }
    read(j, "tol", c.tol);
    if (j.contains("lambda") && !j.at("lambda").is_null())
    {
      c.lambda = j.at("lambda").get<double>();
    }
    if (j.contains("scan") && !j.at("scan").is_null())
    {
      const auto &s = j.at("scan");
      if (!s.is_array() || s.size() != 2)
      {
        throw std::invalid_argument("scan must be [lo, hi]");
      }
      c.scan = std::make_pair(s[0].get<double>(), s[1].get<double>());
    }
    read(j, "q", c.q);
    read(j, "input", c.input);
    read(j, "mode", c.mode);
    read(j, "case", c.verify_case);
    read(j, "level", c.level);
  }
  catch (const json::exception &e)
  {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::string &path)
{
  json j;
  try
  {
    j = json::parse(io::read_file(path));
  }
  catch (const json::exception &e)
  {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return config_from_json(j);
}

std::string config_hash(const RunConfig &c)
{
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_json(c).dump())));
  return buf;
}

bool RunReport::all_pass() const
{
  return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
}

json RunReport::to_json() const
{
  json j;
  j["version"] = version;
  j["config"] = anisopt::to_json(config);
  j["config_hash"] = config_hash(config);
  j["wall_time"] = wall_time;
  j["results"] = results;
  j["checks"] = json::array();
  for (const auto &c : checks)
  {
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  j["pass"] = all_pass();
  return j;
}

RunReport run(const RunConfig &config)
{
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  RunReport rep;
  switch (config.command)
  {
  case Command::Eig: rep = run_eig(config); break;
  case Command::Optimize: rep = run_optimize(config); break;
  case Command::Scan: rep = run_scan(config); break;
  case Command::Rearrange: rep = run_rearrange(config); break;
  case Command::Logistic: rep = run_logistic(config); break;
  case Command::Verify: rep = run_verify(config); break;
  }
  rep.config = config;
  rep.version = version;
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

void write_outputs(const RunReport &report)
{
  const std::filesystem::path dir(report.config.output_dir);
  for (const auto &[name, text] : report.files)
  {
    io::write_file(dir / name, text);
  }
  io::write_file(dir / "report.json", report.to_json().dump(2) + "\n");
}

int exit_code(const RunReport &report)
{
  return report.all_pass() ? 0 : 2;
}

}  // namespace anisopt
