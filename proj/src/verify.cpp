// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include "anisopt/dense.hpp"
#include "anisopt/logistic.hpp"
#include "anisopt/optimize.hpp"
#include "anisopt/rearrange.hpp"
#include "anisopt/run.hpp"

namespace anisopt
{

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char *f, double v)
{
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Collects sub-results of one criterion into a single check.
struct Verdict
{
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string &what)
  {
    pass = pass && ok;
    if (!detail.empty())
    {
      detail += "; ";
    }
    detail += (ok ? "" : "FAILED ") + what;
  }
};

struct Context
{
  VerifyLevel level;
  RunConfig base;

  int n(int full) const { return level == VerifyLevel::Full ? full : std::min(full, 256); }

  OptimizeOptions optimize_options() const
  {
    OptimizeOptions o;
    o.eigen = base.solver;
    o.tol = base.tol;
    return o;
  }
};

const WeightClassParams canonical_params{1.0, 0.2};

Check analytic_oracle(const Context &ctx)
{
  const auto t0 = Clock::now();
  const Mesh1D mesh(ctx.n(1024));
  EigenOptions opts = ctx.base.solver;
  opts.enforce_class_m = false;
  const auto r = solve_lambda_plus(Weight::constant(mesh, 1.0), BoundaryCondition::dirichlet(),
                                   AnisotropyH(1, 1, 2), opts);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double rel = std::abs(r.lambda - pi2) / pi2;
  const double t = seconds_since(t0);
  Verdict v;
  v.require(rel <= 1e-3, "n=" + std::to_string(mesh.n()) + fmt(" lambda=%.10g", r.lambda) +
                             fmt(" rel.err=%.2e", rel));
  v.require(t < 5.0, fmt("%.2fs < 5s", t));
  return {"lambda within 1e-3 of pi^2", v.pass, v.detail};
}

// Random cell values in [-beta, 1], lowered until the mass constraint holds.
Weight random_class_m_weight(const Mesh1D &mesh, const WeightClassParams &params,
                             std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-params.beta, 1.0);
  std::vector<double> cells(mesh.n());
  for (double &c : cells)
  {
    c = U(rng);
  }
  for (int guard = 0; guard < 100; guard++)
  {
    double mass = 0.0;
    for (double c : cells)
    {
      mass += c * mesh.h();
    }
    if (mass <= -params.m0)
    {
      break;
    }
    for (double &c : cells)
    {
      c = std::max(-params.beta, c - (mass + params.m0) - 1e-3);
    }
  }
  Weight m(mesh, std::move(cells), params);
  if (!validate(m).empty())
  {
    throw std::runtime_error("could not draw a class-M weight");
  }
  return m;
}

Check dense_pencil(const Context &ctx)
{
  const auto t0 = Clock::now();
  const Mesh1D mesh(32);
  const Weight m = random_class_m_weight(mesh, canonical_params, ctx.base.seed);
  const int N = mesh.n() - 1;  // interior nodes
  const double h = mesh.h();
  dense::Matrix K(N), M(N);
  for (int c = 0; c < mesh.n(); c++)
  {
    const int nodes[2] = {c - 1, c};  // interior indices of nodes c and c+1
    for (int i : nodes)
    {
      for (int j : nodes)
      {
        if (i < 0 || j < 0 || i >= N || j >= N)
        {
          continue;
        }
        K(i, j) += (i == j ? 1.0 : -1.0) / h;
        M(i, j) += 0.25 * h * m.cells()[c];
      }
    }
  }
  const auto mode = dense::smallest_positive_pencil_mode(K, M);
  double lo = 0.0, hi = 0.0;
  for (double v : mode.vector)
  {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const bool one_sign = std::min(-lo, hi) <= 1e-10 * std::max(-lo, hi);

  const auto r = solve_lambda_plus(m, BoundaryCondition::dirichlet(), AnisotropyH(1, 1, 2),
                                   ctx.base.solver);
  const double rel = std::abs(r.lambda - mode.lambda) / mode.lambda;
  const double t = seconds_since(t0);
  Verdict v;
  v.require(one_sign, "oracle eigenvector has one sign");
  v.require(rel <= 1e-8, fmt("oracle %.12g", mode.lambda) + fmt(" solver %.12g", r.lambda) +
                             fmt(" rel.err=%.2e", rel));
  v.require(t < 1.0, fmt("%.3fs < 1s", t));
  return {"lambda+ matches dense pencil within 1e-8", v.pass, v.detail};
}

struct Battery
{
  Context ctx;
  // Optimized weights for {Dirichlet, Neumann} x {1.5, 2, 3}, shared by two criteria.
  std::vector<std::pair<std::string, OptimizeResult>> optimized;

  const std::vector<std::pair<std::string, OptimizeResult>> &six_optima()
  {
    if (optimized.empty())
    {
      const Mesh1D mesh(ctx.n(512));
      for (auto bc : {BoundaryCondition::dirichlet(), BoundaryCondition::neumann()})
      {
        for (double p : {1.5, 2.0, 3.0})
        {
          const std::string tag = bc.to_string() + " p=" + fmt("%g", p);
          optimized.emplace_back(tag, optimize_weight_plus(canonical_params, bc, AnisotropyH(2, 1, p),
                                                           mesh, ctx.optimize_options()));
        }
      }
    }
    return optimized;
  }

  Check bang_bang()
  {
    const Mesh1D mesh(ctx.n(512));
    const int k = bathtub_cell_count(mesh, optimal_measure(canonical_params));
    Verdict v;
    for (const auto &[tag, opt] : six_optima())
    {
      bool two_valued = true;
      for (double c : opt.m_opt.cells())
      {
        two_valued = two_valued && (c == 1.0 || c == -canonical_params.beta);
      }
      const int count = opt.m_opt.positive_cell_count();
      v.require(two_valued && count == k,
                tag + ": " + std::to_string(count) + "/" + std::to_string(k) + " positive cells");
    }
    return {"optimal weights bang-bang with round(|D| n) positive cells", v.pass, v.detail};
  }

  Check structure()
  {
    Verdict v;
    for (const auto &[tag, opt] : six_optima())
    {
      const BoundaryCondition bc = tag.rfind("neumann", 0) == 0 ? BoundaryCondition::neumann()
                                                               : BoundaryCondition::dirichlet();
      const auto mono = check_monotone_structure(opt.phi, bc);
      const auto deriv = check_derivative_structure(opt.phi, opt.m_opt);
      const int expected = bc.kind == BoundaryKind::Neumann ? 0 : 1;
      v.require(mono.sign_changes == expected && deriv.ok,
                tag + ": " + std::to_string(mono.sign_changes) + " sign changes" +
                    fmt(", slack %.1e", std::max(deriv.worst_in_D, deriv.worst_in_Dc)));
    }
    return {"eigenfunction derivative structure", v.pass, v.detail};
  }

  Check dirichlet_localization()
  {
    const RunConfig &c = ctx.base;
    const Mesh1D mesh(ctx.n(512));
    const AnisotropyH h = c.anisotropy();
    const WeightClassParams params = c.weight_params();
    const auto bc = BoundaryCondition::dirichlet();
    const double width = optimal_measure(params);
    const auto pred = predicted_optimal_interval(h, width, bc);
    const double tol = 2.0 * mesh.h();
    Verdict v;
    const auto opt = optimize_weight_plus(params, bc, h, mesh, ctx.optimize_options());
    v.require(std::abs(opt.D_left - pred.left) <= tol && std::abs(opt.D_right - pred.right) <= tol,
              "optimizer D=(" + fmt("%.5f", opt.D_left) + fmt(", %.5f)", opt.D_right));
    const auto t0 = Clock::now();
    const auto scan = interval_scan(params, bc, h, mesh, width, 0, c.solver, c.threads);
    const double t = seconds_since(t0);
    const double l = scan.argmin.c_left;
    v.require(std::abs(l - pred.left) <= tol && std::abs(l + width - pred.right) <= tol,
              "scan D=(" + fmt("%.5f", l) + fmt(", %.5f)", l + width));
    v.require(t < 180.0, fmt("scan %.1fs < 180s", t));
    return {"D within 2h of (" + fmt("%.4g", pred.left) + fmt(", %.4g)", pred.right), v.pass,
            "n=" + std::to_string(mesh.n()) + ": " + v.detail};
  }

  Check neumann_localization()
  {
    const Mesh1D mesh(ctx.n(512));
    const auto bc = BoundaryCondition::neumann();
    const double tol = 2.0 * mesh.h();
    const double width = optimal_measure(canonical_params);
    Verdict v;
    const auto right_heavy = optimize_weight_plus(canonical_params, bc, AnisotropyH(2, 1, 2), mesh,
                                                  ctx.optimize_options());
    v.require(right_heavy.D_left <= tol, "a>b: D_left=" + fmt("%.5f", right_heavy.D_left));
    const auto left_heavy = optimize_weight_plus(canonical_params, bc, AnisotropyH(1, 2, 2), mesh,
                                                 ctx.optimize_options());
    v.require(left_heavy.D_right >= 1.0 - tol, "a<b: D_right=" + fmt("%.5f", left_heavy.D_right));
    const AnisotropyH even(1, 1, 2);
    const double l0 = solve_lambda_plus(bang_bang_from_interval(0.0, width, canonical_params, mesh),
                                        bc, even, ctx.base.solver).lambda;
    const double l1 = solve_lambda_plus(
                          bang_bang_from_interval(1.0 - width, width, canonical_params, mesh), bc,
                          even, ctx.base.solver).lambda;
    const double rel = std::abs(l0 - l1) / l0;
    v.require(rel <= 1e-6, "a=b flush placements rel.diff " + fmt("%.2e", rel));
    return {"Neumann optimal set flush with the heavier side", v.pass, v.detail};
  }

  Check lambda_symmetry()
  {
    const Mesh1D mesh(ctx.n(512));
    struct Case
    {
      BoundaryCondition bc;
      AnisotropyH h;
    };
    const Case cases[] = {{BoundaryCondition::dirichlet(), AnisotropyH(2, 1, 2)},
                          {BoundaryCondition::neumann(), AnisotropyH(2, 1, 2)},
                          {BoundaryCondition::dirichlet(), AnisotropyH(1.5, 1, 3)}};
    Verdict v;
    for (const auto &cs : cases)
    {
      const auto s = check_lambda_symmetry(canonical_params, cs.bc, cs.h, mesh,
                                           ctx.optimize_options());
      v.require(s.relative_gap <= 1e-3 && s.weight_shift_cells <= 1,
                cs.bc.to_string() + fmt(" a=%g", cs.h.a()) + fmt(" p=%g", cs.h.p()) +
                    fmt(": gap %.1e", s.relative_gap) + ", shift " +
                    std::to_string(s.weight_shift_cells));
    }
    return {"Lambda+ = Lambda- with reflected optimal weights", v.pass, v.detail};
  }

  Check polya()
  {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(ctx.base.seed + 17);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::uniform_int_distribution<int> cells(8, 64);
    Verdict v;

    auto random_function = [&](bool vanish)
    {
      const Mesh1D mesh(cells(rng));
      GridFunction u(mesh);
      const int kind = static_cast<int>(U(rng) * 3);
      if (kind == 0)
      {
        for (double &x : u.values)
        {
          x = U(rng);
        }
      }
      else
      {
        // Sum of tents (kind 1: one, kind 2: several).
        const int bumps = kind == 1 ? 1 : 2 + static_cast<int>(U(rng) * 3);
        for (int k = 0; k < bumps; k++)
        {
          const double c = U(rng), w = 0.05 + 0.5 * U(rng), amp = U(rng);
          for (int i = 0; i <= mesh.n(); i++)
          {
            u[i] += amp * std::max(0.0, 1.0 - std::abs(mesh.node(i) - c) / w);
          }
        }
      }
      if (vanish)
      {
        u.values.front() = 0.0;
        u.values.back() = 0.0;
      }
      return u;
    };
    auto random_h = [&]()
    { return AnisotropyH(0.5 + 2.5 * U(rng), 0.5 + 2.5 * U(rng), 1.2 + 2.8 * U(rng)); };
    auto slack = [](const PolyaReport &r) { return r.lhs - r.rhs + 1e-10 * std::max(1.0, r.lhs); };

    double worst_mono = INFINITY, worst_aniso = INFINITY, worst_neg = INFINITY;
    for (int trial = 0; trial < 1000; trial++)
    {
      // The decreasing rearrangement does not lower the energy of increasing functions when
      // a < b; that case is the mirror image and is covered by the increasing rearrangement.
      AnisotropyH h = random_h();
      const GridFunction u = random_function(false);
      if (h.a() >= h.b())
      {
        worst_mono = std::min(worst_mono, slack(polya_monotone_check(u, h)));
      }
      else
      {
        const auto inc = monotone_rearrangement(u, Direction::Increasing);
        worst_mono = std::min(worst_mono, energy(u, h) - inc.energy(h) + 1e-10 * std::max(1.0, energy(u, h)));
      }
      h = random_h();
      const GridFunction w = random_function(true);
      worst_aniso = std::min(worst_aniso, slack(polya_anisotropic_check(w, h)));
      GridFunction neg = w;
      for (double &x : neg.values)
      {
        x = -x;
      }
      worst_neg = std::min(worst_neg, slack(polya_negative_check(neg, h)));
    }
    v.require(worst_mono >= 0.0, fmt("monotone: min slack %.2e", worst_mono));
    v.require(worst_aniso >= 0.0, fmt("anisotropic: min slack %.2e", worst_aniso));
    v.require(worst_neg >= 0.0, fmt("negative: min slack %.2e", worst_neg));

    // Equality cases.
    const AnisotropyH h(2, 1, 2);
    const Mesh1D mesh(300);
    GridFunction dec(mesh), ball(mesh), negball(mesh);
    const double ca = 2.0 / 3.0, cb = 1.0 / 3.0;
    for (int i = 0; i <= mesh.n(); i++)
    {
      const double x = mesh.node(i);
      dec[i] = (1.0 - x) * (1.0 - x) + 0.1;
      ball[i] = x < ca ? x / ca : (1.0 - x) / (1.0 - ca);
      negball[i] = -(x < cb ? x / cb : (1.0 - x) / (1.0 - cb));
    }
    const auto e1 = polya_monotone_check(dec, h);
    v.require(e1.equality && e1.shift_identity, fmt("decreasing u: shift err %.1e", e1.shift_error));
    const auto e2 = polya_anisotropic_check(ball, h);
    v.require(e2.equality && e2.shift_identity, fmt("anisotropic ball: shift err %.1e", e2.shift_error));
    const auto e3 = polya_negative_check(negball, h);
    v.require(e3.equality && e3.shift_identity, fmt("negative ball: shift err %.1e", e3.shift_error));

    // Tent fixtures.
    const Mesh1D m8(8);
    GridFunction tent(m8);
    for (int i = 0; i <= 8; i++)
    {
      tent[i] = std::min(2.0 * m8.node(i), 2.0 - 2.0 * m8.node(i));
    }
    const auto f1 = polya_monotone_check(tent, h);
    const auto f2 = polya_anisotropic_check(tent, h);
    const bool fixtures = std::abs(f1.lhs - 10) <= 1e-12 && std::abs(f1.rhs - 1) <= 1e-12 &&
                          std::abs(f2.lhs - 10) <= 1e-12 && std::abs(f2.rhs - 9) <= 1e-12;
    v.require(fixtures, fmt("tent %.12g/", f1.lhs) + fmt("%.12g, ", f1.rhs) + fmt("%.12g/", f2.lhs) +
                            fmt("%.12g", f2.rhs));
    const double t = seconds_since(t0);
    v.require(t < 30.0, fmt("%.2fs < 30s", t));
    return {"Polya inequalities, equality cases and fixtures", v.pass, v.detail};
  }

  // Dirichlet optimal weight at n = 256 for the logistic criteria.
  std::optional<OptimizeResult> survival_weight;

  const OptimizeResult &logistic_weight()
  {
    if (!survival_weight)
    {
      survival_weight = optimize_weight_plus(canonical_params, BoundaryCondition::dirichlet(),
                                             AnisotropyH(2, 1, 2), Mesh1D(256),
                                             ctx.optimize_options());
    }
    return *survival_weight;
  }

  Check survival_threshold()
  {
    const auto t0 = Clock::now();
    const auto &opt = logistic_weight();
    const auto bc = BoundaryCondition::dirichlet();
    const AnisotropyH h(2, 1, 2);
    const double lp = opt.Lambda;
    LogisticOptions lopts;
    lopts.eigen = ctx.base.solver;
    Verdict v;
    const double t = threshold_scan(opt.m_opt, 1.0, bc, h, {0.5 * lp, 1.5 * lp}, lopts);
    const double rel = std::abs(t - lp) / lp;
    v.require(rel <= 0.05, fmt("threshold %.6g", t) + fmt(" vs lambda+ %.6g", lp) +
                               fmt(" (rel %.1e)", rel));

    const LogisticProblem below(0.8 * lp, 1.0, opt.m_opt, bc, h);
    const auto box_below = sub_super_pair(below, lopts.eigen);
    GridFunction half = box_below.super;
    for (double &x : half.values)
    {
      x *= 0.5;
    }
    const auto b1 = solve_logistic(below, lopts);
    const auto b2 = solve_logistic(below, lopts, half);
    v.require(!b1.nontrivial && !b2.nontrivial,
              fmt("0.8 lambda+: sup %.1e", std::max(b1.sup_norm, b2.sup_norm)));

    const LogisticProblem above(1.2 * lp, 1.0, opt.m_opt, bc, h);
    const auto box_above = sub_super_pair(above, lopts.eigen);
    const auto a1 = solve_logistic(above, lopts);
    const auto a2 = solve_logistic(above, lopts, box_above.sub);
    double diff = 0.0;
    for (int i = 0; i < a1.u.size(); i++)
    {
      diff = std::max(diff, std::abs(a1.u[i] - a2.u[i]));
    }
    v.require(a1.nontrivial && a2.nontrivial && a1.sup_norm <= 1.0 + 1e-10 &&
                  a2.sup_norm <= 1.0 + 1e-10,
              fmt("1.2 lambda+: sup %.4f", a1.sup_norm));
    v.require(diff <= 1e-5, fmt("two starts differ by %.1e", diff));
    const double secs = seconds_since(t0);
    v.require(secs < 300.0, fmt("%.1fs < 300s", secs));
    return {"survival threshold matches lambda+ within 5%", v.pass, v.detail};
  }

  Check mu_sign()
  {
    const auto &opt = logistic_weight();
    const auto bc = BoundaryCondition::dirichlet();
    const AnisotropyH h(2, 1, 2);
    const double hi = mu_plus(1.5 * opt.Lambda, opt.m_opt, bc, h, ctx.base.solver).mu;
    const double lo = mu_plus(0.5 * opt.Lambda, opt.m_opt, bc, h, ctx.base.solver).mu;
    Verdict v;
    v.require(hi < 0.0, fmt("mu+(1.5 lambda+) = %.6g", hi));
    v.require(lo >= -1e-8, fmt("mu+(0.5 lambda+) = %.6g", lo));
    return {"mu+ changes sign at lambda+", v.pass, v.detail};
  }

  Check run(const std::string &name)
  {
    Check c;
    if (name == "analytic-oracle") c = analytic_oracle(ctx);
    else if (name == "dense-pencil") c = dense_pencil(ctx);
    else if (name == "bang-bang") c = bang_bang();
    else if (name == "dirichlet-localization") c = dirichlet_localization();
    else if (name == "neumann-localization") c = neumann_localization();
    else if (name == "lambda-symmetry") c = lambda_symmetry();
    else if (name == "eigenfunction-structure") c = structure();
    else if (name == "polya") c = polya();
    else if (name == "survival-threshold") c = survival_threshold();
    else if (name == "mu-sign") c = mu_sign();
    else throw std::invalid_argument("unknown verification case '" + name + "'");
    const auto &names = verify_case_names();
    const auto index = std::find(names.begin(), names.end(), name) - names.begin() + 1;
    c.name = std::to_string(index) + " " + name + ": " + c.name;
    return c;
  }
};

}  // namespace

const std::vector<std::string> &verify_case_names()
{
  static const std::vector<std::string> names = {
      "analytic-oracle",    "dense-pencil",     "bang-bang",
      "dirichlet-localization", "neumann-localization", "lambda-symmetry",
      "eigenfunction-structure", "polya",       "survival-threshold",
      "mu-sign"};
  return names;
}

Check verify_case(const std::string &name, VerifyLevel level, const RunConfig &base)
{
  Battery battery{{level, base}, {}, std::nullopt};
  return battery.run(name);
}

RunReport verify_suite(VerifyLevel level, const RunConfig &base)
{
  Battery battery{{level, base}, {}, std::nullopt};
  RunReport rep;
  const auto &names = verify_case_names();
  for (std::size_t i = 0; i < names.size(); i++)
  {
    try
    {
      rep.checks.push_back(battery.run(names[i]));
    }
    catch (const std::exception &e)
    {
      rep.checks.push_back({std::to_string(i + 1) + " " + names[i], false,
                            std::string("error: ") + e.what()});
    }
  }
  rep.results = {{"level", level == VerifyLevel::Full ? "full" : "quick"},
                 {"criteria", rep.checks.size()}};
  return rep;
}

}  // namespace anisopt
