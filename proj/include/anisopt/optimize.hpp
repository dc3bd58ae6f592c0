// SPDX-License-Identifier: Apache-2.0

#ifndef ANISOPT_OPTIMIZE_HPP
#define ANISOPT_OPTIMIZE_HPP

#include <optional>
#include <utility>
#include <vector>
#include "anisopt/eigen.hpp"

namespace anisopt
{

struct OptimizeOptions
{
  EigenOptions eigen;
  double tol = 1e-10;  // stop when |lambda_{k+1} - lambda_k| < tol * lambda_k
  int max_alternations = 1000;
  // Initial bang-bang intervals, as fractions of the free placement range [0, 1 - |D|].
  // The alternation has no global convergence guarantee, so every start is run and the
  // lowest value kept.
  std::vector<double> start_positions = {0.0, 0.5, 1.0};
};

struct OptimizeResult
{
  double Lambda = 0.0;
  Weight m_opt;
  GridFunction phi;
  double D_left = 0.0;
  double D_right = 0.0;
  std::vector<std::pair<int, double>> history;  // (iteration, lambda) of the kept start
  bool converged = false;
  bool oscillation = false;  // the weight pattern cycled without improvement

  OptimizeResult(const Weight &m, const GridFunction &phi) : m_opt(m), phi(phi) {}
};

// Alternates lambda+(m_k) -> phi_k and m_{k+1} = bathtub_step(phi_k, optimal_measure).
OptimizeResult optimize_weight_plus(const WeightClassParams &params,
                                    const BoundaryCondition &bc, const AnisotropyH &h,
                                    const Mesh1D &mesh, const OptimizeOptions &opts = {});

// Same alternation for lambda-, selecting the sub-level set {phi_- < -t}.
OptimizeResult optimize_weight_minus(const WeightClassParams &params,
                                     const BoundaryCondition &bc, const AnisotropyH &h,
                                     const Mesh1D &mesh, const OptimizeOptions &opts = {});

struct ScanPoint
{
  double c_left = 0.0;
  double lambda = 0.0;
};

struct ScanResult
{
  std::vector<ScanPoint> curve;
  ScanPoint argmin;  // ties go to the smallest c_left
};

// lambda+ of the bang-bang weight of every sampled interval placement of the given width.
// n_positions <= 0 selects n (1 - width). Positions are solved on `threads` workers
// (0 = hardware concurrency); the result does not depend on the thread count.
ScanResult interval_scan(const WeightClassParams &params, const BoundaryCondition &bc,
                         const AnisotropyH &h, const Mesh1D &mesh, double width,
                         int n_positions = 0, const EigenOptions &eigen = {}, int threads = 0);

struct PredictedInterval
{
  double left = 0.0;
  double right = 0.0;
  // Neumann with a == b: both flush placements are optimal.
  std::optional<std::pair<double, double>> alternative;
};

// Closed-form optimal set for Dirichlet and Neumann conditions. Robin is rejected.
PredictedInterval predicted_optimal_interval(const AnisotropyH &h, double width,
                                             const BoundaryCondition &bc);

struct MonotoneReport
{
  int argmax_node = 0;
  double argmax_x = 0.0;
  int sign_changes = 0;        // of the discrete derivative, ignoring sub-noise steps
  int interior_minima = 0;     // descending-then-ascending turns
  bool single_peak = false;
  bool monotone = false;
  bool decreasing = false;
  bool increasing = false;
  bool ok = false;  // single peak, and additionally monotone for Neumann
};

// Shape of a (nonnegative or nonpositive) eigenfunction. Steps below 1e-8 max|phi| count as
// flat.
MonotoneReport check_monotone_structure(const GridFunction &phi, const BoundaryCondition &bc);

struct DerivativeReport
{
  double worst_in_D = 0.0;   // max over adjacent cells in D of u'_{c+1} - u'_c
  double worst_in_Dc = 0.0;  // max over adjacent cells in D^c of u'_c - u'_{c+1}
  bool ok = false;
};

// phi' strictly decreasing across {m > 0} and strictly increasing on {m <= 0}, up to slack.
DerivativeReport check_derivative_structure(const GridFunction &phi, const Weight &m,
                                            double slack = 1e-10);

struct SymmetryReport
{
  double Lambda_plus = 0.0;
  double Lambda_minus = 0.0;
  double relative_gap = 0.0;
  int weight_cells_differing = 0;  // m_+(x) against m_-(1-x)
  int weight_shift_cells = 0;      // offset between the two positive runs
  double phi_distance = 0.0;       // sup |phi_+(x) + phi_-(1-x)|
};

SymmetryReport check_lambda_symmetry(const WeightClassParams &params,
                                     const BoundaryCondition &bc, const AnisotropyH &h,
                                     const Mesh1D &mesh, const OptimizeOptions &opts = {});

}  // namespace anisopt

#endif  // ANISOPT_OPTIMIZE_HPP
