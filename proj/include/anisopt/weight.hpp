// SPDX-License-Identifier: Apache-2.0

#ifndef ANISOPT_WEIGHT_HPP
#define ANISOPT_WEIGHT_HPP

#include <string>
#include <vector>
#include "anisopt/mesh.hpp"

namespace anisopt
{

// Parameters of the admissible class M: -beta <= m <= 1, |{m > 0}| > 0, int m <= -m0.
struct WeightClassParams
{
  double beta = 1.0;
  double m0 = 0.0;

  // Throws std::invalid_argument unless beta > 0 and m0 lies in (0, beta) for Neumann or
  // (-1, beta) otherwise.
  void check(const BoundaryCondition &bc) const;

  bool operator==(const WeightClassParams &) const = default;
};

// Cell-wise constant weight on a Mesh1D.
class Weight
{
public:
  Weight(const Mesh1D &mesh, std::vector<double> cells, WeightClassParams params);

  static Weight constant(const Mesh1D &mesh, double value, WeightClassParams params = {});

  const Mesh1D &mesh() const { return mesh_; }
  const std::vector<double> &cells() const { return cells_; }
  const WeightClassParams &params() const { return params_; }

  double mass() const;
  double max_positive() const;
  int positive_cell_count() const;

  bool operator==(const Weight &other) const
  {
    return mesh_ == other.mesh_ && cells_ == other.cells_ && params_ == other.params_;
  }

private:
  Mesh1D mesh_;
  std::vector<double> cells_;
  WeightClassParams params_;
};

struct Violation
{
  std::string constraint;
  double margin;  // amount by which the constraint fails, > 0
};

std::vector<Violation> validate(const Weight &m);

// m = 1 on the cells of (c_left, c_left + width), -beta elsewhere. Both ends are rounded to
// whole cells.
Weight bang_bang_from_interval(double c_left, double width, const WeightClassParams &params,
                               const Mesh1D &mesh);

// |D| = (beta - m0) / (1 + beta) on the unit interval.
double optimal_measure(const WeightClassParams &params);

// Number of positive cells used for a target measure: round(target * n).
int bathtub_cell_count(const Mesh1D &mesh, double target_measure);

// Top-k selection of cells by the midpoint value of phi (ties to the lowest index): those
// cells get +1, the rest -beta.
Weight bathtub_step(const GridFunction &phi, const WeightClassParams &params,
                    double target_measure);

// The k-th largest cell midpoint value of phi, i.e. the level t of the selected set.
double bathtub_level(const GridFunction &phi, double target_measure);

// m(1 - x).
Weight reflect_weight(const Weight &m);

}  // namespace anisopt

#endif  // ANISOPT_WEIGHT_HPP
