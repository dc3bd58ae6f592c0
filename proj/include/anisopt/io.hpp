// SPDX-License-Identifier: Apache-2.0

#ifndef ANISOPT_IO_HPP
#define ANISOPT_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace anisopt::io
{

// Columns of equal length, printed with %.17g so that the text is reproducible.
std::string csv(const std::vector<std::string> &header,
                const std::vector<std::vector<double>> &columns);

// Numeric rows of a CSV file. Lines that do not parse as numbers (headers) are skipped.
std::vector<std::vector<double>> read_csv(const std::filesystem::path &path);

void write_file(const std::filesystem::path &path, const std::string &text);

std::string read_file(const std::filesystem::path &path);

struct Series
{
  std::vector<double> x;
  std::vector<double> y;
  std::string label;
};

struct PlotSpec
{
  std::string title;
  std::string xlabel;
  std::string ylabel;
  // Horizontal range drawn as a shaded band, e.g. the optimal set.
  std::optional<std::pair<double, double>> band;
};

// Self-contained SVG line plot.
std::string svg_plot(const std::vector<Series> &series, const PlotSpec &plot);

}  // namespace anisopt::io

#endif  // ANISOPT_IO_HPP
