// SPDX-License-Identifier: Apache-2.0

#include "anisopt/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace anisopt::io
{

namespace
{

std::string number(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string coord(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string &s)
{
  std::string out;
  for (char c : s)
  {
    switch (c)
    {
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '&': out += "&amp;"; break;
    default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string csv(const std::vector<std::string> &header,
                const std::vector<std::vector<double>> &columns)
{
  if (header.size() != columns.size())
  {
    throw std::invalid_argument("csv: header and column counts differ");
  }
  std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto &c : columns)
  {
    if (c.size() != rows)
    {
      throw std::invalid_argument("csv: columns have different lengths");
    }
  }
  std::string out;
  for (std::size_t j = 0; j < header.size(); j++)
  {
    out += (j ? "," : "") + header[j];
  }
  out += '\n';
  for (std::size_t i = 0; i < rows; i++)
  {
    for (std::size_t j = 0; j < columns.size(); j++)
    {
      out += (j ? "," : "") + number(columns[j][i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path &path)
{
  std::istringstream in(read_file(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line))
  {
    if (!line.empty() && line.back() == '\r')
    {
      line.pop_back();
    }
    if (line.find_first_not_of(" \t") == std::string::npos)
    {
      continue;
    }
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    bool numeric = true;
    while (std::getline(fields, field, ','))
    {
      try
      {
        std::size_t used = 0;
        row.push_back(std::stod(field, &used));
        if (field.find_first_not_of(" \t", used) != std::string::npos)
        {
          numeric = false;
        }
      }
      catch (const std::exception &)
      {
        numeric = false;
      }
    }
    if (!numeric)
    {
      if (rows.empty())
      {
        continue;  // header
      }
      throw std::runtime_error(path.string() + ": non-numeric row '" + line + "'");
    }
    if (!rows.empty() && row.size() != rows.front().size())
    {
      throw std::runtime_error(path.string() + ": ragged rows");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty())
  {
    throw std::runtime_error(path.string() + ": no numeric rows");
  }
  return rows;
}

void write_file(const std::filesystem::path &path, const std::string &text)
{
  if (path.has_parent_path())
  {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out)
  {
    throw std::runtime_error("cannot write " + path.string());
  }
}

std::string read_file(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw std::runtime_error("cannot read " + path.string());
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string svg_plot(const std::vector<Series> &series, const PlotSpec &plot)
{
  const double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto &s : series)
  {
    for (std::size_t i = 0; i < s.x.size(); i++)
    {
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!(x0 < x1))
  {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (!(y0 < y1))
  {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (plot.band)
  {
    const double a = px(std::max(plot.band->first, x0)), b = px(std::min(plot.band->second, x1));
    out << "<rect x=\"" << coord(a) << "\" y=\"" << T << "\" width=\"" << coord(b - a)
        << "\" height=\"" << H - T - B << "\" fill=\"#cde6cd\"/>\n";
  }
  out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\""
      << H - T - B << "\" fill=\"none\" stroke=\"black\"/>\n";
  static const char *colors[] = {"#1f4e9c", "#b5402a", "#2f7d32", "#7a3d9a"};
  for (std::size_t k = 0; k < series.size(); k++)
  {
    out << "<polyline fill=\"none\" stroke=\"" << colors[k % 4] << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[k].x.size(); i++)
    {
      out << (i ? " " : "") << coord(px(series[k].x[i])) << ',' << coord(py(series[k].y[i]));
    }
    out << "\"/>\n";
    if (!series[k].label.empty())
    {
      out << "<text x=\"" << W - R - 150 << "\" y=\"" << T + 16 + 16 * k << "\" fill=\""
          << colors[k % 4] << "\">" << escape(series[k].label) << "</text>\n";
    }
  }
  char tick[4][32];
  std::snprintf(tick[0], 32, "%.4g", x0);
  std::snprintf(tick[1], 32, "%.4g", x1);
  std::snprintf(tick[2], 32, "%.4g", y0);
  std::snprintf(tick[3], 32, "%.4g", y1);
  out << "<text x=\"" << L << "\" y=\"" << H - B + 16 << "\">" << tick[0] << "</text>\n";
  out << "<text x=\"" << W - R << "\" y=\"" << H - B + 16 << "\" text-anchor=\"end\">" << tick[1]
      << "</text>\n";
  out << "<text x=\"" << L - 6 << "\" y=\"" << H - B << "\" text-anchor=\"end\">" << tick[2]
      << "</text>\n";
  out << "<text x=\"" << L - 6 << "\" y=\"" << T + 10 << "\" text-anchor=\"end\">" << tick[3]
      << "</text>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"" << T - 14 << "\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(plot.title) << "</text>\n";
  out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
      << escape(plot.xlabel) << "</text>\n";
  out << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (T + H - B) / 2 << ")\">" << escape(plot.ylabel) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace anisopt::io
