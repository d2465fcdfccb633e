#include "eot/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace eot::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) {
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == sep) {
    out.emplace_back();
  }
  return out;
}

double parse_double(const std::string& cell, const std::filesystem::path& path,
                    size_t line_no) {
  try {
    size_t pos = 0;
    const double v = std::stod(cell, &pos);
    while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) {
      ++pos;
    }
    if (pos != cell.size()) {
      throw std::invalid_argument(cell);
    }
    return v;
  } catch (const std::exception&) {
    throw InvalidParameter(path.string() + ":" + std::to_string(line_no) +
                           ": cannot parse '" + cell + "' as a number");
  }
}

std::string strip(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

DiscreteMeasure load_measure_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidParameter("cannot open " + path.string());
  }
  std::string header;
  if (!std::getline(in, header)) {
    throw InvalidParameter(path.string() + ": empty measure file");
  }
  const auto cols = split(strip(header), ',');
  if (cols.size() < 2 || strip(cols.back()) != "weight") {
    throw InvalidParameter(path.string() +
                           ": expected header x1,...,xd,weight");
  }
  const size_t d = cols.size() - 1;

  std::vector<std::vector<double>> rows;
  std::string line;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = strip(line);
    if (trimmed.empty()) {
      continue;
    }
    const auto cells = split(trimmed, ',');
    if (cells.size() != d + 1) {
      throw InvalidParameter(path.string() + ":" + std::to_string(line_no) +
                             ": expected " + std::to_string(d + 1) +
                             " columns, got " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(d + 1);
    for (const auto& cell : cells) {
      row.push_back(parse_double(strip(cell), path, line_no));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw InvalidParameter(path.string() + ": measure has no support points");
  }
  Matrix points(static_cast<Index>(rows.size()), static_cast<Index>(d));
  Vector weights(static_cast<Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < d; ++j) {
      points(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
    weights[static_cast<Index>(i)] = rows[i][d];
  }
  return DiscreteMeasure(std::move(points), std::move(weights));
}

DiscreteMeasure load_measure_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidParameter("cannot open " + path.string());
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(path.string() + ": " + e.what());
  }
  if (!j.contains("points") || !j.contains("weights")) {
    throw InvalidParameter(path.string() +
                           ": JSON measure needs 'points' and 'weights'");
  }
  const auto& pts = j["points"];
  const auto& wts = j["weights"];
  if (!pts.is_array() || !wts.is_array() || pts.empty() ||
      pts.size() != wts.size()) {
    throw InvalidParameter(path.string() + ": points/weights mismatch");
  }
  const size_t d = pts.front().is_array() ? pts.front().size() : 0;
  if (d == 0) {
    throw InvalidParameter(path.string() + ": points must be coordinate arrays");
  }
  Matrix points(static_cast<Index>(pts.size()), static_cast<Index>(d));
  Vector weights(static_cast<Index>(pts.size()));
  try {
    for (size_t i = 0; i < pts.size(); ++i) {
      if (!pts[i].is_array() || pts[i].size() != d) {
        throw InvalidParameter(path.string() + ": ragged point list");
      }
      for (size_t k = 0; k < d; ++k) {
        points(static_cast<Index>(i), static_cast<Index>(k)) =
            pts[i][k].get<double>();
      }
      weights[static_cast<Index>(i)] = wts[i].get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(path.string() + ": " + e.what());
  }
  return DiscreteMeasure(std::move(points), std::move(weights));
}

}  // namespace

DiscreteMeasure load_measure(const std::filesystem::path& path) {
  if (path.extension() == ".json") {
    return load_measure_json(path);
  }
  return load_measure_csv(path);
}

Matrix load_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidParameter("cannot open " + path.string());
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = strip(line);
    if (trimmed.empty()) {
      continue;
    }
    const auto cells = split(trimmed, ',');
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      row.push_back(parse_double(strip(cell), path, line_no));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InvalidParameter(path.string() + ":" + std::to_string(line_no) +
                             ": ragged matrix row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw InvalidParameter(path.string() + ": empty matrix file");
  }
  Matrix m(static_cast<Index>(rows.size()),
           static_cast<Index>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return m;
}

std::string format_double(double v) {
  if (v == 0.0) {
    return "0";  // merge +0 and -0
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Shorten when a smaller precision already round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char candidate[40];
    std::snprintf(candidate, sizeof(candidate), "%.*g", prec, v);
    if (std::strtod(candidate, nullptr) == v) {
      return candidate;
    }
  }
  return buf;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) {
      out += ',';
    }
    out += cells[i];
  }
  out += '\n';
  return out;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot write " + tmp.string());
    }
    out << content;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw Error("failed while writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

void save_measure_csv(const DiscreteMeasure& m,
                      const std::filesystem::path& path) {
  std::string content;
  std::vector<std::string> header;
  for (Index j = 0; j < m.dim(); ++j) {
    header.push_back("x" + std::to_string(j + 1));
  }
  header.emplace_back("weight");
  content += csv_line(header);
  for (Index i = 0; i < m.size(); ++i) {
    std::vector<std::string> cells;
    for (Index j = 0; j < m.dim(); ++j) {
      cells.push_back(format_double(m.points()(i, j)));
    }
    cells.push_back(format_double(m.weights()[i]));
    content += csv_line(cells);
  }
  write_file_atomic(path, content);
}

void save_matrix_csv(const Matrix& m, const std::filesystem::path& path) {
  std::string content;
  for (Index i = 0; i < m.rows(); ++i) {
    std::vector<std::string> cells;
    for (Index j = 0; j < m.cols(); ++j) {
      cells.push_back(format_double(m(i, j)));
    }
    content += csv_line(cells);
  }
  write_file_atomic(path, content);
}

std::string render_line_chart(const std::vector<PlotSeries>& series,
                              const std::string& x_label,
                              const std::string& y_label, bool log_x) {
  constexpr int width = 640;
  constexpr int height = 420;
  constexpr int ml = 70, mr = 150, mt = 20, mb = 50;
  const double min_log = 1e-300;

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      double xv = log_x ? std::log10(std::max(s.x[i], min_log)) : s.x[i];
      if (first) {
        xmin = xmax = xv;
        ymin = ymax = s.y[i];
        first = false;
      } else {
        xmin = std::min(xmin, xv);
        xmax = std::max(xmax, xv);
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
    }
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-12) ymax = ymin + 1.0;

  auto sx = [&](double x) {
    const double v = log_x ? std::log10(std::max(x, min_log)) : x;
    return ml + (v - xmin) / (xmax - xmin) * (width - ml - mr);
  };
  auto sy = [&](double y) {
    return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
  };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                  "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
      << width - mr << "\" y2=\"" << height - mb
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label
      << (log_x ? " (log scale)" : "") << "</text>\n";
  svg << "<text x=\"16\" y=\"" << (mt + height - mb) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
      << (mt + height - mb) / 2 << ")\">" << y_label << "</text>\n";

  // Axis ticks: ends only, enough to read scales off a static figure.
  auto tick = [&](double x, double y, double val, bool on_x) {
    svg << "<text x=\"" << x << "\" y=\"" << y
        << "\" text-anchor=\"middle\" font-size=\"11\">";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", val);
    svg << buf << "</text>\n";
    (void)on_x;
  };
  tick(ml, height - mb + 16, log_x ? std::pow(10, xmin) : xmin, true);
  tick(width - mr, height - mb + 16, log_x ? std::pow(10, xmax) : xmax, true);
  tick(ml - 28, height - mb + 4, ymin, false);
  tick(ml - 28, mt + 8, ymax, false);

  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = palette[si % 6];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i) {
      svg << sx(s.x[i]) << "," << sy(s.y[i]) << " ";
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << width - mr + 8 << "\" y=\"" << mt + 16 + 18 * si
        << "\" font-size=\"12\" fill=\"" << color << "\">" << s.label
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace eot::io
