#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "eot/measures.hpp"
#include "eot/types.hpp"

namespace eot::io {

/// Load a measure from CSV (`x1,...,xd,weight` header, one point per row)
/// or JSON ({"points": [[...]], "weights": [...]}); the format is picked by
/// file extension (.json vs anything else).
DiscreteMeasure load_measure(const std::filesystem::path& path);

/// Dense CSV, n rows x m columns, no header.
Matrix load_matrix_csv(const std::filesystem::path& path);

void save_measure_csv(const DiscreteMeasure& m,
                      const std::filesystem::path& path);
void save_matrix_csv(const Matrix& m, const std::filesystem::path& path);

/// Write `content` to `path` atomically (temp file in the same directory,
/// then rename), so failed runs never leave partial files behind.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

/// Shortest round-trip decimal form of a double ("%.17g" trimmed), used for
/// all CSV output so repeated runs are byte-identical.
std::string format_double(double v);

/// One CSV line from cells, joined with commas.
std::string csv_line(const std::vector<std::string>& cells);

/// Minimal static SVG line chart: one polyline per series over shared axes.
/// `log_x` switches the x-axis to log10 (used for epsilon sweeps).
struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string render_line_chart(const std::vector<PlotSeries>& series,
                              const std::string& x_label,
                              const std::string& y_label, bool log_x);

}  // namespace eot::io
