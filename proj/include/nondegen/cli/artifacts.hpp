#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace nondegen::cli {

/// Writes via a temporary sibling file and a rename.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  bool empty() const { return header.empty(); }
};

std::string render_csv(const CsvTable& table);

struct Scatter {
  std::string title;
  std::string x_label = "x";
  std::string y_label = "y";
  std::vector<double> x;
  std::vector<double> y;

  bool empty() const { return x.empty(); }
};

/// Standalone SVG 1.1 scatter plot.
std::string render_svg(const Scatter& plot);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

}  // namespace nondegen::cli
