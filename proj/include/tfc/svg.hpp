#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfc/io.hpp"

namespace tfc::svg {

struct Series {
  std::string name;
  std::vector<double> x, y;
};

struct Plot {
  std::string title, xlabel, ylabel;
  std::vector<Series> series;
  bool log_x = false, log_y = false;
  /// Free-form lines copied into a leading XML comment.
  std::vector<std::string> provenance;
  /// Drawn as a dashed line y = C x^q on log-log axes.
  std::optional<std::pair<double, double>> power_fit;  // (prefactor, exponent)
  std::string annotation;
};

std::string render(const Plot& p);

/// Two positive columns: log-log with a fitted power law.  Otherwise the first
/// column is x and every other column becomes one polyline.
Plot plot_from_table(const io::Table& t, const std::string& source);

}  // namespace tfc::svg
