#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mlsparse/experiments.h"

namespace mlsparse {

struct BoxStats {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

// Quartiles by linear interpolation between order statistics. Throws
// InputError on empty input.
BoxStats box_stats(std::vector<double> values);

enum class PlotKind { kBox, kLine };
enum class GroupBy { kN, kEll, kT };

PlotKind parse_plot_kind(std::string_view text);
GroupBy parse_group_by(std::string_view text);

struct PlotOptions {
  PlotKind kind = PlotKind::kBox;
  GroupBy group_by = GroupBy::kEll;
  // Keep only rows of this subroutine; empty keeps all.
  std::string subroutine;
  std::string title;
};

// Self-contained SVG 1.1 document showing the BU, TD and CMP ratio columns
// per group: min / interquartile range / max boxes, or lines of means.
// Throws InputError when no rows remain.
std::string plot_svg(const std::vector<CsvRecord>& records, const PlotOptions& options);

}  // namespace mlsparse
