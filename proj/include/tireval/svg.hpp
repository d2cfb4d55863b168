#pragma once

#include <span>
#include <string>

#include "tireval/corpus.hpp"

namespace tireval {

struct ScatterPoint {
  std::string label;
  double er = 0.0;
  double delta_ri = 0.0;
};

// Scatter of ER (x) against DeltaRI (y) with reference lines at ER = 1 and
// DeltaRI = 0; the crossing marks perfect replication. Output is plain SVG
// markup, byte-stable for equal input.
std::string scatter_svg(std::span<const ScatterPoint> points, const std::string& title = "");

// Horizontal stacked bar of the URL-level corpus diff (removed, decreased,
// unchanged, increased, added) with a legend.
std::string evolution_svg(const EvolutionStats& stats);

}  // namespace tireval
