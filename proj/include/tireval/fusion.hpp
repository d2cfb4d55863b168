#pragma once

#include <span>
#include <string>
#include <vector>

#include "tireval/metrics.hpp"
#include "tireval/trec_io.hpp"

namespace tireval {

struct FusionConfig {
  double k = 60.0;   // rank constant in 1 / (k + rank); must be > 0
  int depth = 1000;  // input ranks beyond this are ignored; output is cut here too
  std::string tag = "rrf";
};

// Reciprocal rank fusion over two or more canonicalized runs. A document's
// fused score is the sum of 1 / (k + rank) over every run that retrieves
// it within depth. The result is independent of the order of the input
// runs.
Run rrf_fuse(std::span<const Run> runs, const FusionConfig& config = {});

struct SweepPoint {
  double k = 0.0;
  double arp = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;  // one per candidate k, ascending by k
  double best_k = 0.0;
  ScoreTable best_table;  // evaluation of the fusion at best_k
};

// Fuses with every candidate k and scores the fusion against the qrels.
// The best k maximizes the ARP of the given measure; ties go to the
// smallest k.
SweepResult rrf_sweep(std::span<const Run> runs, const Qrels& qrels, const MeasureId& measure,
                      std::span<const double> candidate_ks, const FusionConfig& base = {});

}  // namespace tireval
