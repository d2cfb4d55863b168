#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tireval/corpus.hpp"
#include "tireval/fusion.hpp"
#include "tireval/metrics.hpp"
#include "tireval/replicability.hpp"

namespace tireval {

enum class OutputFormat { Tsv, Json, Markdown };

// Accepts tsv, json, markdown (or md), case-insensitively.
OutputFormat parse_format(std::string_view text);

struct OutputSpec {
  OutputFormat format = OutputFormat::Tsv;
  int precision = 4;
};

struct ComparisonRow {
  std::string run_tag;
  bool is_baseline = false;
  std::map<MeasureId, double> arps;
  std::map<MeasureId, double> p_values;   // vs baseline; empty for the baseline row
  std::map<MeasureId, bool> significant;  // after Bonferroni correction
};

struct ComparisonReport {
  std::string baseline_tag;
  double alpha = 0.05;
  std::size_t corrections = 0;  // number of tested systems
  std::vector<MeasureId> measures;
  std::vector<ComparisonRow> rows;  // baseline first, then systems in input order
};

// Paired t-tests of every system against the baseline with Bonferroni
// correction across systems. All tables must cover the same topics.
ComparisonReport compare_systems(std::span<const ScoreTable> tables, std::size_t baseline_index,
                                 std::span<const MeasureId> measures, double alpha);

// Per-topic scores plus the ARP aggregates in one report. TSV uses
// (measure, topic, score) rows with "all" holding the ARP; markdown mirrors
// the topic-by-measure table shape with a final ARP row.
std::string render_evaluation(const ScoreTable& table, std::span<const MeasureId> measures,
                              const OutputSpec& spec);
std::string render_scores(const ScoreTable& table, std::span<const MeasureId> measures,
                          const OutputSpec& spec);
std::string render_arp(const ScoreTable& table, std::span<const MeasureId> measures,
                       const OutputSpec& spec);
std::string render_replicability(const ReplicabilityReport& report, const OutputSpec& spec);
std::string render_comparison(const ComparisonReport& report, const OutputSpec& spec,
                              bool bold_best = false);
std::string render_evolution(const EvolutionStats& stats, const OutputSpec& spec);
std::string render_collection(const CollectionStats& stats, const OutputSpec& spec);
std::string render_qrels(const QrelsDistribution& dist, const OutputSpec& spec);
std::string render_alignment(const TopicAlignment& alignment, const OutputSpec& spec);
std::string render_sweep(const SweepResult& sweep, const OutputSpec& spec);
std::string render_drift(std::span<const std::pair<std::string, double>> drift,
                         const MeasureId& measure, const OutputSpec& spec);

}  // namespace tireval
