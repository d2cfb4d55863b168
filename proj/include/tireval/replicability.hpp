#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tireval/metrics.hpp"
#include "tireval/trec_io.hpp"

namespace tireval {

// Topic-aligned per-topic score differences system - pivot for one
// evaluation environment and one measure.
struct DeltaVector {
  std::vector<std::string> topics;
  std::vector<double> values;

  double mean() const;
};

// ARP difference between two evaluation environments (EE1 minus EE2).
double result_delta(double arp_ee1, double arp_ee2);

// Per-topic score differences system - pivot over the core topics, in core
// topic order. Throws ValidationError naming the topic if either table
// lacks one.
DeltaVector per_topic_deltas(const ScoreTable& system_scores, const ScoreTable& pivot_scores,
                             std::span<const std::string> core_topics, const MeasureId& measure);

// Ratio of mean per-topic improvements, EE2 over EE1. The vectors may
// differ in length; each mean uses its own denominator. Undefined (nullopt)
// when the EE1 mean is zero.
std::optional<double> effect_ratio(const DeltaVector& deltas_ee2, const DeltaVector& deltas_ee1);

// Mean relative gain of the system over the pivot within one EE:
// mean(system - pivot) / mean(pivot) over the core topics. Undefined when
// the pivot mean is zero.
std::optional<double> relative_improvement(const ScoreTable& system_scores,
                                           const ScoreTable& pivot_scores,
                                           std::span<const std::string> core_topics,
                                           const MeasureId& measure);

// RI - RI'; undefined if either side is.
std::optional<double> delta_ri(std::optional<double> ri, std::optional<double> ri_prime);

enum class HarmonizeMode { ById, ByText };

// Alignment of core topics across query sets. Each entry maps one key
// (topic id or normalized query text) to one topic id per input set.
struct TopicAlignment {
  struct Entry {
    std::string key;
    std::vector<std::string> ids;  // ids[i] belongs to input set i
  };
  std::vector<std::string> set_labels;
  std::vector<Entry> entries;  // ordered lexicographically by key
  std::vector<std::string> warnings;

  std::vector<std::string> ids_for(std::size_t set_index) const;
  std::vector<std::pair<std::string, std::string>> pairs(std::size_t first,
                                                         std::size_t second) const;
};

// Core topics shared by all query sets. By-text mode matches normalized
// query strings (lowercased, whitespace collapsed); duplicate texts within
// one set resolve to the lexicographically smallest topic id with a
// warning. Throws EmptyResultError when the intersection is empty.
TopicAlignment core_topics(std::span<const QuerySet> query_sets, HarmonizeMode mode);

// Everything needed to compare a (pivot, system) pair across two EEs.
// core_topics holds (EE1 id, EE2 id) pairs; both sides must be covered by
// the respective score tables.
struct EEPair {
  std::string ee1_label;
  std::string ee2_label;
  ScoreTable pivot_ee1;
  ScoreTable pivot_ee2;
  ScoreTable system_ee1;
  ScoreTable system_ee2;
  std::vector<std::pair<std::string, std::string>> core_topics;
};

struct MeasureReplication {
  double arp_ee1 = 0.0;  // system ARP over core topics, EE1
  double arp_ee2 = 0.0;
  double re_delta = 0.0;
  std::optional<double> er;
  std::optional<double> ri;
  std::optional<double> ri_prime;
  std::optional<double> delta_ri;
  double p_value = 1.0;  // unpaired test, system scores EE1 vs EE2
};

struct ReplicabilityReport {
  std::string system_tag;
  std::string pivot_tag;
  std::string ee1_label;
  std::string ee2_label;
  std::vector<std::pair<MeasureId, MeasureReplication>> measures;
};

// Assembles ReDelta, ER, RI, RI', DeltaRI and the unpaired p-value per
// measure over the core topics. When the system equals the pivot on every
// core topic in both EEs the row is definitional: ER = 1, DeltaRI = 0,
// p = 1.
ReplicabilityReport replicability_report(const EEPair& pair, std::span<const MeasureId> measures,
                                         bool welch = false);

// Per-core-topic (EE1 score - EE2 score) for one system, sorted by delta
// descending (ties by EE1 topic id). Keys are the EE1-side topic ids.
std::vector<std::pair<std::string, double>> topic_drift(
    const ScoreTable& system_table_ee1, const ScoreTable& system_table_ee2,
    std::span<const std::pair<std::string, std::string>> core_topics, const MeasureId& measure);

}  // namespace tireval
