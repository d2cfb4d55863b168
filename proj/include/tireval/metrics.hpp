#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tireval/trec_io.hpp"

namespace tireval {

enum class MeasureKind { Map, Bpref, ReciprocalRank, Precision, Ndcg };

// A measure plus optional cutoff. Precision always carries a cutoff,
// nDCG may, the others never do.
struct MeasureId {
  MeasureKind kind = MeasureKind::Map;
  std::optional<int> cutoff;

  auto operator<=>(const MeasureId&) const = default;

  // Display name: "MAP", "Bpref", "RR", "P@20", "nDCG", "nDCG@20".
  std::string name() const;

  // Parses "map", "bpref", "rr", "p@20", "ndcg", "ndcg@20" (case-insensitive).
  static MeasureId parse(std::string_view spec);

  // MAP, Bpref, RR, P@20, nDCG, nDCG@20.
  static std::vector<MeasureId> default_set();
};

using TopicJudgments = std::map<std::string, int>;

// Per-topic scores for one run on one evaluation environment.
// evaluated_topics is the sorted topic set of the qrels, not of the run.
struct ScoreTable {
  std::string run_tag;
  std::string ee_label;
  std::vector<std::string> evaluated_topics;
  std::map<MeasureId, std::map<std::string, double>> scores;

  // Throws ValidationError if the (measure, topic) cell is absent.
  double score(const MeasureId& measure, const std::string& topic) const;
  bool has_topic(const MeasureId& measure, const std::string& topic) const;
};

// All measure functions binarize with grade >= 1 where binary relevance is
// needed and treat unjudged documents as not relevant. Rankings must be
// canonical (see canonicalize()).

// Relevant docs among the first k retrieved, divided by k. The denominator
// stays k even for rankings shorter than k.
double precision_at_k(std::span<const RunEntry> ranking, const TopicJudgments& judgments, int k);

// Mean of precision at each rank holding a relevant document, divided by
// the number of judged-relevant documents R; 0 if R = 0.
double average_precision(std::span<const RunEntry> ranking, const TopicJudgments& judgments);

// 1/rank of the first relevant retrieved document; 0 if none.
double reciprocal_rank(std::span<const RunEntry> ranking, const TopicJudgments& judgments);

// Gain = raw grade, discount 1/log2(rank+1). The ideal DCG uses the qrels
// grades sorted descending, truncated at the cutoff. 0 if the ideal DCG is 0.
double ndcg(std::span<const RunEntry> ranking, const TopicJudgments& judgments,
            std::optional<int> cutoff = std::nullopt);

// Binary preference over judged documents only. With R judged-relevant and
// N judged-nonrelevant documents, each retrieved relevant doc r contributes
// 1 - min(#judged-nonrelevant above r, min(R,N)) / min(R,N); the sum is
// divided by R. 0 if R = 0; if N = 0 every retrieved relevant doc counts 1.
double bpref(std::span<const RunEntry> ranking, const TopicJudgments& judgments);

// Scores every topic in the qrels on every measure. Topics missing from the
// run score 0; run topics absent from the qrels are ignored. Throws
// ValidationError on empty qrels.
ScoreTable evaluate(const Run& run, const Qrels& qrels, std::span<const MeasureId> measures);

// Average retrieval performance: mean per-topic score over the table's
// evaluated topics, or over an explicit subset. Throws on an empty set.
double arp(const ScoreTable& table, const MeasureId& measure);
double arp(const ScoreTable& table, const MeasureId& measure,
           std::span<const std::string> topic_subset);

}  // namespace tireval
