#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tireval/trec_io.hpp"

namespace tireval {

// Lowercases the scheme and host and trims trailing slashes so that
// snapshots of the same page line up across crawls. Paths and query
// strings keep their case.
std::string normalize_url(const std::string& url);

// Whitespace-separated token count.
std::size_t token_count(const std::string& text);

struct EvolutionStats {
  std::string ee1_label;
  std::string ee2_label;
  LengthUnit unit = LengthUnit::Chars;
  std::size_t urls_ee1 = 0;  // distinct normalized URLs per snapshot
  std::size_t urls_ee2 = 0;
  std::size_t added = 0;         // in EE2 only
  std::size_t removed = 0;       // in EE1 only
  std::size_t matched_urls = 0;  // in both; = increased + decreased + unchanged
  std::size_t increased = 0;
  std::size_t decreased = 0;
  std::size_t unchanged = 0;
};

// Joins two corpus snapshots on normalized URL and classifies every URL as
// added, removed, or matched with grown/shrunk/unchanged content length.
// Records sharing a normalized URL within one snapshot collapse to the
// largest length, with a warning per collapsed URL.
EvolutionStats diff_corpora(const CorpusManifest& ee1, const CorpusManifest& ee2,
                            std::vector<std::string>* warnings = nullptr);

// min/mean/max of a length distribution; all zero when empty.
struct LengthSummary {
  std::size_t count = 0;
  std::uint64_t total = 0;
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  double mean = 0.0;
};

struct CollectionStats {
  LengthSummary documents;  // unit = the manifest's length unit
  LengthSummary queries;    // query length in whitespace tokens
  std::size_t excluded_queries = 0;
  LengthUnit unit = LengthUnit::Chars;
};

// Document and query counts with length statistics. Topics listed in
// excluded_topics are left out of the query statistics (outlier removal)
// but counted in excluded_queries. An empty manifest or query set yields
// zero statistics.
CollectionStats collection_stats(const CorpusManifest& manifest, const QuerySet& queries = {},
                                 std::span<const std::string> excluded_topics = {});

// Per-topic judgment counts for one grade (or for all grades combined).
struct CountSummary {
  std::size_t total = 0;
  std::size_t min = 0;  // over topics
  std::size_t max = 0;
  double mean = 0.0;
};

struct QrelsDistribution {
  std::size_t topics = 0;
  CountSummary overall;                    // judgments per topic, any grade
  std::map<int, CountSummary> per_grade;   // grade -> per-topic counts
};

// Per-topic grade histograms summarized over all topics. A topic without
// judgments of some grade counts as 0 for that grade's distribution.
QrelsDistribution qrels_distribution(const Qrels& qrels);

}  // namespace tireval
