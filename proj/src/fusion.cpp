#include "tireval/fusion.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "tireval/errors.hpp"
#include "tireval/numeric.hpp"

namespace tireval {

Run rrf_fuse(std::span<const Run> runs, const FusionConfig& config) {
  if (runs.size() < 2) {
    throw std::invalid_argument("fusion needs at least two runs");
  }
  if (!(config.k > 0.0)) {
    throw std::invalid_argument("fusion constant k must be positive");
  }
  if (config.depth < 1) {
    throw std::invalid_argument("fusion depth must be positive");
  }

  // Collect each document's ranks across runs, then sum the reciprocal
  // contributions from the sorted rank list. Summing in sorted order makes
  // the fused score bit-identical no matter how the input runs were
  // ordered.
  std::map<std::string, std::map<std::string, std::vector<int>>> ranks_by_topic;
  for (const auto& run : runs) {
    for (const auto& [topic, entries] : run.topics) {
      auto& doc_ranks = ranks_by_topic[topic];
      const auto limit =
          std::min<std::size_t>(entries.size(), static_cast<std::size_t>(config.depth));
      for (std::size_t i = 0; i < limit; ++i) {
        doc_ranks[entries[i].doc_id].push_back(static_cast<int>(i) + 1);
      }
    }
  }

  Run fused;
  fused.tag = config.tag;
  for (auto& [topic, doc_ranks] : ranks_by_topic) {
    auto& entries = fused.topics[topic];
    entries.reserve(doc_ranks.size());
    for (auto& [doc_id, ranks] : doc_ranks) {
      std::sort(ranks.begin(), ranks.end());
      std::vector<double> terms;
      terms.reserve(ranks.size());
      for (const int rank : ranks) {
        terms.push_back(1.0 / (config.k + rank));
      }
      entries.push_back({doc_id, compensated_sum(terms), 0});
    }
  }
  canonicalize(fused);
  for (auto& [topic, entries] : fused.topics) {
    if (entries.size() > static_cast<std::size_t>(config.depth)) {
      entries.resize(static_cast<std::size_t>(config.depth));
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
      entries[i].parsed_rank = static_cast<int>(i) + 1;
    }
  }
  return fused;
}

SweepResult rrf_sweep(std::span<const Run> runs, const Qrels& qrels, const MeasureId& measure,
                      std::span<const double> candidate_ks, const FusionConfig& base) {
  if (candidate_ks.empty()) {
    throw std::invalid_argument("sweep needs at least one candidate k");
  }
  std::vector<double> ks(candidate_ks.begin(), candidate_ks.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  SweepResult result;
  result.points.reserve(ks.size());
  const MeasureId measures[] = {measure};
  // Strict > keeps the smallest k on ties because ks are ascending.
  bool first = true;
  double best_arp = 0.0;
  for (const double k : ks) {
    FusionConfig config = base;
    config.k = k;
    const Run fused = rrf_fuse(runs, config);
    ScoreTable table = evaluate(fused, qrels, measures);
    const double score = arp(table, measure);
    result.points.push_back({k, score});
    if (first || score > best_arp) {
      first = false;
      best_arp = score;
      result.best_k = k;
      result.best_table = std::move(table);
    }
  }
  return result;
}

}  // namespace tireval
