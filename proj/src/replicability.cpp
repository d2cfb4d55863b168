#include "tireval/replicability.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

#include "tireval/errors.hpp"
#include "tireval/numeric.hpp"
#include "tireval/stats.hpp"

namespace tireval {

double DeltaVector::mean() const {
  if (values.empty()) {
    throw std::invalid_argument("delta vector is empty");
  }
  return tireval::mean(values);
}

double result_delta(double arp_ee1, double arp_ee2) { return arp_ee1 - arp_ee2; }

DeltaVector per_topic_deltas(const ScoreTable& system_scores, const ScoreTable& pivot_scores,
                             std::span<const std::string> core_topics, const MeasureId& measure) {
  DeltaVector deltas;
  deltas.topics.reserve(core_topics.size());
  deltas.values.reserve(core_topics.size());
  for (const auto& topic : core_topics) {
    deltas.topics.push_back(topic);
    deltas.values.push_back(system_scores.score(measure, topic) -
                            pivot_scores.score(measure, topic));
  }
  return deltas;
}

std::optional<double> effect_ratio(const DeltaVector& deltas_ee2, const DeltaVector& deltas_ee1) {
  if (deltas_ee1.values.empty() || deltas_ee2.values.empty()) {
    throw std::invalid_argument("effect ratio needs non-empty delta vectors");
  }
  const double denom = deltas_ee1.mean();
  if (denom == 0.0) {
    return std::nullopt;
  }
  return deltas_ee2.mean() / denom;
}

std::optional<double> relative_improvement(const ScoreTable& system_scores,
                                           const ScoreTable& pivot_scores,
                                           std::span<const std::string> core_topics,
                                           const MeasureId& measure) {
  if (core_topics.empty()) {
    throw std::invalid_argument("relative improvement needs at least one topic");
  }
  std::vector<double> deltas;
  std::vector<double> pivot_values;
  deltas.reserve(core_topics.size());
  pivot_values.reserve(core_topics.size());
  for (const auto& topic : core_topics) {
    const double pivot_score = pivot_scores.score(measure, topic);
    deltas.push_back(system_scores.score(measure, topic) - pivot_score);
    pivot_values.push_back(pivot_score);
  }
  const double pivot_mean = mean(pivot_values);
  if (pivot_mean == 0.0) {
    return std::nullopt;
  }
  return mean(deltas) / pivot_mean;
}

std::optional<double> delta_ri(std::optional<double> ri, std::optional<double> ri_prime) {
  if (!ri || !ri_prime) {
    return std::nullopt;
  }
  return *ri - *ri_prime;
}

std::vector<std::string> TopicAlignment::ids_for(std::size_t set_index) const {
  if (set_index >= set_labels.size()) {
    throw std::out_of_range("alignment set index out of range");
  }
  std::vector<std::string> ids;
  ids.reserve(entries.size());
  for (const auto& entry : entries) {
    ids.push_back(entry.ids[set_index]);
  }
  return ids;
}

std::vector<std::pair<std::string, std::string>> TopicAlignment::pairs(std::size_t first,
                                                                       std::size_t second) const {
  if (first >= set_labels.size() || second >= set_labels.size()) {
    throw std::out_of_range("alignment set index out of range");
  }
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(entries.size());
  for (const auto& entry : entries) {
    out.emplace_back(entry.ids[first], entry.ids[second]);
  }
  return out;
}

namespace {

// Lowercase, trim, and collapse runs of whitespace to single spaces so
// that core queries match across formatting differences.
std::string normalize_query_text(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (const char ch : text) {
    const auto uch = static_cast<unsigned char>(ch);
    if (std::isspace(uch)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(uch)));
  }
  return out;
}

// key -> topic id for one query set, resolving duplicate keys to the
// smallest topic id.
std::map<std::string, std::string> keyed_topics(const QuerySet& set, HarmonizeMode mode,
                                                std::vector<std::string>& warnings) {
  std::map<std::string, std::string> keyed;
  for (const auto& [topic, text] : set.queries) {
    std::string key = mode == HarmonizeMode::ById ? topic : normalize_query_text(text);
    auto [it, inserted] = keyed.try_emplace(std::move(key), topic);
    if (!inserted) {
      warnings.push_back("duplicate query text in " + set.ee_label + ": topics " + it->second +
                         " and " + topic + " normalize to \"" + it->first + "\"; keeping " +
                         std::min(it->second, topic));
      it->second = std::min(it->second, topic);
    }
  }
  return keyed;
}

}  // namespace

TopicAlignment core_topics(std::span<const QuerySet> query_sets, HarmonizeMode mode) {
  if (query_sets.size() < 2) {
    throw std::invalid_argument("harmonization needs at least two query sets");
  }
  TopicAlignment alignment;
  std::vector<std::map<std::string, std::string>> keyed;
  keyed.reserve(query_sets.size());
  for (const auto& set : query_sets) {
    alignment.set_labels.push_back(set.ee_label);
    keyed.push_back(keyed_topics(set, mode, alignment.warnings));
  }
  // The first map is ordered, so walking it yields keys lexicographically.
  for (const auto& [key, first_id] : keyed.front()) {
    TopicAlignment::Entry entry{key, {first_id}};
    bool shared = true;
    for (std::size_t i = 1; i < keyed.size(); ++i) {
      const auto it = keyed[i].find(key);
      if (it == keyed[i].end()) {
        shared = false;
        break;
      }
      entry.ids.push_back(it->second);
    }
    if (shared) {
      alignment.entries.push_back(std::move(entry));
    }
  }
  if (alignment.entries.empty()) {
    throw EmptyResultError("no core topics shared by all query sets");
  }
  return alignment;
}

namespace {

std::vector<std::string> side_ids(std::span<const std::pair<std::string, std::string>> pairs,
                                  bool first) {
  std::vector<std::string> ids;
  ids.reserve(pairs.size());
  for (const auto& [ee1_id, ee2_id] : pairs) {
    ids.push_back(first ? ee1_id : ee2_id);
  }
  return ids;
}

}  // namespace

ReplicabilityReport replicability_report(const EEPair& pair, std::span<const MeasureId> measures,
                                         bool welch) {
  if (pair.core_topics.empty()) {
    throw std::invalid_argument("replicability report needs at least one core topic");
  }
  ReplicabilityReport report;
  report.system_tag = pair.system_ee1.run_tag;
  report.pivot_tag = pair.pivot_ee1.run_tag;
  report.ee1_label = pair.ee1_label;
  report.ee2_label = pair.ee2_label;

  const auto ee1_ids = side_ids(pair.core_topics, true);
  const auto ee2_ids = side_ids(pair.core_topics, false);

  for (const auto& measure : measures) {
    MeasureReplication rep;
    rep.arp_ee1 = arp(pair.system_ee1, measure, ee1_ids);
    rep.arp_ee2 = arp(pair.system_ee2, measure, ee2_ids);
    rep.re_delta = result_delta(rep.arp_ee1, rep.arp_ee2);

    const auto deltas_ee1 = per_topic_deltas(pair.system_ee1, pair.pivot_ee1, ee1_ids, measure);
    const auto deltas_ee2 = per_topic_deltas(pair.system_ee2, pair.pivot_ee2, ee2_ids, measure);

    const bool is_pivot_row =
        std::all_of(deltas_ee1.values.begin(), deltas_ee1.values.end(),
                    [](double d) { return d == 0.0; }) &&
        std::all_of(deltas_ee2.values.begin(), deltas_ee2.values.end(),
                    [](double d) { return d == 0.0; });
    if (is_pivot_row) {
      // The system is the pivot itself: replication of a null effect is
      // definitionally perfect.
      rep.er = 1.0;
      rep.ri = std::nullopt;
      rep.ri_prime = std::nullopt;
      rep.delta_ri = 0.0;
      rep.p_value = 1.0;
    } else {
      rep.er = effect_ratio(deltas_ee2, deltas_ee1);
      rep.ri = relative_improvement(pair.system_ee1, pair.pivot_ee1, ee1_ids, measure);
      rep.ri_prime = relative_improvement(pair.system_ee2, pair.pivot_ee2, ee2_ids, measure);
      rep.delta_ri = delta_ri(rep.ri, rep.ri_prime);

      std::vector<double> scores_ee1;
      std::vector<double> scores_ee2;
      scores_ee1.reserve(ee1_ids.size());
      scores_ee2.reserve(ee2_ids.size());
      for (const auto& topic : ee1_ids) {
        scores_ee1.push_back(pair.system_ee1.score(measure, topic));
      }
      for (const auto& topic : ee2_ids) {
        scores_ee2.push_back(pair.system_ee2.score(measure, topic));
      }
      rep.p_value = unpaired_ttest(scores_ee1, scores_ee2, welch);
    }
    report.measures.emplace_back(measure, rep);
  }
  return report;
}

std::vector<std::pair<std::string, double>> topic_drift(
    const ScoreTable& system_table_ee1, const ScoreTable& system_table_ee2,
    std::span<const std::pair<std::string, std::string>> core_topics, const MeasureId& measure) {
  std::vector<std::pair<std::string, double>> drift;
  drift.reserve(core_topics.size());
  for (const auto& [ee1_id, ee2_id] : core_topics) {
    drift.emplace_back(ee1_id, system_table_ee1.score(measure, ee1_id) -
                                   system_table_ee2.score(measure, ee2_id));
  }
  std::sort(drift.begin(), drift.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) {
      return a.second > b.second;
    }
    return a.first < b.first;
  });
  return drift;
}

}  // namespace tireval
