#include "tireval/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "tireval/errors.hpp"
#include "tireval/numeric.hpp"

namespace tireval {

namespace {

bool is_relevant(const TopicJudgments& judgments, const std::string& doc_id) {
  auto it = judgments.find(doc_id);
  return it != judgments.end() && it->second >= 1;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string MeasureId::name() const {
  switch (kind) {
    case MeasureKind::Map:
      return "MAP";
    case MeasureKind::Bpref:
      return "Bpref";
    case MeasureKind::ReciprocalRank:
      return "RR";
    case MeasureKind::Precision:
      return "P@" + std::to_string(cutoff.value());
    case MeasureKind::Ndcg:
      return cutoff ? "nDCG@" + std::to_string(*cutoff) : "nDCG";
  }
  return "?";
}

MeasureId MeasureId::parse(std::string_view spec) {
  std::string s = lowercase(spec);
  std::optional<int> cutoff;
  if (auto at = s.find('@'); at != std::string::npos) {
    std::string_view num(s.data() + at + 1, s.size() - at - 1);
    int k = 0;
    auto res = std::from_chars(num.data(), num.data() + num.size(), k);
    if (res.ec != std::errc{} || res.ptr != num.data() + num.size() || k < 1) {
      throw std::invalid_argument("bad measure cutoff in '" + std::string(spec) + "'");
    }
    cutoff = k;
    s.resize(at);
  }
  if (s == "map" && !cutoff) return {MeasureKind::Map, std::nullopt};
  if (s == "bpref" && !cutoff) return {MeasureKind::Bpref, std::nullopt};
  if (s == "rr" && !cutoff) return {MeasureKind::ReciprocalRank, std::nullopt};
  if (s == "p" && cutoff) return {MeasureKind::Precision, cutoff};
  if (s == "ndcg") return {MeasureKind::Ndcg, cutoff};
  throw std::invalid_argument("unknown measure '" + std::string(spec) + "'");
}

std::vector<MeasureId> MeasureId::default_set() {
  return {
      {MeasureKind::Map, std::nullopt},    {MeasureKind::Bpref, std::nullopt},
      {MeasureKind::ReciprocalRank, std::nullopt}, {MeasureKind::Precision, 20},
      {MeasureKind::Ndcg, std::nullopt},   {MeasureKind::Ndcg, 20},
  };
}

double ScoreTable::score(const MeasureId& measure, const std::string& topic) const {
  auto m = scores.find(measure);
  if (m == scores.end()) {
    throw ValidationError("measure " + measure.name() + " not present in score table for run '" +
                          run_tag + "'");
  }
  auto t = m->second.find(topic);
  if (t == m->second.end()) {
    throw ValidationError("topic '" + topic + "' not present in score table for run '" + run_tag +
                          "' (measure " + measure.name() + ")");
  }
  return t->second;
}

bool ScoreTable::has_topic(const MeasureId& measure, const std::string& topic) const {
  auto m = scores.find(measure);
  return m != scores.end() && m->second.count(topic) > 0;
}

double precision_at_k(std::span<const RunEntry> ranking, const TopicJudgments& judgments, int k) {
  if (k < 1) {
    throw std::invalid_argument("precision cutoff must be >= 1");
  }
  const std::size_t depth = std::min<std::size_t>(ranking.size(), static_cast<std::size_t>(k));
  std::size_t relevant = 0;
  for (std::size_t i = 0; i < depth; ++i) {
    if (is_relevant(judgments, ranking[i].doc_id)) ++relevant;
  }
  return static_cast<double>(relevant) / static_cast<double>(k);
}

double average_precision(std::span<const RunEntry> ranking, const TopicJudgments& judgments) {
  std::size_t total_relevant = 0;
  for (const auto& [doc, grade] : judgments) {
    if (grade >= 1) ++total_relevant;
  }
  if (total_relevant == 0) return 0.0;
  double sum = 0.0;
  std::size_t relevant_so_far = 0;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (is_relevant(judgments, ranking[i].doc_id)) {
      ++relevant_so_far;
      sum += static_cast<double>(relevant_so_far) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(total_relevant);
}

double reciprocal_rank(std::span<const RunEntry> ranking, const TopicJudgments& judgments) {
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (is_relevant(judgments, ranking[i].doc_id)) {
      return 1.0 / static_cast<double>(i + 1);
    }
  }
  return 0.0;
}

double ndcg(std::span<const RunEntry> ranking, const TopicJudgments& judgments,
            std::optional<int> cutoff) {
  if (cutoff && *cutoff < 1) {
    throw std::invalid_argument("ndcg cutoff must be >= 1");
  }
  std::size_t depth = ranking.size();
  if (cutoff) depth = std::min<std::size_t>(depth, static_cast<std::size_t>(*cutoff));

  double dcg = 0.0;
  for (std::size_t i = 0; i < depth; ++i) {
    auto it = judgments.find(ranking[i].doc_id);
    if (it == judgments.end() || it->second == 0) continue;
    dcg += static_cast<double>(it->second) / std::log2(static_cast<double>(i) + 2.0);
  }

  std::vector<int> grades;
  grades.reserve(judgments.size());
  for (const auto& [doc, grade] : judgments) {
    if (grade > 0) grades.push_back(grade);
  }
  std::sort(grades.begin(), grades.end(), std::greater<>());
  std::size_t ideal_depth = grades.size();
  if (cutoff) ideal_depth = std::min<std::size_t>(ideal_depth, static_cast<std::size_t>(*cutoff));

  double idcg = 0.0;
  for (std::size_t i = 0; i < ideal_depth; ++i) {
    idcg += static_cast<double>(grades[i]) / std::log2(static_cast<double>(i) + 2.0);
  }
  if (idcg == 0.0) return 0.0;
  return dcg / idcg;
}

double bpref(std::span<const RunEntry> ranking, const TopicJudgments& judgments) {
  std::size_t judged_relevant = 0;
  std::size_t judged_nonrelevant = 0;
  for (const auto& [doc, grade] : judgments) {
    if (grade >= 1) {
      ++judged_relevant;
    } else {
      ++judged_nonrelevant;
    }
  }
  if (judged_relevant == 0) return 0.0;

  const double bound =
      static_cast<double>(std::min(judged_relevant, judged_nonrelevant));
  double sum = 0.0;
  std::size_t nonrelevant_above = 0;
  for (const auto& entry : ranking) {
    auto it = judgments.find(entry.doc_id);
    if (it == judgments.end()) continue;  // unjudged docs are skipped entirely
    if (it->second >= 1) {
      if (judged_nonrelevant == 0) {
        sum += 1.0;
      } else {
        const double above = std::min(static_cast<double>(nonrelevant_above), bound);
        sum += 1.0 - above / bound;
      }
    } else {
      ++nonrelevant_above;
    }
  }
  return sum / static_cast<double>(judged_relevant);
}

ScoreTable evaluate(const Run& run, const Qrels& qrels, std::span<const MeasureId> measures) {
  if (qrels.judgments.empty()) {
    throw ValidationError("empty qrels: nothing to evaluate");
  }
  static const std::vector<RunEntry> kEmptyRanking;

  ScoreTable table;
  table.run_tag = run.tag;
  for (const auto& [topic, judgments] : qrels.judgments) {
    table.evaluated_topics.push_back(topic);
    auto run_it = run.topics.find(topic);
    std::span<const RunEntry> ranking =
        run_it != run.topics.end() ? std::span<const RunEntry>(run_it->second)
                                   : std::span<const RunEntry>(kEmptyRanking);
    for (const MeasureId& measure : measures) {
      double value = 0.0;
      switch (measure.kind) {
        case MeasureKind::Map:
          value = average_precision(ranking, judgments);
          break;
        case MeasureKind::Bpref:
          value = bpref(ranking, judgments);
          break;
        case MeasureKind::ReciprocalRank:
          value = reciprocal_rank(ranking, judgments);
          break;
        case MeasureKind::Precision:
          value = precision_at_k(ranking, judgments, measure.cutoff.value());
          break;
        case MeasureKind::Ndcg:
          value = ndcg(ranking, judgments, measure.cutoff);
          break;
      }
      table.scores[measure][topic] = value;
    }
  }
  return table;
}

double arp(const ScoreTable& table, const MeasureId& measure) {
  return arp(table, measure, table.evaluated_topics);
}

double arp(const ScoreTable& table, const MeasureId& measure,
           std::span<const std::string> topic_subset) {
  if (topic_subset.empty()) {
    throw std::invalid_argument("ARP over an empty topic set");
  }
  std::vector<double> values;
  values.reserve(topic_subset.size());
  for (const auto& topic : topic_subset) {
    values.push_back(table.score(measure, topic));
  }
  return mean(values);
}

}  // namespace tireval
