#include "tireval/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "tireval/errors.hpp"

namespace tireval {

std::string normalize_url(const std::string& url) {
  std::string out = url;
  // Host ends at the first path/query/fragment delimiter after "://".
  const std::size_t scheme_end = out.find("://");
  std::size_t host_end =
      out.find_first_of("/?#", scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (host_end == std::string::npos) {
    host_end = out.size();
  }
  for (std::size_t i = 0; i < host_end; ++i) {
    out[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[i])));
  }
  while (out.size() > host_end && out.back() == '/') {
    out.pop_back();
  }
  return out;
}

std::size_t token_count(const std::string& text) {
  std::size_t count = 0;
  bool in_token = false;
  for (const char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      ++count;
    }
  }
  return count;
}

namespace {

// normalized URL -> largest content length seen for it.
std::map<std::string, std::uint64_t> collapse_by_url(const CorpusManifest& manifest,
                                                     std::vector<std::string>* warnings) {
  std::map<std::string, std::uint64_t> lengths;
  std::set<std::string> collapsed;
  for (const auto& record : manifest.records) {
    const std::string url = normalize_url(record.url);
    auto [it, inserted] = lengths.try_emplace(url, record.length);
    if (!inserted) {
      it->second = std::max(it->second, record.length);
      if (warnings != nullptr && collapsed.insert(url).second) {
        warnings->push_back(manifest.ee_label + ": several documents share URL " + url +
                            "; keeping the largest length");
      }
    }
  }
  return lengths;
}

void add_length(LengthSummary& summary, std::uint64_t length) {
  if (summary.count == 0) {
    summary.min = length;
    summary.max = length;
  } else {
    summary.min = std::min(summary.min, length);
    summary.max = std::max(summary.max, length);
  }
  ++summary.count;
  summary.total += length;
}

void finish(LengthSummary& summary) {
  if (summary.count > 0) {
    summary.mean = static_cast<double>(summary.total) / static_cast<double>(summary.count);
  }
}

}  // namespace

EvolutionStats diff_corpora(const CorpusManifest& ee1, const CorpusManifest& ee2,
                            std::vector<std::string>* warnings) {
  if (ee1.unit != ee2.unit) {
    throw ValidationError("manifests measure length in different units");
  }
  const auto lengths_ee1 = collapse_by_url(ee1, warnings);
  const auto lengths_ee2 = collapse_by_url(ee2, warnings);

  EvolutionStats stats;
  stats.ee1_label = ee1.ee_label;
  stats.ee2_label = ee2.ee_label;
  stats.unit = ee1.unit;
  stats.urls_ee1 = lengths_ee1.size();
  stats.urls_ee2 = lengths_ee2.size();

  for (const auto& [url, length_ee1] : lengths_ee1) {
    const auto it = lengths_ee2.find(url);
    if (it == lengths_ee2.end()) {
      ++stats.removed;
      continue;
    }
    ++stats.matched_urls;
    if (it->second > length_ee1) {
      ++stats.increased;
    } else if (it->second < length_ee1) {
      ++stats.decreased;
    } else {
      ++stats.unchanged;
    }
  }
  stats.added = lengths_ee2.size() - stats.matched_urls;
  return stats;
}

CollectionStats collection_stats(const CorpusManifest& manifest, const QuerySet& queries,
                                 std::span<const std::string> excluded_topics) {
  const std::set<std::string> excluded(excluded_topics.begin(), excluded_topics.end());
  CollectionStats stats;
  stats.unit = manifest.unit;
  for (const auto& record : manifest.records) {
    add_length(stats.documents, record.length);
  }
  for (const auto& [topic, text] : queries.queries) {
    if (excluded.contains(topic)) {
      ++stats.excluded_queries;
      continue;
    }
    add_length(stats.queries, token_count(text));
  }
  finish(stats.documents);
  finish(stats.queries);
  return stats;
}

QrelsDistribution qrels_distribution(const Qrels& qrels) {
  if (qrels.judgments.empty()) {
    throw std::invalid_argument("qrels are empty");
  }
  QrelsDistribution dist;
  dist.topics = qrels.judgments.size();

  // Grades seen anywhere; every topic then contributes a (possibly zero)
  // count to every grade's distribution.
  std::set<int> grades;
  for (const auto& [topic, docs] : qrels.judgments) {
    for (const auto& [doc, grade] : docs) {
      grades.insert(grade);
    }
  }

  auto add_count = [](CountSummary& summary, std::size_t count, bool first) {
    if (first) {
      summary.min = count;
      summary.max = count;
    } else {
      summary.min = std::min(summary.min, count);
      summary.max = std::max(summary.max, count);
    }
    summary.total += count;
  };

  bool first = true;
  for (const auto& [topic, docs] : qrels.judgments) {
    add_count(dist.overall, docs.size(), first);
    for (const int grade : grades) {
      std::size_t count = 0;
      for (const auto& [doc, g] : docs) {
        count += g == grade ? 1 : 0;
      }
      add_count(dist.per_grade[grade], count, first);
    }
    first = false;
  }
  const auto n = static_cast<double>(dist.topics);
  dist.overall.mean = static_cast<double>(dist.overall.total) / n;
  for (auto& [grade, summary] : dist.per_grade) {
    summary.mean = static_cast<double>(summary.total) / n;
  }
  return dist;
}

}  // namespace tireval
