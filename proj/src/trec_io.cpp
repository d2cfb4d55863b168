#include "tireval/trec_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "tireval/errors.hpp"
#include "tireval/numeric.hpp"

namespace tireval {

namespace {

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

double parse_score(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw ParseError("unparseable score '" + std::string(field) + "'", line_no);
  }
  if (std::isnan(value)) {
    throw ParseError("score is NaN", line_no);
  }
  return value;
}

template <typename Int>
Int parse_int(std::string_view field, const char* what, std::size_t line_no) {
  Int value{};
  auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw ParseError(std::string("unparseable ") + what + " '" + std::string(field) + "'",
                     line_no);
  }
  return value;
}

void warn(std::vector<std::string>* warnings, std::string message) {
  if (warnings) warnings->push_back(std::move(message));
}

}  // namespace

void canonicalize(Run& run) {
  for (auto& [topic, entries] : run.topics) {
    std::sort(entries.begin(), entries.end(), [](const RunEntry& a, const RunEntry& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.doc_id > b.doc_id;
    });
  }
}

Run parse_run(std::istream& in, std::vector<std::string>* warnings) {
  Run run;
  std::map<std::string, std::set<std::string>> seen;
  std::vector<std::string> duplicates;
  std::string raw;
  std::size_t line_no = 0;
  bool have_tag = false;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_cr(raw);
    if (is_blank(line)) continue;
    auto fields = split_whitespace(line);
    if (fields.size() != 6) {
      throw ParseError("expected 6 fields, got " + std::to_string(fields.size()), line_no);
    }
    RunEntry entry;
    entry.doc_id = std::string(fields[2]);
    entry.parsed_rank = parse_int<int>(fields[3], "rank", line_no);
    entry.score = parse_score(fields[4], line_no);

    std::string topic(fields[0]);
    std::string tag(fields[5]);
    if (!have_tag) {
      run.tag = tag;
      have_tag = true;
    } else if (tag != run.tag) {
      warn(warnings, "line " + std::to_string(line_no) + ": tag '" + tag +
                         "' differs from first tag '" + run.tag + "', keeping first");
    }
    if (!seen[topic].insert(entry.doc_id).second) {
      duplicates.push_back(topic + "/" + entry.doc_id);
      continue;
    }
    run.topics[topic].push_back(std::move(entry));
  }

  if (!duplicates.empty()) {
    std::string msg = "duplicate (topic, doc) pairs:";
    for (const auto& d : duplicates) msg += " " + d;
    throw ValidationError(msg);
  }
  canonicalize(run);
  return run;
}

Qrels parse_qrels(std::istream& in, std::vector<std::string>* warnings) {
  Qrels qrels;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_cr(raw);
    if (is_blank(line)) continue;
    auto fields = split_whitespace(line);
    if (fields.size() != 4) {
      throw ParseError("expected 4 fields, got " + std::to_string(fields.size()), line_no);
    }
    int grade = parse_int<int>(fields[3], "grade", line_no);
    if (grade < 0) {
      throw ParseError("negative grade " + std::to_string(grade), line_no);
    }
    std::string topic(fields[0]);
    std::string doc(fields[2]);
    auto& per_topic = qrels.judgments[topic];
    auto [it, inserted] = per_topic.emplace(doc, grade);
    if (!inserted) {
      warn(warnings, "line " + std::to_string(line_no) + ": duplicate judgment for (" + topic +
                         ", " + doc + "), keeping grade " + std::to_string(grade));
      it->second = grade;
    }
  }
  return qrels;
}

QuerySet parse_queries(std::istream& in, const std::string& ee_label) {
  QuerySet set;
  set.ee_label = ee_label;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_cr(raw);
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    std::string topic(line.substr(0, tab == std::string_view::npos ? line.size() : tab));
    std::string text(tab == std::string_view::npos ? std::string_view{} : line.substr(tab + 1));
    if (topic.empty()) {
      throw ParseError("empty topic id", line_no);
    }
    if (!set.queries.emplace(std::move(topic), std::move(text)).second) {
      throw ValidationError("duplicate topic id '" + std::string(line.substr(0, tab)) +
                            "' in query file");
    }
  }
  return set;
}

CorpusManifest parse_manifest(std::istream& in, const std::string& ee_label, LengthUnit unit) {
  CorpusManifest manifest;
  manifest.ee_label = ee_label;
  manifest.unit = unit;
  std::set<std::string> ids;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_cr(raw);
    if (line.empty()) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 3) {
      throw ParseError("expected 3 tab-separated fields, got " + std::to_string(fields.size()),
                       line_no);
    }
    ManifestRecord record;
    record.doc_id = std::string(fields[0]);
    record.url = std::string(fields[1]);
    record.length = parse_int<std::uint64_t>(fields[2], "length", line_no);
    if (!ids.insert(record.doc_id).second) {
      throw ValidationError("duplicate doc id '" + record.doc_id + "' in manifest");
    }
    manifest.records.push_back(std::move(record));
  }
  return manifest;
}

void write_run(const Run& run, std::ostream& out) {
  for (const auto& [topic, entries] : run.topics) {
    int rank = 0;
    for (const auto& entry : entries) {
      ++rank;
      out << topic << " Q0 " << entry.doc_id << ' ' << rank << ' '
          << shortest_double(entry.score) << ' ' << run.tag << '\n';
    }
  }
  if (!out) {
    throw Error("failed writing run output");
  }
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open file: " + path);
  }
  return in;
}

template <typename Fn>
auto with_file(const std::string& path, Fn&& fn) {
  auto in = open_or_throw(path);
  try {
    return fn(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": ", e);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace

Run parse_run_file(const std::string& path, std::vector<std::string>* warnings) {
  return with_file(path, [&](std::istream& in) { return parse_run(in, warnings); });
}

Qrels parse_qrels_file(const std::string& path, std::vector<std::string>* warnings) {
  return with_file(path, [&](std::istream& in) { return parse_qrels(in, warnings); });
}

QuerySet parse_queries_file(const std::string& path, const std::string& ee_label) {
  return with_file(path, [&](std::istream& in) { return parse_queries(in, ee_label); });
}

CorpusManifest parse_manifest_file(const std::string& path, const std::string& ee_label,
                                   LengthUnit unit) {
  return with_file(path, [&](std::istream& in) { return parse_manifest(in, ee_label, unit); });
}

void write_run_file(const Run& run, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open file for writing: " + path);
  }
  write_run(run, out);
}

}  // namespace tireval
