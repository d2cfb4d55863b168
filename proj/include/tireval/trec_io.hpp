#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace tireval {

// One retrieved document within a topic. parsed_rank keeps the rank field
// as it appeared in the source file; it is diagnostic only and never used
// for ordering.
struct RunEntry {
  std::string doc_id;
  double score = 0.0;
  int parsed_rank = 0;
};

// A system's ranked result lists, keyed by topic id. After canonicalization
// each topic's entries are ordered by (score descending, doc_id descending)
// and the position defines the rank 1..n.
struct Run {
  std::string tag;
  std::map<std::string, std::vector<RunEntry>> topics;
};

// Re-sorts every topic by (score desc, doc_id desc). Idempotent.
void canonicalize(Run& run);

// Graded relevance judgments: topic -> doc -> grade (0 = not relevant).
struct Qrels {
  std::map<std::string, std::map<std::string, int>> judgments;
};

struct QuerySet {
  std::map<std::string, std::string> queries;  // topic id -> query text
  std::string ee_label;
};

enum class LengthUnit { Chars, Tokens };

struct ManifestRecord {
  std::string doc_id;
  std::string url;
  std::uint64_t length = 0;
};

struct CorpusManifest {
  std::vector<ManifestRecord> records;
  LengthUnit unit = LengthUnit::Chars;
  std::string ee_label;
};

// Parses a TREC run: `<topic> Q0 <doc> <rank> <score> <tag>`, whitespace
// separated, one entry per line. The result is canonicalized; the tag is
// taken from the first line (later tags warn). Duplicate (topic, doc)
// pairs raise ValidationError; malformed lines raise ParseError.
Run parse_run(std::istream& in, std::vector<std::string>* warnings = nullptr);

// Parses qrels: `<topic> <iter> <doc> <grade>`. Later duplicates of a
// (topic, doc) pair override earlier ones with a warning. Negative or
// non-integer grades raise ParseError.
Qrels parse_qrels(std::istream& in, std::vector<std::string>* warnings = nullptr);

// Parses a TSV query file: `<topic_id>\t<query_text>`. Lines without a tab
// yield an empty query text. Duplicate topic ids raise ValidationError.
QuerySet parse_queries(std::istream& in, const std::string& ee_label = "");

// Parses a TSV corpus manifest: `<doc_id>\t<url>\t<length>`. Duplicate doc
// ids and non-integer lengths are errors; an empty stream is a valid empty
// manifest.
CorpusManifest parse_manifest(std::istream& in, const std::string& ee_label = "",
                              LengthUnit unit = LengthUnit::Chars);

// Emits canonical 6-field run lines; parse_run(write_run(r)) reproduces
// r's topics, order, scores, and tag. Scores use the shortest decimal
// representation that round-trips.
void write_run(const Run& run, std::ostream& out);

// Convenience wrappers that open the file and prefix errors with its path.
Run parse_run_file(const std::string& path, std::vector<std::string>* warnings = nullptr);
Qrels parse_qrels_file(const std::string& path, std::vector<std::string>* warnings = nullptr);
QuerySet parse_queries_file(const std::string& path, const std::string& ee_label = "");
CorpusManifest parse_manifest_file(const std::string& path, const std::string& ee_label = "",
                                   LengthUnit unit = LengthUnit::Chars);
void write_run_file(const Run& run, const std::string& path);

}  // namespace tireval
