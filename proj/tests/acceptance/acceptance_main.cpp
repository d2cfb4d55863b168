// Acceptance gate: one line per criterion, PASS/FAIL/SKIP, nonzero exit if
// anything failed. Each criterion exercises the library (or the CLI binary)
// against recorded reference values, independent brute-force oracles, or
// algebraic identities that the implementation must satisfy.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "common/oracles.hpp"
#include "reference_tables.hpp"
#include "tireval/corpus.hpp"
#include "tireval/fusion.hpp"
#include "tireval/metrics.hpp"
#include "tireval/replicability.hpp"
#include "tireval/stats.hpp"
#include "tireval/trec_io.hpp"

#ifndef TIREVAL_CLI_PATH
#error "TIREVAL_CLI_PATH must point at the tireval binary"
#endif
#ifndef TIREVAL_FIXTURE_DIR
#error "TIREVAL_FIXTURE_DIR must point at the fixture directory"
#endif

namespace {

using namespace tireval;
using tireval::acceptance::ReferenceRow;

int g_failures = 0;

// Collects sub-check failures so that each criterion still prints exactly
// one line.
struct Check {
  int failed = 0;
  int total = 0;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    ++total;
    if (ok) {
      return;
    }
    ++failed;
    if (detail.size() < 240) {
      if (!detail.empty()) {
        detail += "; ";
      }
      detail += what;
    }
  }
};

void report(int criterion, const std::string& name, const Check& check) {
  if (check.failed == 0) {
    std::cout << "PASS criterion " << criterion << ": " << name << " (" << check.total
              << " checks)\n";
  } else {
    ++g_failures;
    std::cout << "FAIL criterion " << criterion << ": " << name << " (" << check.failed << "/"
              << check.total << " checks failed: " << check.detail << ")\n";
  }
}

void report_skip(int criterion, const std::string& name, const std::string& reason) {
  std::cout << "SKIP criterion " << criterion << ": " << name << " (" << reason << ")\n";
}

std::string fixture(const std::string& name) {
  return std::string(TIREVAL_FIXTURE_DIR) + "/" + name;
}

std::string quoted(const std::string& path) { return "\"" + path + "\""; }

// Runs the CLI and captures (exit code, stdout). stderr is discarded so
// that warnings cannot interleave with the captured report.
std::optional<std::pair<int, std::string>> run_cli(const std::string& args) {
  const std::string command = std::string(TIREVAL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) {
    return std::nullopt;
  }
  std::string output;
  char buffer[4096];
  std::size_t count = 0;
  while ((count = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    output.append(buffer, count);
  }
  const int status = pclose(pipe);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return std::make_pair(code, output);
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return std::nullopt;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

std::string row_name(const ReferenceRow& row) {
  return std::string(row.measure) + "/" + row.system;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// Criterion 1: the four-decimal reference table is internally consistent:
// result_delta over the recorded ARPs reproduces both recorded ReDelta
// columns within 5e-5, in under a second.

void criterion_1() {
  Check check;
  const auto start = std::chrono::steady_clock::now();
  for (const ReferenceRow& row : tireval::acceptance::kCoreTopicsTable) {
    const double st = result_delta(row.arp_wt, row.arp_st);
    const double lt = result_delta(row.arp_wt, row.arp_lt);
    check.expect(std::fabs(st - row.re_delta_st) < 5e-5, row_name(row) + " ST delta");
    check.expect(std::fabs(lt - row.re_delta_lt) < 5e-5, row_name(row) + " LT delta");
  }
  check.expect(elapsed_seconds(start) < 1.0, "runtime exceeded 1s");
  report(1, "recorded core-topic ARPs reproduce their ReDelta columns (5e-5)", check);
}

// ---------------------------------------------------------------------------
// Criterion 2: the three-decimal reference table stays within its rounding
// budget (1.5e-3), and a system identical to the pivot comes out of the
// full replicability pipeline with exactly (ER, DeltaRI, p) = (1, 0, 1).

ScoreTable constant_table(const std::string& tag, const MeasureId& measure,
                          const std::string& topic_prefix, std::size_t topics, double value) {
  ScoreTable table;
  table.run_tag = tag;
  for (std::size_t i = 0; i < topics; ++i) {
    const std::string topic = topic_prefix + std::to_string(i + 1);
    table.evaluated_topics.push_back(topic);
    table.scores[measure][topic] = value;
  }
  return table;
}

void criterion_2() {
  Check check;
  for (const ReferenceRow& row : tireval::acceptance::kAllTopicsTable) {
    const double st = result_delta(row.arp_wt, row.arp_st);
    const double lt = result_delta(row.arp_wt, row.arp_lt);
    check.expect(std::fabs(st - row.re_delta_st) <= 1.5e-3, row_name(row) + " ST delta");
    check.expect(std::fabs(lt - row.re_delta_lt) <= 1.5e-3, row_name(row) + " LT delta");
  }

  // Pivot rows, via the pipeline: BM25 against itself across environments.
  for (const ReferenceRow& row : tireval::acceptance::kAllTopicsTable) {
    if (std::string(row.system) != "BM25") {
      continue;
    }
    const MeasureId measure = MeasureId::parse(row.measure);
    for (const double arp_second : {row.arp_st, row.arp_lt}) {
      EEPair pair;
      pair.ee1_label = "wt";
      pair.ee2_label = "later";
      pair.pivot_ee1 = constant_table("bm25", measure, "t", 10, row.arp_wt);
      pair.pivot_ee2 = constant_table("bm25", measure, "u", 10, arp_second);
      pair.system_ee1 = pair.pivot_ee1;
      pair.system_ee2 = pair.pivot_ee2;
      for (std::size_t i = 1; i <= 10; ++i) {
        pair.core_topics.emplace_back("t" + std::to_string(i), "u" + std::to_string(i));
      }
      const std::vector<MeasureId> measures{measure};
      const ReplicabilityReport rep = replicability_report(pair, measures);
      const MeasureReplication& m = rep.measures.at(0).second;
      check.expect(m.er.has_value() && *m.er == 1.0, row_name(row) + " pivot ER != 1");
      check.expect(m.delta_ri.has_value() && *m.delta_ri == 0.0,
                   row_name(row) + " pivot DeltaRI != 0");
      check.expect(m.p_value == 1.0, row_name(row) + " pivot p != 1");
      check.expect(std::fabs(m.arp_ee1 - row.arp_wt) < 1e-9, row_name(row) + " pivot ARP ee1");
      check.expect(std::fabs(m.arp_ee2 - arp_second) < 1e-9, row_name(row) + " pivot ARP ee2");
    }
  }
  report(2, "recorded all-topic ARPs within 1.5e-3; pivot rows exactly (1, 0, 1)", check);
}

// ---------------------------------------------------------------------------
// Criterion 3: on 500 random topics (up to 20 retrieved documents, graded
// 0/1/2), all six measures agree with an independent brute-force oracle to
// 1e-12, in under ten seconds.

std::vector<RunEntry> entries_of(const oracle::Ranking& ranking) {
  std::vector<RunEntry> entries;
  entries.reserve(ranking.size());
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    entries.push_back({ranking[i].id, ranking[i].score, static_cast<int>(i) + 1});
  }
  return entries;
}

void criterion_3() {
  Check check;
  const auto start = std::chrono::steady_clock::now();
  oracle::Rng rng(0x5eedULL);
  for (int round = 0; round < 500; ++round) {
    const oracle::Topic topic = oracle::random_topic(rng);
    const auto entries = entries_of(topic.ranking);
    const TopicJudgments judgments(topic.judgments.begin(), topic.judgments.end());
    const std::string tag = "round " + std::to_string(round);

    const std::pair<const char*, double> results[] = {
        {"P@20", precision_at_k(entries, judgments, 20) -
                     oracle::precision_at_k(topic.ranking, topic.judgments, 20)},
        {"MAP", average_precision(entries, judgments) -
                    oracle::average_precision(topic.ranking, topic.judgments)},
        {"RR", reciprocal_rank(entries, judgments) -
                   oracle::reciprocal_rank(topic.ranking, topic.judgments)},
        {"nDCG", ndcg(entries, judgments, std::nullopt) -
                     oracle::ndcg(topic.ranking, topic.judgments, std::nullopt)},
        {"nDCG@20", ndcg(entries, judgments, 20) -
                        oracle::ndcg(topic.ranking, topic.judgments, 20)},
        {"Bpref", bpref(entries, judgments) - oracle::bpref(topic.ranking, topic.judgments)},
    };
    for (const auto& [name, diff] : results) {
      check.expect(std::fabs(diff) <= 1e-12, tag + " " + name);
    }
  }
  check.expect(elapsed_seconds(start) < 10.0, "runtime exceeded 10s");
  report(3, "six measures match the brute-force oracle on 500 random topics (1e-12)", check);
}

// ---------------------------------------------------------------------------
// Criterion 4: replicability identities on 100 random score-table pairs.
// Per-topic scores live on a dyadic grid (multiples of 1/512) so that every
// difference, scaling, and mean is exact in floating point:
//   ER(d, d) = 1; ER(c*d, d) = c for c in {-2, -1, 0.5, 2};
//   DeltaRI flips sign under an environment swap; result_delta is
//   antisymmetric; a system equal to the pivot yields exactly (1, 0, 1).

struct GridTables {
  ScoreTable pivot;
  ScoreTable system;
  std::vector<std::string> topics;
};

// Pivot scores in (0, 1]; system = pivot + delta with deltas in integer
// units of 1/256 (so c * delta stays exact for the tested c).
GridTables random_grid_tables(oracle::Rng& rng, const MeasureId& measure,
                              const std::string& prefix, std::size_t topics,
                              const std::vector<int>& delta_units) {
  GridTables tables;
  tables.pivot.run_tag = "pivot";
  tables.system.run_tag = "system";
  for (std::size_t i = 0; i < topics; ++i) {
    const std::string topic = prefix + std::to_string(i);
    const double pivot_score = static_cast<double>(1 + rng.below(256)) / 256.0;
    const double delta = static_cast<double>(delta_units[i]) / 256.0;
    tables.topics.push_back(topic);
    tables.pivot.evaluated_topics.push_back(topic);
    tables.system.evaluated_topics.push_back(topic);
    tables.pivot.scores[measure][topic] = pivot_score;
    tables.system.scores[measure][topic] = pivot_score + delta;
  }
  return tables;
}

std::vector<int> random_delta_units(oracle::Rng& rng, std::size_t topics) {
  while (true) {
    std::vector<int> units(topics);
    long long sum = 0;
    for (auto& unit : units) {
      unit = static_cast<int>(rng.below(129)) - 64;  // [-64, 64] -> [-0.25, 0.25]
      sum += unit;
    }
    if (sum != 0) {  // keeps the EE1 mean effect nonzero, so ER is defined
      return units;
    }
  }
}

ScoreTable scaled_system(const ScoreTable& pivot, const MeasureId& measure,
                         const std::vector<std::string>& topics,
                         const std::vector<int>& delta_units, double scale) {
  ScoreTable system;
  system.run_tag = "system";
  for (std::size_t i = 0; i < topics.size(); ++i) {
    const double delta = scale * (static_cast<double>(delta_units[i]) / 256.0);
    system.evaluated_topics.push_back(topics[i]);
    system.scores[measure][topics[i]] = pivot.scores.at(measure).at(topics[i]) + delta;
  }
  return system;
}

void criterion_4() {
  Check check;
  const MeasureId measure = MeasureId::parse("map");
  const std::vector<MeasureId> measures{measure};
  oracle::Rng rng(0xD1CE5ULL);

  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t topics = 5 + rng.below(26);
    const std::vector<int> units = random_delta_units(rng, topics);
    const GridTables ee1 = random_grid_tables(rng, measure, "t", topics, units);
    const std::string tag = "trial " + std::to_string(trial);

    EEPair pair;
    pair.ee1_label = "ee1";
    pair.ee2_label = "ee2";
    pair.pivot_ee1 = ee1.pivot;
    pair.system_ee1 = ee1.system;
    for (std::size_t i = 0; i < topics; ++i) {
      pair.core_topics.emplace_back(ee1.topics[i], "u" + std::to_string(i));
    }

    // ER(d, d) = 1: the second environment repeats the same deltas over a
    // fresh pivot.
    const GridTables same_deltas = random_grid_tables(rng, measure, "u", topics, units);
    pair.pivot_ee2 = same_deltas.pivot;
    pair.system_ee2 = same_deltas.system;
    {
      const auto rep = replicability_report(pair, measures).measures.at(0).second;
      check.expect(rep.er.has_value() && std::fabs(*rep.er - 1.0) <= 1e-12,
                   tag + " ER(d,d) != 1");
    }

    // ER(c*d, d) = c for the four scale factors.
    for (const double scale : {-2.0, -1.0, 0.5, 2.0}) {
      pair.system_ee2 =
          scaled_system(same_deltas.pivot, measure, same_deltas.topics, units, scale);
      const auto rep = replicability_report(pair, measures).measures.at(0).second;
      check.expect(rep.er.has_value() && std::fabs(*rep.er - scale) <= 1e-12,
                   tag + " ER(c*d,d) != c for c=" + std::to_string(scale));
    }

    // DeltaRI antisymmetry under an environment swap, with independent
    // deltas in the second environment.
    const std::vector<int> other_units = random_delta_units(rng, topics);
    const GridTables ee2 = random_grid_tables(rng, measure, "u", topics, other_units);
    pair.pivot_ee2 = ee2.pivot;
    pair.system_ee2 = ee2.system;
    EEPair swapped;
    swapped.ee1_label = pair.ee2_label;
    swapped.ee2_label = pair.ee1_label;
    swapped.pivot_ee1 = pair.pivot_ee2;
    swapped.pivot_ee2 = pair.pivot_ee1;
    swapped.system_ee1 = pair.system_ee2;
    swapped.system_ee2 = pair.system_ee1;
    for (const auto& [a, b] : pair.core_topics) {
      swapped.core_topics.emplace_back(b, a);
    }
    {
      const auto fwd = replicability_report(pair, measures).measures.at(0).second;
      const auto bwd = replicability_report(swapped, measures).measures.at(0).second;
      const bool defined = fwd.delta_ri.has_value() && bwd.delta_ri.has_value();
      check.expect(defined && std::fabs(*fwd.delta_ri + *bwd.delta_ri) <= 1e-12,
                   tag + " DeltaRI not antisymmetric");
      check.expect(std::fabs(fwd.re_delta + bwd.re_delta) <= 1e-12,
                   tag + " ReDelta not antisymmetric");
    }

    // result_delta antisymmetry on raw ARPs.
    const double a = static_cast<double>(rng.below(1000)) / 997.0;
    const double b = static_cast<double>(rng.below(1000)) / 997.0;
    check.expect(result_delta(a, b) == -result_delta(b, a),
                 tag + " result_delta not antisymmetric");

    // S = P: definitional perfect replication, exact.
    EEPair identical = pair;
    identical.system_ee1 = identical.pivot_ee1;
    identical.system_ee2 = identical.pivot_ee2;
    const auto rep = replicability_report(identical, measures).measures.at(0).second;
    check.expect(rep.er.has_value() && *rep.er == 1.0, tag + " S=P ER != 1");
    check.expect(rep.delta_ri.has_value() && *rep.delta_ri == 0.0, tag + " S=P DeltaRI != 0");
    check.expect(rep.p_value == 1.0, tag + " S=P p != 1");
  }
  report(4, "replicability identities on 100 random score-table pairs (1e-12)", check);
}

// ---------------------------------------------------------------------------
// Criterion 5: t-test conformance against recorded reference p-values
// (1e-9), plus p = 1 for identical samples.

void criterion_5() {
  Check check;
  const auto close = [](double value, double reference) {
    return std::fabs(value - reference) <= 1e-9;
  };

  const std::vector<double> a1{1, 2, 3, 4, 5};
  const std::vector<double> b1{2, 3, 4, 5, 6};
  check.expect(close(unpaired_ttest(a1, b1), 0.34659350708733416), "unpaired case 1");

  const std::vector<double> a2{0.1, 0.4, 0.35, 0.8};
  const std::vector<double> b2{0.2, 0.3, 0.5, 0.6, 0.7};
  check.expect(close(unpaired_ttest(a2, b2), 0.7818697710231223), "unpaired case 2");

  const std::vector<double> a3{19.8, 20.4, 19.6, 17.8, 18.5, 18.9, 18.3, 18.9, 19.5, 22.0};
  const std::vector<double> b3{28.2, 26.6, 20.1, 23.3, 25.2, 22.1,
                               17.7, 27.6, 20.6, 13.7, 23.2, 17.5};
  check.expect(close(unpaired_ttest(a3, b3), 0.07013456923981042), "unpaired case 3");

  const std::vector<double> a4{0.2697, 0.3034, 0.2842, 0.2883, 0.2746, 0.2891, 0.3125, 0.2488};
  const std::vector<double> b4{0.2871, 0.3256, 0.2939, 0.3132, 0.3072, 0.2970, 0.3301, 0.2612};
  check.expect(close(unpaired_ttest(a4, b4), 0.10869583051898214), "unpaired case 4");

  check.expect(close(unpaired_ttest(a2, b2, true), 0.7928985374245481), "welch case 1");
  check.expect(close(unpaired_ttest(a3, b3, true), 0.058313857654314113), "welch case 2");

  const std::vector<double> p1a{0.60, 0.70, 0.80, 0.90};
  const std::vector<double> p1b{0.55, 0.72, 0.78, 0.95};
  check.expect(close(paired_ttest(p1a, p1b), 1.0), "paired case 1");

  const std::vector<double> p2a{0.10, 0.20, 0.30, 0.40, 0.50, 0.60};
  const std::vector<double> p2b{0.15, 0.18, 0.34, 0.39, 0.52, 0.58};
  check.expect(close(paired_ttest(p2a, p2b), 0.465022638260757), "paired case 2");

  const std::vector<double> p3a{0.31, 0.27, 0.45, 0.52, 0.38, 0.41, 0.29, 0.33, 0.47, 0.36};
  const std::vector<double> p3b{0.28, 0.25, 0.41, 0.50, 0.33, 0.38, 0.27, 0.30, 0.44, 0.31};
  check.expect(close(paired_ttest(p3a, p3b), 9.240368318307255e-06), "paired case 3");

  const std::vector<double> bb{0.138, 0.49,  0.319, 0.462, 0.589, 0.369,
                               0.351, 0.136, 0.234, 0.35,  0.44,  0.502};
  const std::vector<double> bs{0.19,  0.515, 0.337, 0.441, 0.599, 0.378,
                               0.365, 0.139, 0.249, 0.356, 0.43,  0.536};
  check.expect(close(paired_ttest(bs, bb), 0.038628710884163836), "paired case 4");

  check.expect(unpaired_ttest(a1, a1) == 1.0, "identical samples");
  report(5, "t-test p-values match recorded references (1e-9); identical -> 1", check);
}

// ---------------------------------------------------------------------------
// Criterion 6: reciprocal rank fusion. Two first ranks at k = 60 fuse to
// exactly 2/61; the fusion is invariant under input order and fusing a run
// with itself preserves its document order (50 random pairs each).

Run random_run(std::mt19937_64& rng, const std::string& tag, int topic_count) {
  std::vector<std::string> pool;
  for (int d = 0; d < 15; ++d) {
    pool.push_back("doc" + std::to_string(d));
  }
  Run run;
  run.tag = tag;
  for (int t = 0; t < topic_count; ++t) {
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::size_t depth = 3 + rng() % 12;
    std::vector<RunEntry>& entries = run.topics["q" + std::to_string(t)];
    double score = 100.0;
    for (std::size_t i = 0; i < depth && i < pool.size(); ++i) {
      entries.push_back({pool[i], score, static_cast<int>(i) + 1});
      score -= 1.0;
    }
  }
  return run;
}

bool same_run(const Run& a, const Run& b) {
  if (a.topics.size() != b.topics.size()) {
    return false;
  }
  for (const auto& [topic, entries] : a.topics) {
    const auto it = b.topics.find(topic);
    if (it == b.topics.end() || it->second.size() != entries.size()) {
      return false;
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].doc_id != it->second[i].doc_id ||
          entries[i].score != it->second[i].score) {
        return false;
      }
    }
  }
  return true;
}

void criterion_6() {
  Check check;

  Run first;
  first.tag = "a";
  first.topics["q1"] = {{"shared", 2.0, 1}, {"onlya", 1.0, 2}};
  Run second;
  second.tag = "b";
  second.topics["q1"] = {{"shared", 9.0, 1}, {"onlyb", 3.0, 2}};
  const std::vector<Run> pair{first, second};
  const Run fused = rrf_fuse(pair);
  double shared_score = -1.0;
  for (const auto& entry : fused.topics.at("q1")) {
    if (entry.doc_id == "shared") {
      shared_score = entry.score;
    }
  }
  check.expect(std::fabs(shared_score - 2.0 / 61.0) <= 1e-15, "two first ranks != 2/61");

  std::mt19937_64 rng(20240815ULL);
  for (int round = 0; round < 50; ++round) {
    const Run a = random_run(rng, "a", 3);
    const Run b = random_run(rng, "b", 3);
    const std::vector<Run> forward{a, b};
    const std::vector<Run> backward{b, a};
    check.expect(same_run(rrf_fuse(forward), rrf_fuse(backward)),
                 "order variance in round " + std::to_string(round));

    const std::vector<Run> self{a, a};
    const Run self_fused = rrf_fuse(self);
    bool order_kept = true;
    for (const auto& [topic, entries] : a.topics) {
      const auto& fused_entries = self_fused.topics.at(topic);
      if (fused_entries.size() != entries.size()) {
        order_kept = false;
        break;
      }
      for (std::size_t i = 0; i < entries.size(); ++i) {
        order_kept = order_kept && fused_entries[i].doc_id == entries[i].doc_id;
      }
    }
    check.expect(order_kept, "self-fusion reordered round " + std::to_string(round));
  }
  report(6, "RRF: 2/61 at k=60 (1e-15); order invariance; self-fusion stability", check);
}

// ---------------------------------------------------------------------------
// Criterion 7: round-trip and determinism. write_run(parse_run(file)) is a
// fixed point, and repeated CLI invocations over the fixture set produce
// byte-identical reports (SVG side outputs included).

void criterion_7() {
  Check check;

  for (const char* name : {"pivot_ee1.run", "system_ee1.run", "pivot_ee2.run",
                           "system_ee2.run", "sysb.run"}) {
    const Run once = parse_run_file(fixture(name));
    std::ostringstream first_text;
    write_run(once, first_text);
    std::istringstream reread(first_text.str());
    const Run twice = parse_run(reread);
    std::ostringstream second_text;
    write_run(twice, second_text);
    check.expect(first_text.str() == second_text.str(),
                 std::string(name) + " write/parse text fixed point");
    check.expect(same_run(once, twice) && once.tag == twice.tag,
                 std::string(name) + " structural round trip");
  }

  const std::string qrels1 = quoted(fixture("qrels_ee1.txt"));
  const std::vector<std::string> commands{
      "eval --run " + quoted(fixture("pivot_ee1.run")) + " --qrels " + qrels1,
      "eval --run " + quoted(fixture("system_ee1.run")) + " --qrels " + qrels1 +
          " --format json",
      "replicability --pivot-ee1 " + quoted(fixture("pivot_ee1.run")) + " --pivot-ee2 " +
          quoted(fixture("pivot_ee2.run")) + " --system-ee1 " +
          quoted(fixture("system_ee1.run")) + " --system-ee2 " +
          quoted(fixture("system_ee2.run")) + " --qrels-ee1 " + qrels1 + " --qrels-ee2 " +
          quoted(fixture("qrels_ee2.txt")) + " --queries-ee1 " +
          quoted(fixture("queries_ee1.tsv")) + " --queries-ee2 " +
          quoted(fixture("queries_ee2.tsv")) + " --format markdown",
      "compare " + quoted(fixture("pivot_ee1.run")) + " " +
          quoted(fixture("system_ee1.run")) + " " + quoted(fixture("sysb.run")) +
          " --qrels " + qrels1 + " --baseline bm25",
      "fuse " + quoted(fixture("pivot_ee1.run")) + " " + quoted(fixture("system_ee1.run")) +
          " --k 60",
      "corpus-diff " + quoted(fixture("manifest_ee1.tsv")) + " " +
          quoted(fixture("manifest_ee2.tsv")),
      "harmonize " + quoted(fixture("queries_ee1.tsv")) + " " +
          quoted(fixture("queries_ee2.tsv")) + " --format json",
      "qrels-stats " + qrels1,
  };
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const auto first_pass = run_cli(commands[i]);
    const auto second_pass = run_cli(commands[i]);
    const std::string label = "command " + std::to_string(i + 1);
    if (!first_pass || !second_pass) {
      check.expect(false, label + " did not run");
      continue;
    }
    check.expect(first_pass->first == 0, label + " exit code " +
                                             std::to_string(first_pass->first));
    check.expect(!first_pass->second.empty(), label + " empty output");
    check.expect(first_pass->second == second_pass->second, label + " output drifted");
  }

  // SVG side outputs, byte-compared across runs.
  const std::string svg_base = "corpus-diff " + quoted(fixture("manifest_ee1.tsv")) + " " +
                               quoted(fixture("manifest_ee2.tsv")) + " --svg ";
  const auto svg_first = run_cli(svg_base + "acceptance_diff_1.svg");
  const auto svg_second = run_cli(svg_base + "acceptance_diff_2.svg");
  check.expect(svg_first && svg_first->first == 0 && svg_second && svg_second->first == 0,
               "corpus-diff --svg failed");
  const auto svg_bytes_1 = read_file("acceptance_diff_1.svg");
  const auto svg_bytes_2 = read_file("acceptance_diff_2.svg");
  check.expect(svg_bytes_1 && svg_bytes_2 && !svg_bytes_1->empty() &&
                   *svg_bytes_1 == *svg_bytes_2,
               "SVG bytes drifted");
  std::remove("acceptance_diff_1.svg");
  std::remove("acceptance_diff_2.svg");

  report(7, "run round-trip fixed point; byte-identical repeated CLI reports", check);
}

// ---------------------------------------------------------------------------
// Criterion 8 (conditional): checks against the real longitudinal dataset
// when TIREVAL_LONGEVAL_DIR points at it; skipped otherwise. The directory
// is expected to hold queries_wt.tsv, queries_st.tsv, queries_lt.tsv,
// manifest_wt.tsv (token lengths), and qrels_wt.txt.

void criterion_8() {
  const std::string name = "longitudinal dataset statistics";
  const char* env = std::getenv("TIREVAL_LONGEVAL_DIR");
  if (env == nullptr || *env == '\0') {
    report_skip(8, name, "TIREVAL_LONGEVAL_DIR is not set");
    return;
  }
  const std::string dir(env);
  for (const char* file : {"queries_wt.tsv", "queries_st.tsv", "queries_lt.tsv",
                           "manifest_wt.tsv", "qrels_wt.txt"}) {
    if (!file_exists(dir + "/" + file)) {
      report_skip(8, name, std::string(file) + " not found under " + dir);
      return;
    }
  }

  Check check;
  const QuerySet wt = parse_queries_file(dir + "/queries_wt.tsv", "wt");
  const QuerySet st = parse_queries_file(dir + "/queries_st.tsv", "st");
  const QuerySet lt = parse_queries_file(dir + "/queries_lt.tsv", "lt");
  const std::vector<QuerySet> sets{wt, st, lt};
  const TopicAlignment alignment = core_topics(sets, HarmonizeMode::ByText);
  check.expect(alignment.entries.size() == 124,
               "core query strings: " + std::to_string(alignment.entries.size()));

  const CorpusManifest manifest =
      parse_manifest_file(dir + "/manifest_wt.tsv", "wt", LengthUnit::Tokens);
  const CollectionStats stats = collection_stats(manifest);
  check.expect(stats.documents.count == 1570734,
               "document count: " + std::to_string(stats.documents.count));
  check.expect(std::fabs(stats.documents.mean - 794.11) <= 0.01,
               "mean document length: " + std::to_string(stats.documents.mean));

  const Qrels qrels = parse_qrels_file(dir + "/qrels_wt.txt");
  const QrelsDistribution dist = qrels_distribution(qrels);
  check.expect(dist.overall.min >= 2, "min judgments per topic: " +
                                          std::to_string(dist.overall.min));
  check.expect(dist.overall.max <= 59, "max judgments per topic: " +
                                           std::to_string(dist.overall.max));
  check.expect(std::fabs(dist.overall.mean - 14.0) <= 0.5,
               "mean judgments per topic: " + std::to_string(dist.overall.mean));
  report(8, name, check);
}

// A criterion that throws instead of reporting still produces one line.
void guarded(int criterion, const char* name, void (*body)()) {
  try {
    body();
  } catch (const std::exception& error) {
    ++g_failures;
    std::cout << "FAIL criterion " << criterion << ": " << name << " (exception: " << error.what()
              << ")\n";
  }
}

}  // namespace

int main() {
  guarded(1, "recorded core-topic ARPs reproduce their ReDelta columns (5e-5)", criterion_1);
  guarded(2, "recorded all-topic ARPs within 1.5e-3; pivot rows exactly (1, 0, 1)", criterion_2);
  guarded(3, "six measures match the brute-force oracle on 500 random topics (1e-12)",
          criterion_3);
  guarded(4, "replicability identities on 100 random score-table pairs (1e-12)", criterion_4);
  guarded(5, "t-test p-values match recorded references (1e-9); identical -> 1", criterion_5);
  guarded(6, "RRF: 2/61 at k=60 (1e-15); order invariance; self-fusion stability", criterion_6);
  guarded(7, "run round-trip fixed point; byte-identical repeated CLI reports", criterion_7);
  guarded(8, "longitudinal dataset statistics", criterion_8);
  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
