#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tireval/corpus.hpp"
#include "tireval/errors.hpp"
#include "tireval/fusion.hpp"
#include "tireval/metrics.hpp"
#include "tireval/replicability.hpp"
#include "tireval/report.hpp"
#include "tireval/stats.hpp"
#include "tireval/svg.hpp"
#include "tireval/trec_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitEmptyIntersection = 3;
constexpr int kExitAllUndefined = 4;

struct OutputOptions {
  std::string format;
  int precision = 4;
  std::string output_path;
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format: tsv, json, or markdown")
      ->check(CLI::IsMember({"tsv", "json", "markdown", "md"}, CLI::ignore_case));
  cmd->add_option("--precision", opts.precision, "Decimal places in tabular output")
      ->check(CLI::Range(1, 17));
  cmd->add_option("-o,--output", opts.output_path, "Write the report here instead of stdout");
}

tireval::OutputSpec resolve_output(const OutputOptions& opts) {
  tireval::OutputSpec spec;
  spec.precision = opts.precision;
  if (!opts.format.empty()) {
    spec.format = tireval::parse_format(opts.format);
  } else if (const char* env = std::getenv("TIREVAL_FORMAT"); env != nullptr && *env != '\0') {
    spec.format = tireval::parse_format(env);
  }
  return spec;
}

void emit(const std::string& text, const OutputOptions& opts) {
  if (opts.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opts.output_path, std::ios::binary);
  if (!out) {
    throw tireval::Error("cannot open " + opts.output_path + " for writing");
  }
  out << text;
  if (!out) {
    throw tireval::Error("failed writing " + opts.output_path);
  }
}

void write_file(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw tireval::Error("cannot open " + path + " for writing");
  }
  out << text;
  if (!out) {
    throw tireval::Error("failed writing " + path);
  }
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& warning : warnings) {
    std::cerr << "warning: " << warning << '\n';
  }
}

std::vector<tireval::MeasureId> resolve_measures(const std::vector<std::string>& specs) {
  if (specs.empty()) {
    return tireval::MeasureId::default_set();
  }
  std::vector<tireval::MeasureId> measures;
  measures.reserve(specs.size());
  for (const auto& spec : specs) {
    measures.push_back(tireval::MeasureId::parse(spec));
  }
  return measures;
}

tireval::HarmonizeMode resolve_mode(const std::string& mode) {
  if (mode == "by-id") {
    return tireval::HarmonizeMode::ById;
  }
  if (mode == "by-text") {
    return tireval::HarmonizeMode::ByText;
  }
  throw std::invalid_argument("unknown harmonization mode: " + mode);
}

tireval::LengthUnit resolve_unit(const std::string& unit) {
  if (unit == "chars") {
    return tireval::LengthUnit::Chars;
  }
  if (unit == "tokens") {
    return tireval::LengthUnit::Tokens;
  }
  throw std::invalid_argument("unknown length unit: " + unit);
}

// ---------------------------------------------------------------- eval ----

struct EvalArgs {
  std::string run_path;
  std::string qrels_path;
  std::vector<std::string> measure_specs;
  OutputOptions out;
};

int run_eval(const EvalArgs& args) {
  std::vector<std::string> warnings;
  const tireval::Run run = tireval::parse_run_file(args.run_path, &warnings);
  const tireval::Qrels qrels = tireval::parse_qrels_file(args.qrels_path, &warnings);
  print_warnings(warnings);

  const auto measures = resolve_measures(args.measure_specs);
  const tireval::ScoreTable table = tireval::evaluate(run, qrels, measures);
  emit(tireval::render_evaluation(table, measures, resolve_output(args.out)), args.out);
  return kExitOk;
}

// ------------------------------------------------------- replicability ----

struct ReplicabilityArgs {
  std::string pivot_ee1, pivot_ee2, system_ee1, system_ee2;
  std::string qrels_ee1, qrels_ee2;
  std::string queries_ee1, queries_ee2;
  std::string mode = "by-text";
  std::vector<std::string> measure_specs;
  bool welch = false;
  std::string plot_path;
  std::string drift_measure;
  OutputOptions out;
};

int run_replicability(const ReplicabilityArgs& args) {
  std::vector<std::string> warnings;
  const tireval::Run pivot_ee1 = tireval::parse_run_file(args.pivot_ee1, &warnings);
  const tireval::Run pivot_ee2 = tireval::parse_run_file(args.pivot_ee2, &warnings);
  const tireval::Run system_ee1 = tireval::parse_run_file(args.system_ee1, &warnings);
  const tireval::Run system_ee2 = tireval::parse_run_file(args.system_ee2, &warnings);
  const tireval::Qrels qrels_ee1 = tireval::parse_qrels_file(args.qrels_ee1, &warnings);
  const tireval::Qrels qrels_ee2 = tireval::parse_qrels_file(args.qrels_ee2, &warnings);

  tireval::EEPair pair;
  pair.ee1_label = "ee1";
  pair.ee2_label = "ee2";

  if (!args.queries_ee1.empty() || !args.queries_ee2.empty()) {
    if (args.queries_ee1.empty() || args.queries_ee2.empty()) {
      throw std::invalid_argument("--queries-ee1 and --queries-ee2 go together");
    }
    const tireval::QuerySet sets[] = {
        tireval::parse_queries_file(args.queries_ee1, "ee1"),
        tireval::parse_queries_file(args.queries_ee2, "ee2"),
    };
    const tireval::TopicAlignment alignment =
        tireval::core_topics(sets, resolve_mode(args.mode));
    warnings.insert(warnings.end(), alignment.warnings.begin(), alignment.warnings.end());
    pair.core_topics = alignment.pairs(0, 1);
  } else {
    // Without query files the core topics are the ids judged in both EEs.
    for (const auto& [topic, docs] : qrels_ee1.judgments) {
      if (qrels_ee2.judgments.contains(topic)) {
        pair.core_topics.emplace_back(topic, topic);
      }
    }
    if (pair.core_topics.empty()) {
      throw tireval::EmptyResultError("the two qrels share no topics");
    }
  }
  print_warnings(warnings);

  const auto measures = resolve_measures(args.measure_specs);
  pair.pivot_ee1 = tireval::evaluate(pivot_ee1, qrels_ee1, measures);
  pair.pivot_ee2 = tireval::evaluate(pivot_ee2, qrels_ee2, measures);
  pair.system_ee1 = tireval::evaluate(system_ee1, qrels_ee1, measures);
  pair.system_ee2 = tireval::evaluate(system_ee2, qrels_ee2, measures);

  const tireval::ReplicabilityReport report =
      tireval::replicability_report(pair, measures, args.welch);
  const tireval::OutputSpec spec = resolve_output(args.out);

  std::string text = tireval::render_replicability(report, spec);
  if (!args.drift_measure.empty()) {
    const tireval::MeasureId drift_id = tireval::MeasureId::parse(args.drift_measure);
    const auto drift =
        tireval::topic_drift(pair.system_ee1, pair.system_ee2, pair.core_topics, drift_id);
    text += tireval::render_drift(drift, drift_id, spec);
  }
  emit(text, args.out);

  if (!args.plot_path.empty()) {
    std::vector<tireval::ScatterPoint> points;
    for (const auto& [measure, rep] : report.measures) {
      if (rep.er && rep.delta_ri) {
        points.push_back({measure.name(), *rep.er, *rep.delta_ri});
      }
    }
    write_file(tireval::scatter_svg(points, report.system_tag + " vs " + report.pivot_tag),
               args.plot_path);
  }

  const bool all_undefined =
      std::all_of(report.measures.begin(), report.measures.end(),
                  [](const auto& entry) { return !entry.second.er && !entry.second.delta_ri; });
  return all_undefined ? kExitAllUndefined : kExitOk;
}

// -------------------------------------------------------------- compare ----

struct CompareArgs {
  std::vector<std::string> run_paths;
  std::string qrels_path;
  std::string baseline_tag;
  std::vector<std::string> measure_specs;
  double alpha = 0.05;
  bool bold_best = false;
  OutputOptions out;
};

int run_compare(const CompareArgs& args) {
  std::vector<std::string> warnings;
  const tireval::Qrels qrels = tireval::parse_qrels_file(args.qrels_path, &warnings);
  const auto measures = resolve_measures(args.measure_specs);

  std::vector<tireval::ScoreTable> tables;
  tables.reserve(args.run_paths.size());
  for (const auto& path : args.run_paths) {
    tables.push_back(tireval::evaluate(tireval::parse_run_file(path, &warnings), qrels, measures));
  }
  print_warnings(warnings);

  std::size_t baseline_index = tables.size();
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (tables[i].run_tag == args.baseline_tag) {
      baseline_index = i;
      break;
    }
  }
  if (baseline_index == tables.size()) {
    throw std::invalid_argument("baseline tag " + args.baseline_tag +
                                " does not match any run");
  }

  const tireval::ComparisonReport report =
      tireval::compare_systems(tables, baseline_index, measures, args.alpha);
  emit(tireval::render_comparison(report, resolve_output(args.out), args.bold_best), args.out);
  return kExitOk;
}

// ----------------------------------------------------------------- fuse ----

struct FuseArgs {
  std::vector<std::string> run_paths;
  std::string qrels_path;
  std::string measure_spec = "ndcg";
  double k = 60.0;
  int depth = 1000;
  std::string tag = "rrf";
  bool sweep = false;
  double min_k = 10.0;
  double max_k = 100.0;
  double step = 10.0;
  OutputOptions out;
};

int run_fuse(const FuseArgs& args) {
  std::vector<std::string> warnings;
  std::vector<tireval::Run> runs;
  runs.reserve(args.run_paths.size());
  for (const auto& path : args.run_paths) {
    runs.push_back(tireval::parse_run_file(path, &warnings));
  }
  print_warnings(warnings);

  tireval::FusionConfig config;
  config.k = args.k;
  config.depth = args.depth;
  config.tag = args.tag;

  if (args.sweep) {
    if (args.qrels_path.empty()) {
      throw std::invalid_argument("--sweep needs --qrels to score the candidates");
    }
    if (!(args.step > 0.0) || args.min_k > args.max_k) {
      throw std::invalid_argument("sweep range is empty");
    }
    const tireval::Qrels qrels = tireval::parse_qrels_file(args.qrels_path);
    std::vector<double> candidates;
    // The epsilon keeps the upper bound inclusive despite accumulation.
    for (double k = args.min_k; k <= args.max_k + 1e-9; k += args.step) {
      candidates.push_back(k);
    }
    const tireval::SweepResult sweep = tireval::rrf_sweep(
        runs, qrels, tireval::MeasureId::parse(args.measure_spec), candidates, config);
    emit(tireval::render_sweep(sweep, resolve_output(args.out)), args.out);
    return kExitOk;
  }

  const tireval::Run fused = tireval::rrf_fuse(runs, config);
  std::ostringstream out;
  tireval::write_run(fused, out);
  emit(out.str(), args.out);
  return kExitOk;
}

// ---------------------------------------------------------- corpus-diff ----

struct CorpusDiffArgs {
  std::string manifest_ee1;
  std::string manifest_ee2;
  std::string unit = "chars";
  std::string label_ee1 = "ee1";
  std::string label_ee2 = "ee2";
  std::string svg_path;
  OutputOptions out;
};

int run_corpus_diff(const CorpusDiffArgs& args) {
  const tireval::LengthUnit unit = resolve_unit(args.unit);
  const tireval::CorpusManifest ee1 =
      tireval::parse_manifest_file(args.manifest_ee1, args.label_ee1, unit);
  const tireval::CorpusManifest ee2 =
      tireval::parse_manifest_file(args.manifest_ee2, args.label_ee2, unit);

  std::vector<std::string> warnings;
  const tireval::EvolutionStats stats = tireval::diff_corpora(ee1, ee2, &warnings);
  print_warnings(warnings);

  emit(tireval::render_evolution(stats, resolve_output(args.out)), args.out);
  if (!args.svg_path.empty()) {
    write_file(tireval::evolution_svg(stats), args.svg_path);
  }
  return kExitOk;
}

// --------------------------------------------------------- corpus-stats ----

struct CorpusStatsArgs {
  std::string manifest_path;
  std::string queries_path;
  std::string unit = "chars";
  std::vector<std::string> excluded_topics;
  OutputOptions out;
};

int run_corpus_stats(const CorpusStatsArgs& args) {
  const tireval::CorpusManifest manifest =
      tireval::parse_manifest_file(args.manifest_path, "", resolve_unit(args.unit));
  tireval::QuerySet queries;
  if (!args.queries_path.empty()) {
    queries = tireval::parse_queries_file(args.queries_path);
  }
  const tireval::CollectionStats stats =
      tireval::collection_stats(manifest, queries, args.excluded_topics);
  emit(tireval::render_collection(stats, resolve_output(args.out)), args.out);
  return kExitOk;
}

// ---------------------------------------------------------- qrels-stats ----

struct QrelsStatsArgs {
  std::string qrels_path;
  OutputOptions out;
};

int run_qrels_stats(const QrelsStatsArgs& args) {
  std::vector<std::string> warnings;
  const tireval::Qrels qrels = tireval::parse_qrels_file(args.qrels_path, &warnings);
  print_warnings(warnings);
  emit(tireval::render_qrels(tireval::qrels_distribution(qrels), resolve_output(args.out)),
       args.out);
  return kExitOk;
}

// ------------------------------------------------------------ harmonize ----

struct HarmonizeArgs {
  std::vector<std::string> queries_paths;
  std::string mode = "by-text";
  OutputOptions out;
};

int run_harmonize(const HarmonizeArgs& args) {
  std::vector<tireval::QuerySet> sets;
  sets.reserve(args.queries_paths.size());
  for (const auto& path : args.queries_paths) {
    sets.push_back(tireval::parse_queries_file(path, path));
  }
  const tireval::TopicAlignment alignment = tireval::core_topics(sets, resolve_mode(args.mode));
  print_warnings(alignment.warnings);
  emit(tireval::render_alignment(alignment, resolve_output(args.out)), args.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Longitudinal evaluation toolkit for TREC-style retrieval experiments"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "Score a run against qrels");
  eval->add_option("--run", eval_args.run_path, "TREC run file")->required();
  eval->add_option("--qrels", eval_args.qrels_path, "Qrels file")->required();
  eval->add_option("-m,--measure,--measures", eval_args.measure_specs,
                   "Measures (repeatable), e.g. map bpref rr p@20 ndcg@10");
  add_output_options(eval, eval_args.out);

  ReplicabilityArgs rep_args;
  CLI::App* rep = app.add_subcommand(
      "replicability", "Compare a system/pivot pair across two evaluation environments");
  rep->add_option("--pivot-ee1", rep_args.pivot_ee1, "Pivot run, first environment")->required();
  rep->add_option("--pivot-ee2", rep_args.pivot_ee2, "Pivot run, second environment")->required();
  rep->add_option("--system-ee1", rep_args.system_ee1, "System run, first environment")
      ->required();
  rep->add_option("--system-ee2", rep_args.system_ee2, "System run, second environment")
      ->required();
  rep->add_option("--qrels-ee1", rep_args.qrels_ee1, "Qrels, first environment")->required();
  rep->add_option("--qrels-ee2", rep_args.qrels_ee2, "Qrels, second environment")->required();
  rep->add_option("--queries-ee1", rep_args.queries_ee1, "Query file, first environment");
  rep->add_option("--queries-ee2", rep_args.queries_ee2, "Query file, second environment");
  rep->add_option("--mode", rep_args.mode, "Core-topic matching: by-text or by-id")
      ->check(CLI::IsMember({"by-text", "by-id"}));
  rep->add_option("-m,--measure,--measures", rep_args.measure_specs, "Measures (repeatable)");
  rep->add_flag("--welch", rep_args.welch, "Welch t-test instead of Student");
  rep->add_option("--plot", rep_args.plot_path, "Write an ER/dRI scatter SVG here");
  rep->add_option("--drift", rep_args.drift_measure,
                  "Append per-topic score drift for this measure");
  add_output_options(rep, rep_args.out);

  CompareArgs cmp_args;
  CLI::App* cmp = app.add_subcommand("compare", "Significance-test systems against a baseline");
  cmp->add_option("runs", cmp_args.run_paths, "Run files (two or more)")
      ->required()
      ->expected(-2);
  cmp->add_option("--qrels", cmp_args.qrels_path, "Qrels file")->required();
  cmp->add_option("--baseline", cmp_args.baseline_tag, "Tag of the baseline run")->required();
  cmp->add_option("-m,--measure,--measures", cmp_args.measure_specs, "Measures (repeatable)");
  cmp->add_option("--alpha", cmp_args.alpha, "Family-wise significance level")
      ->check(CLI::Range(0.0, 1.0));
  cmp->add_flag("--bold-best", cmp_args.bold_best, "Bold the best score per measure (markdown)");
  add_output_options(cmp, cmp_args.out);

  FuseArgs fuse_args;
  CLI::App* fuse = app.add_subcommand("fuse", "Reciprocal rank fusion of runs");
  fuse->add_option("runs", fuse_args.run_paths, "Run files to fuse")->required()->expected(-1);
  fuse->add_option("--k", fuse_args.k, "Rank constant")->check(CLI::PositiveNumber);
  fuse->add_option("--depth", fuse_args.depth, "Ranking depth")->check(CLI::PositiveNumber);
  fuse->add_option("--tag", fuse_args.tag, "Tag for the fused run");
  fuse->add_flag("--sweep", fuse_args.sweep, "Sweep k and report the ARP per candidate");
  fuse->add_option("--qrels", fuse_args.qrels_path, "Qrels for the sweep");
  fuse->add_option("-m,--measure,--measures", fuse_args.measure_spec,
                   "Measure the sweep optimizes");
  fuse->add_option("--min-k", fuse_args.min_k, "Smallest candidate k");
  fuse->add_option("--max-k", fuse_args.max_k, "Largest candidate k");
  fuse->add_option("--step", fuse_args.step, "Candidate k step");
  add_output_options(fuse, fuse_args.out);

  CorpusDiffArgs diff_args;
  CLI::App* diff = app.add_subcommand("corpus-diff", "URL-level diff of two corpus manifests");
  diff->add_option("manifest_ee1", diff_args.manifest_ee1, "Manifest, first snapshot")
      ->required();
  diff->add_option("manifest_ee2", diff_args.manifest_ee2, "Manifest, second snapshot")
      ->required();
  diff->add_option("--unit", diff_args.unit, "Length unit: chars or tokens")
      ->check(CLI::IsMember({"chars", "tokens"}));
  diff->add_option("--label-ee1", diff_args.label_ee1, "Label for the first snapshot");
  diff->add_option("--label-ee2", diff_args.label_ee2, "Label for the second snapshot");
  diff->add_option("--svg", diff_args.svg_path, "Write a stacked-bar SVG here");
  add_output_options(diff, diff_args.out);

  CorpusStatsArgs cstats_args;
  CLI::App* cstats = app.add_subcommand("corpus-stats", "Document and query length statistics");
  cstats->add_option("manifest", cstats_args.manifest_path, "Corpus manifest")->required();
  cstats->add_option("--queries", cstats_args.queries_path, "Query file for query statistics");
  cstats->add_option("--unit", cstats_args.unit, "Document length unit: chars or tokens")
      ->check(CLI::IsMember({"chars", "tokens"}));
  cstats->add_option("--exclude", cstats_args.excluded_topics,
                     "Topic ids excluded from the query statistics (repeatable)");
  add_output_options(cstats, cstats_args.out);

  QrelsStatsArgs qstats_args;
  CLI::App* qstats = app.add_subcommand("qrels-stats", "Relevant-per-topic distribution");
  qstats->add_option("qrels", qstats_args.qrels_path, "Qrels file")->required();
  add_output_options(qstats, qstats_args.out);

  HarmonizeArgs harm_args;
  CLI::App* harm = app.add_subcommand("harmonize", "Core topics shared across query sets");
  harm->add_option("queries", harm_args.queries_paths, "Query files (two or more)")
      ->required()
      ->expected(-2);
  harm->add_option("--mode", harm_args.mode, "Core-topic matching: by-text or by-id")
      ->check(CLI::IsMember({"by-text", "by-id"}));
  add_output_options(harm, harm_args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*eval) {
      return run_eval(eval_args);
    }
    if (*rep) {
      return run_replicability(rep_args);
    }
    if (*cmp) {
      return run_compare(cmp_args);
    }
    if (*fuse) {
      return run_fuse(fuse_args);
    }
    if (*diff) {
      return run_corpus_diff(diff_args);
    }
    if (*cstats) {
      return run_corpus_stats(cstats_args);
    }
    if (*qstats) {
      return run_qrels_stats(qstats_args);
    }
    if (*harm) {
      return run_harmonize(harm_args);
    }
  } catch (const tireval::EmptyResultError& e) {
    std::cerr << "tireval: " << e.what() << '\n';
    return kExitEmptyIntersection;
  } catch (const std::exception& e) {
    std::cerr << "tireval: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
