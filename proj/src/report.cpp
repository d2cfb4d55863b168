#include "tireval/report.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tireval/errors.hpp"
#include "tireval/numeric.hpp"
#include "tireval/stats.hpp"

namespace tireval {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

std::string fmt(double value, const OutputSpec& spec) {
  return fixed_double(value, spec.precision);
}

std::string fmt_opt(const std::optional<double>& value, const OutputSpec& spec) {
  return value ? fmt(*value, spec) : std::string("undef");
}

ordered_json json_opt(const std::optional<double>& value) {
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

std::string unit_name(LengthUnit unit) {
  return unit == LengthUnit::Tokens ? "tokens" : "chars";
}

// Plain string grid rendered as TSV or a markdown pipe table. JSON output
// is assembled separately so it can keep native types.
struct Grid {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_tsv() const {
    std::ostringstream out;
    emit(out, "\t", "", "");
    return out.str();
  }

  std::string to_markdown() const {
    std::ostringstream out;
    emit_row(out, header, " | ", "| ", " |");
    std::vector<std::string> rule(header.size(), "---");
    emit_row(out, rule, " | ", "| ", " |");
    for (const auto& row : rows) {
      emit_row(out, row, " | ", "| ", " |");
    }
    return out.str();
  }

 private:
  void emit(std::ostringstream& out, const char* sep, const char* prefix,
            const char* suffix) const {
    emit_row(out, header, sep, prefix, suffix);
    for (const auto& row : rows) {
      emit_row(out, row, sep, prefix, suffix);
    }
  }

  static void emit_row(std::ostringstream& out, const std::vector<std::string>& cells,
                       const char* sep, const char* prefix, const char* suffix) {
    out << prefix;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) {
        out << sep;
      }
      out << cells[i];
    }
    out << suffix << '\n';
  }
};

std::string render_grid(const Grid& grid, const OutputSpec& spec) {
  return spec.format == OutputFormat::Markdown ? grid.to_markdown() : grid.to_tsv();
}

std::string dump(const ordered_json& value) { return value.dump(2) + "\n"; }

}  // namespace

OutputFormat parse_format(std::string_view text) {
  const std::string name = lower(text);
  if (name == "tsv") {
    return OutputFormat::Tsv;
  }
  if (name == "json") {
    return OutputFormat::Json;
  }
  if (name == "markdown" || name == "md") {
    return OutputFormat::Markdown;
  }
  throw std::invalid_argument("unknown output format: " + std::string(text));
}

ComparisonReport compare_systems(std::span<const ScoreTable> tables, std::size_t baseline_index,
                                 std::span<const MeasureId> measures, double alpha) {
  if (tables.size() < 2) {
    throw std::invalid_argument("comparison needs a baseline and at least one system");
  }
  if (baseline_index >= tables.size()) {
    throw std::out_of_range("baseline index out of range");
  }
  const ScoreTable& baseline = tables[baseline_index];

  std::vector<ScoreTable> systems;
  systems.reserve(tables.size() - 1);
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i != baseline_index) {
      systems.push_back(tables[i]);
    }
  }

  ComparisonReport report;
  report.baseline_tag = baseline.run_tag;
  report.alpha = alpha;
  report.corrections = systems.size();
  report.measures.assign(measures.begin(), measures.end());

  ComparisonRow baseline_row;
  baseline_row.run_tag = baseline.run_tag;
  baseline_row.is_baseline = true;
  for (const auto& measure : measures) {
    baseline_row.arps[measure] = arp(baseline, measure);
  }
  report.rows.push_back(std::move(baseline_row));

  std::vector<ComparisonRow> system_rows(systems.size());
  for (std::size_t i = 0; i < systems.size(); ++i) {
    system_rows[i].run_tag = systems[i].run_tag;
  }
  for (const auto& measure : measures) {
    const auto flags = paired_ttest_bonferroni(systems, baseline, measure, alpha);
    for (std::size_t i = 0; i < systems.size(); ++i) {
      system_rows[i].arps[measure] = arp(systems[i], measure);
      system_rows[i].p_values[measure] = flags[i].p_value;
      system_rows[i].significant[measure] = flags[i].significant;
    }
  }
  for (auto& row : system_rows) {
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string render_evaluation(const ScoreTable& table, std::span<const MeasureId> measures,
                              const OutputSpec& spec) {
  if (spec.format == OutputFormat::Json) {
    ordered_json root;
    root["run"] = table.run_tag;
    ordered_json topics = ordered_json::object();
    for (const auto& topic : table.evaluated_topics) {
      ordered_json row = ordered_json::object();
      for (const auto& measure : measures) {
        row[measure.name()] = table.score(measure, topic);
      }
      topics[topic] = std::move(row);
    }
    root["topics"] = std::move(topics);
    ordered_json summary = ordered_json::object();
    for (const auto& measure : measures) {
      summary[measure.name()] = arp(table, measure);
    }
    root["arp"] = std::move(summary);
    return dump(root);
  }
  if (spec.format == OutputFormat::Markdown) {
    Grid grid;
    grid.header.push_back("topic");
    for (const auto& measure : measures) {
      grid.header.push_back(measure.name());
    }
    for (const auto& topic : table.evaluated_topics) {
      std::vector<std::string> row{topic};
      for (const auto& measure : measures) {
        row.push_back(fmt(table.score(measure, topic), spec));
      }
      grid.rows.push_back(std::move(row));
    }
    std::vector<std::string> arp_row{"ARP"};
    for (const auto& measure : measures) {
      arp_row.push_back(fmt(arp(table, measure), spec));
    }
    grid.rows.push_back(std::move(arp_row));
    return grid.to_markdown();
  }
  Grid grid;
  grid.header = {"measure", "topic", "score"};
  for (const auto& measure : measures) {
    for (const auto& topic : table.evaluated_topics) {
      grid.rows.push_back({measure.name(), topic, fmt(table.score(measure, topic), spec)});
    }
    grid.rows.push_back({measure.name(), "all", fmt(arp(table, measure), spec)});
  }
  return grid.to_tsv();
}

std::string render_scores(const ScoreTable& table, std::span<const MeasureId> measures,
                          const OutputSpec& spec) {
  if (spec.format == OutputFormat::Json) {
    ordered_json root;
    root["run"] = table.run_tag;
    ordered_json topics = ordered_json::object();
    for (const auto& topic : table.evaluated_topics) {
      ordered_json row = ordered_json::object();
      for (const auto& measure : measures) {
        row[measure.name()] = table.score(measure, topic);
      }
      topics[topic] = std::move(row);
    }
    root["topics"] = std::move(topics);
    return dump(root);
  }
  Grid grid;
  grid.header.push_back("topic");
  for (const auto& measure : measures) {
    grid.header.push_back(measure.name());
  }
  for (const auto& topic : table.evaluated_topics) {
    std::vector<std::string> row{topic};
    for (const auto& measure : measures) {
      row.push_back(fmt(table.score(measure, topic), spec));
    }
    grid.rows.push_back(std::move(row));
  }
  return render_grid(grid, spec);
}

std::string render_arp(const ScoreTable& table, std::span<const MeasureId> measures,
                       const OutputSpec& spec) {
  if (spec.format == OutputFormat::Json) {
    ordered_json root;
    root["run"] = table.run_tag;
    root["topics"] = table.evaluated_topics.size();
    ordered_json values = ordered_json::object();
    for (const auto& measure : measures) {
      values[measure.name()] = arp(table, measure);
    }
    root["arp"] = std::move(values);
    return dump(root);
  }
  Grid grid;
  grid.header = {"measure", "arp"};
  for (const auto& measure : measures) {
    grid.rows.push_back({measure.name(), fmt(arp(table, measure), spec)});
  }
  return render_grid(grid, spec);
}

std::string render_replicability(const ReplicabilityReport& report, const OutputSpec& spec) {
  if (spec.format == OutputFormat::Json) {
    ordered_json root;
    root["system"] = report.system_tag;
    root["pivot"] = report.pivot_tag;
    root["ee1"] = report.ee1_label;
    root["ee2"] = report.ee2_label;
    ordered_json measures = ordered_json::object();
    for (const auto& [measure, rep] : report.measures) {
      ordered_json row;
      row["arp_ee1"] = rep.arp_ee1;
      row["arp_ee2"] = rep.arp_ee2;
      row["re_delta"] = rep.re_delta;
      row["er"] = json_opt(rep.er);
      row["ri"] = json_opt(rep.ri);
      row["ri_prime"] = json_opt(rep.ri_prime);
      row["delta_ri"] = json_opt(rep.delta_ri);
      row["p_value"] = rep.p_value;
      measures[measure.name()] = std::move(row);
    }
    root["measures"] = std::move(measures);
    return dump(root);
  }
  Grid grid;
  grid.header = {"measure", "arp_ee1", "arp_ee2", "re_delta", "er", "delta_ri", "p_value"};
  for (const auto& [measure, rep] : report.measures) {
    grid.rows.push_back({measure.name(), fmt(rep.arp_ee1, spec), fmt(rep.arp_ee2, spec),
                         fmt(rep.re_delta, spec), fmt_opt(rep.er, spec),
                         fmt_opt(rep.delta_ri, spec), fmt(rep.p_value, spec)});
  }
  return render_grid(grid, spec);
}

std::string render_comparison(const ComparisonReport& report, const OutputSpec& spec,
                              bool bold_best) {
  if (spec.format == OutputFormat::Json) {
    ordered_json root;
    root["baseline"] = report.baseline_tag;
    root["alpha"] = report.alpha;
    root["corrections"] = report.corrections;
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.rows) {
      ordered_json entry;
      entry["system"] = row.run_tag;
      entry["baseline"] = row.is_baseline;
      ordered_json values = ordered_json::object();
      for (const auto& measure : report.measures) {
        ordered_json cell;
        cell["arp"] = row.arps.at(measure);
        if (!row.is_baseline) {
          cell["p_value"] = row.p_values.at(measure);
          cell["significant"] = row.significant.at(measure);
        }
        values[measure.name()] = std::move(cell);
      }
      entry["measures"] = std::move(values);
      rows.push_back(std::move(entry));
    }
    root["systems"] = std::move(rows);
    return dump(root);
  }

  // Best score per measure, for optional bolding in markdown.
  std::map<MeasureId, double> best;
  for (const auto& measure : report.measures) {
    for (const auto& row : report.rows) {
      const double value = row.arps.at(measure);
      auto [it, inserted] = best.try_emplace(measure, value);
      if (!inserted) {
        it->second = std::max(it->second, value);
      }
    }
  }

  Grid grid;
  grid.header.push_back("system");
  for (const auto& measure : report.measures) {
    grid.header.push_back(measure.name());
    grid.header.push_back("p(" + measure.name() + ")");
  }
  for (const auto& row : report.rows) {
    std::vector<std::string> cells{row.run_tag};
    for (const auto& measure : report.measures) {
      std::string value = fmt(row.arps.at(measure), spec);
      if (!row.is_baseline && row.significant.at(measure)) {
        value += "*";
      }
      if (bold_best && spec.format == OutputFormat::Markdown &&
          row.arps.at(measure) == best.at(measure)) {
        value = "**" + value + "**";
      }
      cells.push_back(std::move(value));
      cells.push_back(row.is_baseline ? "-" : fmt(row.p_values.at(measure), spec));
    }
    grid.rows.push_back(std::move(cells));
  }
  return render_grid(grid, spec);
}

std::string render_evolution(const EvolutionStats& stats, const OutputSpec& spec) {
  if (spec.format == OutputFormat::Json) {
    ordered_json root;
    root["ee1"] = stats.ee1_label;
    root["ee2"] = stats.ee2_label;
    root["unit"] = unit_name(stats.unit);
    root["urls_ee1"] = stats.urls_ee1;
    root["urls_ee2"] = stats.urls_ee2;
    root["added"] = stats.added;
    root["removed"] = stats.removed;
    root["matched_urls"] = stats.matched_urls;
    root["increased"] = stats.increased;
    root["decreased"] = stats.decreased;
    root["unchanged"] = stats.unchanged;
    return dump(root);
  }
  Grid grid;
  grid.header = {"category", "urls"};
  grid.rows = {{"urls_ee1", std::to_string(stats.urls_ee1)},
               {"urls_ee2", std::to_string(stats.urls_ee2)},
               {"added", std::to_string(stats.added)},
               {"removed", std::to_string(stats.removed)},
               {"matched_urls", std::to_string(stats.matched_urls)},
               {"increased", std::to_string(stats.increased)},
               {"decreased", std::to_string(stats.decreased)},
               {"unchanged", std::to_string(stats.unchanged)}};
  return render_grid(grid, spec);
}

std::string render_collection(const CollectionStats& stats, const OutputSpec& spec) {
  if (spec.format == OutputFormat::Json) {
    auto summary = [](const LengthSummary& lengths) {
      ordered_json node;
      node["count"] = lengths.count;
      node["total"] = lengths.total;
      node["min"] = lengths.min;
      node["max"] = lengths.max;
      node["mean"] = lengths.mean;
      return node;
    };
    ordered_json root;
    root["unit"] = unit_name(stats.unit);
    root["documents"] = summary(stats.documents);
    root["queries"] = summary(stats.queries);
    root["excluded_queries"] = stats.excluded_queries;
    return dump(root);
  }
  Grid grid;
  grid.header = {"subject", "count", "total", "min", "max", "mean"};
  auto row = [&](const char* label, const LengthSummary& lengths) {
    grid.rows.push_back({label, std::to_string(lengths.count), std::to_string(lengths.total),
                         std::to_string(lengths.min), std::to_string(lengths.max),
                         fmt(lengths.mean, spec)});
  };
  row(stats.unit == LengthUnit::Tokens ? "documents_tokens" : "documents_chars",
      stats.documents);
  row("queries_tokens", stats.queries);
  grid.rows.push_back(
      {"excluded_queries", std::to_string(stats.excluded_queries), "-", "-", "-", "-"});
  return render_grid(grid, spec);
}

std::string render_qrels(const QrelsDistribution& dist, const OutputSpec& spec) {
  if (spec.format == OutputFormat::Json) {
    auto summary = [](const CountSummary& counts) {
      ordered_json node;
      node["total"] = counts.total;
      node["min"] = counts.min;
      node["max"] = counts.max;
      node["mean"] = counts.mean;
      return node;
    };
    ordered_json root;
    root["topics"] = dist.topics;
    root["judgments_per_topic"] = summary(dist.overall);
    ordered_json grades = ordered_json::object();
    for (const auto& [grade, counts] : dist.per_grade) {
      grades[std::to_string(grade)] = summary(counts);
    }
    root["per_grade"] = std::move(grades);
    return dump(root);
  }
  Grid grid;
  grid.header = {"grade", "total", "min", "max", "mean"};
  auto row = [&](const std::string& label, const CountSummary& counts) {
    grid.rows.push_back({label, std::to_string(counts.total), std::to_string(counts.min),
                         std::to_string(counts.max), fmt(counts.mean, spec)});
  };
  row("all", dist.overall);
  for (const auto& [grade, counts] : dist.per_grade) {
    row(std::to_string(grade), counts);
  }
  return render_grid(grid, spec);
}

std::string render_alignment(const TopicAlignment& alignment, const OutputSpec& spec) {
  if (spec.format == OutputFormat::Json) {
    ordered_json root;
    root["sets"] = alignment.set_labels;
    ordered_json entries = ordered_json::array();
    for (const auto& entry : alignment.entries) {
      ordered_json item;
      item["key"] = entry.key;
      item["topics"] = entry.ids;
      entries.push_back(std::move(item));
    }
    root["core_topics"] = std::move(entries);
    return dump(root);
  }
  Grid grid;
  grid.header.push_back("key");
  for (const auto& label : alignment.set_labels) {
    grid.header.push_back(label.empty() ? "set" : label);
  }
  for (const auto& entry : alignment.entries) {
    std::vector<std::string> row{entry.key};
    row.insert(row.end(), entry.ids.begin(), entry.ids.end());
    grid.rows.push_back(std::move(row));
  }
  return render_grid(grid, spec);
}

std::string render_sweep(const SweepResult& sweep, const OutputSpec& spec) {
  if (spec.format == OutputFormat::Json) {
    ordered_json root;
    root["best_k"] = sweep.best_k;
    ordered_json points = ordered_json::array();
    for (const auto& point : sweep.points) {
      ordered_json item;
      item["k"] = point.k;
      item["arp"] = point.arp;
      points.push_back(std::move(item));
    }
    root["points"] = std::move(points);
    return dump(root);
  }
  Grid grid;
  grid.header = {"k", "arp", "best"};
  for (const auto& point : sweep.points) {
    grid.rows.push_back(
        {shortest_double(point.k), fmt(point.arp, spec), point.k == sweep.best_k ? "*" : ""});
  }
  return render_grid(grid, spec);
}

std::string render_drift(std::span<const std::pair<std::string, double>> drift,
                         const MeasureId& measure, const OutputSpec& spec) {
  if (spec.format == OutputFormat::Json) {
    ordered_json root;
    root["measure"] = measure.name();
    ordered_json rows = ordered_json::array();
    for (const auto& [topic, delta] : drift) {
      ordered_json item;
      item["topic"] = topic;
      item["delta"] = delta;
      rows.push_back(std::move(item));
    }
    root["topics"] = std::move(rows);
    return dump(root);
  }
  Grid grid;
  grid.header = {"topic", "delta_" + measure.name()};
  for (const auto& [topic, delta] : drift) {
    grid.rows.push_back({topic, fmt(delta, spec)});
  }
  return render_grid(grid, spec);
}

}  // namespace tireval
