// Copyright 2026 The Cyclex Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "artifacts.h"
#include "cyclex/error.h"
#include "cyclex/pipeline.h"
#include "cyclex/stats.h"
#include "cyclex/text.h"

namespace cyclex {
namespace {

namespace fs = std::filesystem;
using internal::ArtifactWriter;
using internal::ReadTable;
using internal::SeedComment;
using Table = std::vector<std::vector<std::string>>;

double Cell(const Table& table, size_t row, size_t col, const fs::path& path) {
  if (row >= table.size() || col >= table[row].size()) {
    throw Error(fmt::format("malformed artifact {} (row {})", path.string(), row));
  }
  try {
    return std::stod(table[row][col]);
  } catch (const std::exception&) {
    throw Error(fmt::format("malformed number \"{}\" in {}", table[row][col],
                            path.string()));
  }
}

size_t Column(const Table& table, std::string_view name, const fs::path& path) {
  if (!table.empty()) {
    for (size_t i = 0; i < table[0].size(); ++i) {
      if (table[0][i] == name) return i;
    }
  }
  throw Error(fmt::format("artifact {} has no column {}", path.string(), name));
}

std::string QuartileCells(const Quartiles& q) {
  return fmt::format("{} | {} | {} | {} | {}", FormatFixed3(q.min),
                     FormatFixed3(q.q1), FormatFixed3(q.median),
                     FormatFixed3(q.q3), FormatFixed3(q.max));
}

constexpr std::string_view kQuartileHeader =
    "| min | 25% | 50% | 75% | max |\n";
constexpr std::string_view kQuartileRule =
    "|---|---:|---:|---:|---:|---:|\n";

std::string Table2(const ArtifactLayout& layout,
                   const std::vector<size_t>& cutoffs) {
  std::ifstream in(layout.ground_truth(), std::ios::binary);
  if (!in) throw Error("missing artifact " + layout.ground_truth().string());
  std::map<size_t, std::vector<double>> per_r;
  std::string line;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    auto record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.contains("per_r_precision")) {
      throw Error("malformed artifact " + layout.ground_truth().string());
    }
    for (size_t r : cutoffs) {
      per_r[r].push_back(
          record["per_r_precision"].value(std::to_string(r), 0.0));
    }
  }
  std::string text = "| precision " + std::string(kQuartileHeader) +
                     std::string(kQuartileRule);
  for (size_t r : cutoffs) {
    if (per_r[r].empty()) {
      text += fmt::format("| top-{} | no queries | | | | |\n", r);
      continue;
    }
    text += fmt::format("| top-{} | {} |\n", r, QuartileCells(Summarize(per_r[r])));
  }
  return text;
}

std::string Table3(const ArtifactLayout& layout) {
  fs::path path = layout.components();
  Table table = ReadTable(path, '\t');
  static constexpr std::pair<std::string_view, std::string_view> kRows[] = {
      {"size_ratio", "% size"},
      {"query_node_ratio", "% query nodes"},
      {"article_ratio", "% articles"},
      {"category_ratio", "% categories"},
      {"expansion_ratio", "expansion ratio"},
  };
  std::string text = "| largest component " + std::string(kQuartileHeader) +
                     std::string(kQuartileRule);
  for (const auto& [column, label] : kRows) {
    size_t col = Column(table, column, path);
    std::vector<double> values;
    for (size_t row = 1; row < table.size(); ++row) {
      values.push_back(Cell(table, row, col, path));
    }
    if (values.empty()) {
      text += fmt::format("| {} | no query graphs | | | | |\n", label);
    } else {
      text += fmt::format("| {} | {} |\n", label, QuartileCells(Summarize(values)));
    }
  }
  return text;
}

std::string Table4(const ArtifactLayout& layout,
                   const std::vector<size_t>& cutoffs) {
  fs::path path = layout.table4();
  Table table = ReadTable(path, ',');
  std::string text = "| configuration |";
  std::string rule = "|---|";
  for (size_t r : cutoffs) {
    text += fmt::format(" top-{} |", r);
    rule += "---:|";
  }
  text += " flagged |\n" + rule + "---|\n";
  size_t label_col = Column(table, "configuration", path);
  size_t flagged_col = Column(table, "flagged", path);
  for (size_t row = 1; row < table.size(); ++row) {
    text += "| " + table[row].at(label_col) + " |";
    for (size_t r : cutoffs) {
      size_t col = Column(table, fmt::format("top{}", r), path);
      text += " " + FormatFixed3(Cell(table, row, col, path)) + " |";
    }
    std::string flagged =
        flagged_col < table[row].size() ? table[row][flagged_col] : "";
    text += " " + flagged + " |\n";
  }
  return text;
}

void WriteText(const fs::path& path, std::uint64_t seed,
               std::string_view body) {
  ArtifactWriter writer(path);
  if (path.extension() == ".md") {
    writer.stream() << "<!-- rng_seed=" << seed << " -->\n\n" << body;
  } else {
    writer.stream() << SeedComment(seed) << '\n' << body;
  }
  writer.Commit();
}

}  // namespace

void WriteReport(const ArtifactLayout& layout, std::uint64_t rng_seed,
                 const std::vector<size_t>& cutoffs, size_t max_len) {
  // Read everything before writing anything.
  std::string table2 = Table2(layout, cutoffs);
  std::string table3 = Table3(layout);
  std::string table4 = Table4(layout, cutoffs);

  fs::path aggregates_path = layout.aggregates();
  Table aggregates = ReadTable(aggregates_path, ',');
  fs::path cycles_path = layout.cycles();
  Table cycles = ReadTable(cycles_path, '\t');
  bool no_cycles = cycles.size() <= 1;

  fs::path dir = layout.report_dir();
  fs::path figs = dir / "figs";
  WriteText(dir / "table2.md", rng_seed, table2);
  WriteText(dir / "table3.md", rng_seed, table3);
  WriteText(dir / "table4.md", rng_seed, table4);

  struct Series {
    std::string_view file;
    std::string_view column;
    std::string_view header;
  };
  static constexpr Series kSeries[] = {
      {"contribution_by_length.csv", "mean_contribution",
       "length,mean_contribution,mean_query_contribution"},
      {"cycle_count_by_length.csv", "cycles",
       "length,cycles,mean_cycles_per_query"},
      {"category_ratio_by_length.csv", "mean_category_ratio",
       "length,mean_category_ratio"},
      {"density_by_length.csv", "mean_density", "length,mean_density"},
  };
  size_t length_col = Column(aggregates, "length", aggregates_path);
  for (const Series& series : kSeries) {
    std::vector<size_t> cols;
    for (const std::string& name : Split(series.header, ',')) {
      cols.push_back(Column(aggregates, name, aggregates_path));
    }
    std::string body = std::string(series.header) + "\n";
    if (no_cycles) body = "# no cycles\n" + body;
    for (size_t row = 1; row < aggregates.size(); ++row) {
      if (Cell(aggregates, row, length_col, aggregates_path) > max_len) continue;
      std::string line;
      for (size_t col : cols) {
        if (!line.empty()) line += ',';
        line += aggregates[row].at(col);
      }
      body += line + "\n";
    }
    WriteText(figs / series.file, rng_seed, body);
  }

  std::string pairs = "query_id,length,density,contribution\n";
  if (no_cycles) pairs = "# no cycles\n" + pairs;
  size_t q_col = Column(cycles, "query_id", cycles_path);
  size_t len_col = Column(cycles, "length", cycles_path);
  size_t density_col = Column(cycles, "density", cycles_path);
  size_t contribution_col = Column(cycles, "contribution", cycles_path);
  for (size_t row = 1; row < cycles.size(); ++row) {
    const auto& cells = cycles[row];
    pairs += fmt::format("{},{},{},{}\n", cells.at(q_col), cells.at(len_col),
                         cells.at(density_col), cells.at(contribution_col));
  }
  WriteText(figs / "density_vs_contribution.csv", rng_seed, pairs);

  std::string report = "# Cycle analysis report\n\n";
  report += "## Ground-truth precision\n\n" + table2 + "\n";
  report += "## Largest connected component\n\n" + table3 + "\n";
  report += "## Cycles\n\n";
  if (no_cycles) {
    report += "no cycles\n\n";
  } else {
    report += "| length | cycles | mean contribution | mean category ratio | "
              "mean density |\n|---:|---:|---:|---:|---:|\n";
    for (size_t row = 1; row < aggregates.size(); ++row) {
      const auto& cells = aggregates[row];
      report += fmt::format(
          "| {} | {} | {} | {} | {} |\n",
          cells.at(length_col),
          cells.at(Column(aggregates, "cycles", aggregates_path)),
          cells.at(Column(aggregates, "mean_contribution", aggregates_path)),
          cells.at(Column(aggregates, "mean_category_ratio", aggregates_path)),
          cells.at(Column(aggregates, "mean_density", aggregates_path)));
    }
    report += "\n";
  }
  report += "## Expansion precision\n\n" + table4;
  WriteText(dir / "report.md", rng_seed, report);
}

}  // namespace cyclex
