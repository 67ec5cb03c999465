#include "kmodes/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace kmodes {

namespace {

char sniff_delimiter(const std::string& header) {
  const char candidates[] = {',', '\t', ';'};
  char best = ',';
  std::size_t best_count = 0;
  for (char c : candidates) {
    const auto count = static_cast<std::size_t>(
        std::count(header.begin(), header.end(), c));
    if (count > best_count) {
      best_count = count;
      best = c;
    }
  }
  return best;
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, delim)) cells.push_back(cell);
  if (!line.empty() && line.back() == delim) cells.emplace_back();
  return cells;
}

void strip_cr(std::string& s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
}

}  // namespace

LoadedDataset load_dataset(const std::filesystem::path& path,
                           const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path.string());

  std::string header;
  if (!std::getline(in, header)) throw IngestError("empty file: " + path.string());
  strip_cr(header);
  const char delim = options.delimiter ? options.delimiter : sniff_delimiter(header);
  const std::vector<std::string> columns = split(header, delim);
  if (columns.empty()) throw IngestError("no columns in header of " + path.string());

  std::size_t label_index = columns.size();
  if (options.label_column) {
    const auto it = std::find(columns.begin(), columns.end(), *options.label_column);
    if (it == columns.end()) {
      throw IngestError("unknown label column '" + *options.label_column + "'");
    }
    label_index = static_cast<std::size_t>(it - columns.begin());
  }
  const bool has_label = label_index < columns.size();
  const std::size_t m = columns.size() - (has_label ? 1 : 0);
  if (m == 0) throw IngestError("no attribute columns besides the label");

  IngestReport report;
  report.source = path.filename().string();
  report.m = static_cast<int>(m);

  std::vector<std::vector<std::string>> kept_rows;
  std::vector<std::string> kept_labels;
  std::vector<std::int64_t> kept_ids;
  std::set<std::string> raw_classes, kept_classes;

  std::string line;
  std::int64_t data_row = -1;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    ++data_row;
    std::vector<std::string> cells = split(line, delim);
    if (cells.size() != columns.size()) {
      throw IngestError("row " + std::to_string(data_row) + " has " +
                        std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(columns.size()));
    }
    ++report.raw_n;
    if (has_label && cells[label_index] != options.missing_token) {
      raw_classes.insert(cells[label_index]);
    }

    const bool missing = std::any_of(cells.begin(), cells.end(),
                                     [&](const std::string& c) {
                                       return c == options.missing_token;
                                     });
    if (missing) {
      report.dropped_rows.push_back(data_row);
      continue;
    }

    std::vector<std::string> attrs;
    attrs.reserve(m);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (j != label_index) attrs.push_back(std::move(cells[j]));
    }
    if (has_label) {
      kept_classes.insert(cells[label_index]);
      kept_labels.push_back(std::move(cells[label_index]));
    }
    kept_rows.push_back(std::move(attrs));
    kept_ids.push_back(data_row);
  }

  if (kept_rows.empty()) {
    throw IngestError("no complete rows left after filtering " + path.string());
  }
  report.adjusted_n = static_cast<std::int64_t>(kept_rows.size());
  if (has_label) {
    report.raw_classes = static_cast<int>(raw_classes.size());
    report.adjusted_classes = static_cast<int>(kept_classes.size());
  }

  return LoadedDataset{dataset_from_labels(kept_rows, std::move(kept_ids)),
                       std::move(kept_labels), std::move(report)};
}

std::string ingest_report_json(const IngestReport& report) {
  nlohmann::json j;
  j["source"] = report.source;
  j["raw_n"] = report.raw_n;
  j["adjusted_n"] = report.adjusted_n;
  j["m"] = report.m;
  if (report.raw_classes) j["raw_classes"] = *report.raw_classes;
  if (report.adjusted_classes) j["adjusted_classes"] = *report.adjusted_classes;
  j["dropped_rows"] = report.dropped_rows;
  return j.dump(2);
}

void write_ingest_json(const std::filesystem::path& path, const IngestReport& report) {
  std::ofstream out(path);
  if (!out) throw IngestError("cannot write " + path.string());
  out << ingest_report_json(report) << "\n";
}

}  // namespace kmodes
