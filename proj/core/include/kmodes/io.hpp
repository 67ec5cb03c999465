#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmodes/dataset.hpp"

namespace kmodes {

/// File or content problem during dataset loading. Mapped to exit code 2 by
/// the CLI.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// What ingestion saw and what it kept.
struct IngestReport {
  std::string source;
  std::int64_t raw_n = 0;
  std::int64_t adjusted_n = 0;
  int m = 0;
  std::optional<int> raw_classes;
  std::optional<int> adjusted_classes;
  std::vector<std::int64_t> dropped_rows;  // 0-based data-row indices
};

struct LoadOptions {
  std::string missing_token = "?";
  std::optional<std::string> label_column;
  /// 0 = sniff from the header among comma, tab and semicolon.
  char delimiter = 0;
};

struct LoadedDataset {
  Dataset dataset;
  /// Class label of every kept row; empty when no label column was named.
  std::vector<std::string> labels;
  IngestReport report;
};

/// Reads a delimited text file with a header row. Rows containing the
/// missing token in any attribute or label cell are dropped; the label
/// column, when named, is excluded from the attribute space. Codes are
/// assigned in first-appearance order over the kept rows.
LoadedDataset load_dataset(const std::filesystem::path& path,
                           const LoadOptions& options = {});

std::string ingest_report_json(const IngestReport& report);
void write_ingest_json(const std::filesystem::path& path, const IngestReport& report);

}  // namespace kmodes
