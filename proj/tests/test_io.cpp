#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "kmodes/io.hpp"

using namespace kmodes;
namespace fs = std::filesystem;

namespace {

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& name, const std::string& content) {
    path = fs::temp_directory_path() / ("kmodes_io_" + name);
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { fs::remove(path); }
};

}  // namespace

TEST_CASE("a clean file loads completely") {
  TempFile f("clean.csv",
             "colour,size,class\n"
             "red,small,yes\n"
             "blue,large,no\n"
             "red,large,yes\n");
  LoadOptions opts;
  opts.label_column = "class";
  const auto loaded = load_dataset(f.path, opts);

  CHECK(loaded.report.raw_n == 3);
  CHECK(loaded.report.adjusted_n == 3);
  CHECK(loaded.report.m == 2);
  CHECK(loaded.report.dropped_rows.empty());
  CHECK(loaded.report.raw_classes == 2);
  CHECK(loaded.report.adjusted_classes == 2);
  CHECK(loaded.labels == std::vector<std::string>{"yes", "no", "yes"});

  // First-appearance coding: red = 0, blue = 1.
  CHECK(loaded.dataset.row(0)[0] == 0);
  CHECK(loaded.dataset.row(1)[0] == 1);
  CHECK(loaded.dataset.space().label(0, 0) == "red");
}

TEST_CASE("rows with missing cells are dropped and reported") {
  TempFile f("missing.csv",
             "a,b,class\n"
             "x,1,p\n"
             "?,2,p\n"
             "y,?,q\n"
             "x,2,?\n"
             "y,1,q\n");
  LoadOptions opts;
  opts.label_column = "class";
  const auto loaded = load_dataset(f.path, opts);

  CHECK(loaded.report.raw_n == 5);
  CHECK(loaded.report.adjusted_n == 2);
  CHECK(loaded.report.dropped_rows == std::vector<std::int64_t>{1, 2, 3});
  // Row ids keep pointing at the source rows.
  CHECK(loaded.dataset.row_id(0) == 0);
  CHECK(loaded.dataset.row_id(1) == 4);
  // The dropped q row still counts toward the raw classes.
  CHECK(loaded.report.raw_classes == 2);
  CHECK(loaded.report.adjusted_classes == 2);
}

TEST_CASE("classes shrink when filtering removes whole labels") {
  TempFile f("classes.csv",
             "a,class\n"
             "x,one\n"
             "?,two\n"
             "y,one\n");
  LoadOptions opts;
  opts.label_column = "class";
  const auto loaded = load_dataset(f.path, opts);
  CHECK(loaded.report.raw_classes == 2);
  CHECK(loaded.report.adjusted_classes == 1);
}

TEST_CASE("a custom missing token") {
  TempFile f("token.csv",
             "a,b\n"
             "x,1\n"
             "NA,2\n");
  LoadOptions opts;
  opts.missing_token = "NA";
  const auto loaded = load_dataset(f.path, opts);
  CHECK(loaded.report.adjusted_n == 1);
  CHECK(loaded.labels.empty());
  CHECK_FALSE(loaded.report.raw_classes.has_value());
}

TEST_CASE("tab-delimited files are sniffed") {
  TempFile f("tabs.tsv",
             "a\tb\n"
             "x\t1\n"
             "y\t2\n");
  const auto loaded = load_dataset(f.path);
  CHECK(loaded.report.m == 2);
  CHECK(loaded.report.adjusted_n == 2);
}

TEST_CASE("ingestion failure modes") {
  CHECK_THROWS_AS(load_dataset("/nonexistent/nowhere.csv"), IngestError);

  TempFile empty("empty.csv", "");
  CHECK_THROWS_AS(load_dataset(empty.path), IngestError);

  TempFile all_missing("all_missing.csv", "a\n?\n?\n");
  CHECK_THROWS_AS(load_dataset(all_missing.path), IngestError);

  TempFile f("label.csv", "a,b\nx,1\n");
  LoadOptions opts;
  opts.label_column = "nope";
  CHECK_THROWS_AS(load_dataset(f.path, opts), IngestError);

  TempFile ragged("ragged.csv", "a,b\nx\n");
  CHECK_THROWS_AS(load_dataset(ragged.path), IngestError);
}

TEST_CASE("ingest report serialises to json") {
  IngestReport report;
  report.source = "demo.csv";
  report.raw_n = 10;
  report.adjusted_n = 8;
  report.m = 4;
  report.raw_classes = 3;
  report.adjusted_classes = 2;
  report.dropped_rows = {1, 7};

  const auto parsed = nlohmann::json::parse(ingest_report_json(report));
  CHECK(parsed["raw_n"] == 10);
  CHECK(parsed["adjusted_n"] == 8);
  CHECK(parsed["m"] == 4);
  CHECK(parsed["raw_classes"] == 3);
  CHECK(parsed["adjusted_classes"] == 2);
  CHECK(parsed["dropped_rows"] == nlohmann::json::array({1, 7}));
}
