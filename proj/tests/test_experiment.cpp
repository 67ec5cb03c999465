#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "kmodes/experiment.hpp"
#include "support/test_support.hpp"

using namespace kmodes;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Strips the trailing time column of every record line, as the one field
// that may legitimately differ between runs.
std::string without_time_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    const auto cut = line.rfind(',');
    out += line.substr(0, cut);
    out += '\n';
  }
  return out;
}

}  // namespace

TEST_CASE("cao records are replicated verbatim") {
  std::mt19937 gen(21);
  const auto ds = testsupport::random_dataset(gen, 25, 3, 3);
  const auto records =
      run_experiment(ds, "demo", 3, InitMethod{InitKind::cao, {}}, 5, 0);
  REQUIRE(records.size() == 5);
  for (const auto& r : records) {
    CHECK(r.initial_cost == records[0].initial_cost);
    CHECK(r.final_cost == records[0].final_cost);
    CHECK(r.n_iterations == records[0].n_iterations);
    CHECK(r.elapsed_seconds == records[0].elapsed_seconds);
    CHECK_FALSE(r.seed.has_value());
    CHECK(r.init_label == "cao");
  }
}

TEST_CASE("stochastic runs are reproducible per base seed") {
  std::mt19937 gen(22);
  const auto ds = testsupport::random_dataset(gen, 25, 3, 3);
  const auto a =
      run_experiment(ds, "demo", 3, InitMethod{InitKind::matching, {}}, 4, 10);
  const auto b =
      run_experiment(ds, "demo", 3, InitMethod{InitKind::matching, {}}, 4, 10);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].seed == b[i].seed);
    CHECK(*a[i].seed == 10 + i);
    CHECK(a[i].initial_cost == b[i].initial_cost);
    CHECK(a[i].final_cost == b[i].final_cost);
    CHECK(a[i].n_iterations == b[i].n_iterations);
  }
}

TEST_CASE("summary statistics") {
  RunRecord r1, r2;
  r1.init_label = r2.init_label = "huang";
  r1.initial_cost = 10;
  r2.initial_cost = 20;
  r1.final_cost = 10;
  r2.final_cost = 20;
  r1.n_iterations = r2.n_iterations = 2;

  const auto rows = summarize(std::vector<RunRecord>{r1, r2});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n_runs == 2);
  CHECK(rows[0].initial_cost_mean == doctest::Approx(15.0));
  CHECK(rows[0].initial_cost_std == doctest::Approx(7.0710678));
  CHECK(rows[0].n_iterations_std == doctest::Approx(0.0));

  const auto single = summarize(std::vector<RunRecord>{r1});
  CHECK(single[0].initial_cost_mean == doctest::Approx(10.0));
  CHECK(single[0].initial_cost_std == doctest::Approx(0.0));

  CHECK_THROWS_AS(summarize(std::vector<RunRecord>{}), std::invalid_argument);
}

TEST_CASE("summary of a deterministic method prints zero deviations") {
  std::mt19937 gen(23);
  const auto ds = testsupport::random_dataset(gen, 20, 2, 3);
  const auto records =
      run_experiment(ds, "demo", 2, InitMethod{InitKind::cao, {}}, 3, 0);
  const auto rows = summarize(records);

  const fs::path path = fs::temp_directory_path() / "kmodes_summary_test.csv";
  write_summary_csv(path, rows);
  const std::string text = slurp(path);
  fs::remove(path);
  CHECK(text.find(",0.000") != std::string::npos);
  CHECK(text.find("cao") != std::string::npos);
}

TEST_CASE("ecdf steps") {
  const auto single = ecdf({5.0});
  REQUIRE(single.size() == 1);
  CHECK(single[0] == std::pair<double, double>{5.0, 1.0});

  const auto steps = ecdf({1, 2, 2, 4});
  REQUIRE(steps.size() == 3);
  CHECK(steps[0] == std::pair<double, double>{1.0, 0.25});
  CHECK(steps[1] == std::pair<double, double>{2.0, 0.75});
  CHECK(steps[2] == std::pair<double, double>{4.0, 1.0});

  std::mt19937 gen(24);
  std::vector<double> values(101);
  for (auto& v : values) v = static_cast<double>(gen() % 17);
  const auto random_steps = ecdf(values);
  double prev = 0.0;
  for (const auto& [value, fraction] : random_steps) {
    CHECK(fraction > prev);
    prev = fraction;
  }
  CHECK(prev == 1.0);

  CHECK_THROWS_AS(ecdf({}), std::invalid_argument);
}

TEST_CASE("record files are byte-identical apart from the time column") {
  std::mt19937 gen(25);
  const auto ds = testsupport::random_dataset(gen, 30, 3, 3);

  const fs::path dir = fs::temp_directory_path() / "kmodes_records_test";
  fs::create_directories(dir);

  std::string first, second;
  for (int round = 0; round < 2; ++round) {
    std::vector<RunRecord> records;
    for (InitKind kind : {InitKind::cao, InitKind::huang, InitKind::matching}) {
      const auto part = run_experiment(ds, "demo", 3, InitMethod{kind, {}}, 4, 42);
      records.insert(records.end(), part.begin(), part.end());
    }
    const fs::path path = dir / ("records" + std::to_string(round) + ".csv");
    write_records_csv(path, records);
    (round == 0 ? first : second) = slurp(path);

    write_ecdf_csv(dir / "ecdf_initial.csv", records, false);
    write_ecdf_csv(dir / "ecdf_final.csv", records, true);
    write_scatter_csv(dir / "scatter.csv", records);
    CHECK(slurp(dir / "ecdf_initial.csv").starts_with("init,cost,fraction"));
    CHECK(slurp(dir / "scatter.csv").starts_with("init,initial_cost,final_cost"));
  }
  CHECK(without_time_column(first) == without_time_column(second));
  fs::remove_all(dir);
}

TEST_CASE("the formatted table mirrors the mean (std) layout") {
  SummaryRow row;
  row.init_label = "cao";
  row.n_runs = 3;
  row.initial_cost_mean = 3118.0;
  row.final_cost_mean = 2774.0;
  row.n_iterations_mean = 4.0;
  const auto table = format_summary_table(std::vector<SummaryRow>{row});
  CHECK(table.find("3118.00 (0.000)") != std::string::npos);
  CHECK(table.find("2774.00 (0.000)") != std::string::npos);
}
