#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kmodes/analysis.hpp"
#include "kmodes/experiment.hpp"
#include "kmodes/io.hpp"
#include "kmodes/knee.hpp"

namespace fs = std::filesystem;
using namespace kmodes;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIngest = 2;
constexpr int kExitConfig = 3;

struct CommonArgs {
  std::string data;
  std::string label_col;
  std::string missing_token = "?";
};

LoadedDataset load(const CommonArgs& args) {
  LoadOptions opts;
  opts.missing_token = args.missing_token;
  if (!args.label_col.empty()) opts.label_column = args.label_col;
  return load_dataset(args.data, opts);
}

std::vector<InitMethod> parse_inits(const std::string& init, std::uint64_t seed) {
  std::vector<InitMethod> methods;
  if (init == "all") {
    for (InitKind kind : {InitKind::random, InitKind::huang, InitKind::cao,
                          InitKind::matching}) {
      methods.push_back({kind, seed});
    }
    return methods;
  }
  const auto kind = init_kind_from_label(init);
  if (!kind) {
    throw std::invalid_argument("unknown init method '" + init +
                                "' (expected random|huang|cao|matching|all)");
  }
  methods.push_back({*kind, seed});
  return methods;
}

int knee_upper_bound(const Dataset& ds, std::optional<int> k_max) {
  auto [lo, hi] = k_bounds(ds.n_rows());
  if (k_max) hi = std::min(hi, *k_max);
  hi = std::min(hi, static_cast<int>(ds.distinct_row_count()));
  if (hi < lo) {
    throw std::invalid_argument("knee range is empty; choose k explicitly");
  }
  return hi;
}

int resolve_k(const std::string& spec, const LoadedDataset& loaded,
              const FitOptions& options) {
  if (spec == "classes") {
    if (!loaded.report.adjusted_classes) {
      throw std::invalid_argument("--k classes needs --label-col");
    }
    return *loaded.report.adjusted_classes;
  }
  if (spec == "knee") {
    const int hi = knee_upper_bound(loaded.dataset, std::nullopt);
    const auto curve = build_cost_curve(loaded.dataset, {2, hi},
                                        InitMethod{InitKind::cao, {}}, 1, options);
    return knee(curve).k;
  }
  try {
    std::size_t consumed = 0;
    const int k = std::stoi(spec, &consumed);
    if (consumed != spec.size() || k < 1) throw std::invalid_argument(spec);
    return k;
  } catch (const std::exception&) {
    throw std::invalid_argument("--k must be a positive integer, 'classes' or 'knee'");
  }
}

int cmd_run(const CommonArgs& common, const std::string& init_spec,
            const std::string& k_spec, int reps, std::uint64_t seed,
            const std::string& out_dir, int max_iter) {
  const auto loaded = load(common);
  FitOptions options;
  options.max_iterations = max_iter;

  const int k = resolve_k(k_spec, loaded, options);
  const auto methods = parse_inits(init_spec, seed);
  const std::string label = fs::path(common.data).stem().string();

  std::vector<RunRecord> records;
  for (const auto& method : methods) {
    const auto part =
        run_experiment(loaded.dataset, label, k, method, reps, seed, options);
    records.insert(records.end(), part.begin(), part.end());
  }

  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  write_records_csv(dir / "records.csv", records);
  const auto summary = summarize(records);
  write_summary_csv(dir / "summary.csv", summary);
  write_ecdf_csv(dir / "ecdf_initial.csv", records, false);
  write_ecdf_csv(dir / "ecdf_final.csv", records, true);
  write_scatter_csv(dir / "scatter.csv", records);
  write_ingest_json(dir / "ingest.json", loaded.report);

  std::cout << label << ": n = " << loaded.report.adjusted_n << ", m = "
            << loaded.report.m << ", k = " << k << ", reps = " << reps << "\n\n"
            << format_summary_table(summary) << "\nwrote " << dir.string() << "\n";
  return kExitOk;
}

int cmd_knee(const CommonArgs& common, std::optional<int> k_max,
             const std::string& out_dir) {
  const auto loaded = load(common);
  const FitOptions options;
  const int hi = knee_upper_bound(loaded.dataset, k_max);

  const auto curve = build_cost_curve(loaded.dataset, {2, hi},
                                      InitMethod{InitKind::cao, {}}, 1, options);
  const auto result = knee(curve);

  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  {
    std::ofstream out(dir / "curve.csv");
    out << "k,final_cost\n";
    for (const auto& [k, cost] : curve.points) {
      out << k << ',' << static_cast<long long>(cost) << "\n";
    }
  }
  {
    nlohmann::json j;
    j["k"] = result.k;
    j["degenerate"] = result.degenerate;
    j["k_min"] = 2;
    j["k_max"] = hi;
    std::ofstream out(dir / "knee.json");
    out << j.dump(2) << "\n";
  }
  write_ingest_json(dir / "ingest.json", loaded.report);

  std::cout << "knee at k = " << result.k << " (candidates 2.." << hi << ")";
  if (result.degenerate) std::cout << " [degenerate curve]";
  std::cout << "\nwrote " << dir.string() << "\n";
  return kExitOk;
}

int cmd_fitness(const CommonArgs& common, int reps, std::uint64_t seed,
                const std::string& out_dir) {
  const auto loaded = load(common);
  const auto report = fitness(loaded.dataset, reps, seed);

  const auto pca = first_principal_component(loaded.dataset);
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  if (!pca.degenerate) {
    write_component_summary_csv(dir / "component_summary.csv",
                                summarize_component(pca.scores));
  } else {
    std::cerr << "warning: dataset has no variance; component_summary.csv skipped\n";
  }

  nlohmann::json j;
  j["c_cao"] = report.c_cao;
  j["c_match"] = report.c_match;
  j["fitness"] = report.fitness;
  j["reps"] = report.reps_used;
  j["k"] = report.k;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-modes clustering with seeded initialisation experiments"};
  app.require_subcommand(1);

  CommonArgs common;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--data", common.data, "delimited data file with a header row")
        ->required();
    cmd->add_option("--label-col", common.label_col,
                    "name of the class column (excluded from the attributes)");
    cmd->add_option("--missing-token", common.missing_token,
                    "cell marking a missing value (default '?')");
  };

  auto* run = app.add_subcommand("run", "cluster a dataset and emit run records");
  std::string init_spec, k_spec, out_dir;
  int reps = 1;
  std::uint64_t seed = 0;
  int max_iter = 100;
  add_common(run);
  run->add_option("--init", init_spec, "random|huang|cao|matching|all")->required();
  run->add_option("--k", k_spec, "cluster count, 'classes' or 'knee'")->required();
  run->add_option("--reps", reps, "repetitions per initialiser");
  run->add_option("--seed", seed, "base seed; repetition r uses seed + r");
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--max-iter", max_iter, "iteration cap per run");

  auto* knee_cmd = app.add_subcommand("knee", "choose k by knee-point detection");
  std::optional<int> k_max;
  std::string knee_out;
  add_common(knee_cmd);
  knee_cmd->add_option("--k-max", k_max, "upper candidate bound (default floor(sqrt(N)))");
  knee_cmd->add_option("--out", knee_out, "output directory")->required();

  auto* fit_cmd = app.add_subcommand("fitness",
                                     "cao-versus-matching fitness at k = 3");
  int fit_reps = 25;
  std::uint64_t fit_seed = 0;
  std::string fit_out = ".";
  add_common(fit_cmd);
  fit_cmd->add_option("--reps", fit_reps, "matching repetitions (default 25)");
  fit_cmd->add_option("--seed", fit_seed, "base seed");
  fit_cmd->add_option("--out", fit_out, "directory for component_summary.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) {
      return cmd_run(common, init_spec, k_spec, reps, seed, out_dir, max_iter);
    }
    if (knee_cmd->parsed()) {
      return cmd_knee(common, k_max, knee_out);
    }
    return cmd_fitness(common, fit_reps, fit_seed, fit_out);
  } catch (const IngestError& e) {
    std::cerr << "ingestion error: " << e.what() << "\n";
    return kExitIngest;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
