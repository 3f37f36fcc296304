#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rankassign/bench.hpp"
#include "rankassign/exact_solver.hpp"
#include "rankassign/gibbs.hpp"
#include "rankassign/graph.hpp"
#include "rankassign/io.hpp"
#include "rankassign/metrics.hpp"

using namespace rankassign;
namespace fs = std::filesystem;

namespace {

// Writes to `out` when given, stdout otherwise.
void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
  } else {
    io::write_text(out, text);
  }
}

void emit_json(const std::string& out, const io::Json& j) { emit(out, j.dump(1) + "\n"); }

void print_error(std::string_view code, const std::string& message) {
  io::Json j;
  j["error"] = code;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
}

PredictionMatrix load_prediction(const fs::path& path, const CostMatrix& cost, const std::string& expected_id) {
  const auto file = io::prediction_from_json(io::read_json(path));
  if (!expected_id.empty() && !file.id.empty() && file.id != expected_id) {
    throw Error(ErrorCode::ManifestMismatch,
                "prediction " + path.string() + " belongs to '" + file.id + "', not '" + expected_id + "'");
  }
  return PredictionMatrix::create(file.values, to_bipartite(cost));
}

// Predictions for dataset instances live at DIR/<id>.json.
PredictionLookup directory_lookup(const fs::path& dir) {
  return [dir](const DatasetEntry& e) -> std::optional<PredictionMatrix> {
    const fs::path p = dir / (e.id + ".json");
    if (!fs::exists(p)) return std::nullopt;
    return load_prediction(p, e.cost, e.id);
  };
}

io::Json report_json(const EvalReport& r) {
  io::Json j;
  j["k"] = r.k;
  j["rho"] = r.rho;
  j["wp"] = r.wp;
  j["mean_cost"] = r.mean_cost;
  j["accuracy"] = r.per_rank_accuracy;
  return j;
}

io::Json accumulator_json(const MetricAccumulator& acc) {
  io::Json j;
  j["instances"] = acc.count();
  j["wp"] = acc.mean_wp();
  j["mean_cost"] = acc.mean_cost();
  io::Json ranks = io::Json::array();
  for (std::size_t i = 1; i <= kResultAccuracyColumns; ++i) {
    const double a = acc.accuracy(i);
    ranks.push_back(std::isnan(a) ? io::Json(nullptr) : io::Json(a));
  }
  j["accuracy"] = std::move(ranks);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ranked assignment engine: k-best solvers, sampling, post-processing and benchmarks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rankassign 0.1.0");

  std::uint64_t seed = 0;
  std::size_t k = 0;
  std::size_t k_max = 10;
  std::size_t jobs = 1;
  std::size_t iterations = 0;
  std::size_t repetitions = 0;
  double theta = kDefaultTheta;
  std::string out, dataset_dir, instances, predictions, algorithm = "murty";

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic dataset with reference labels");
  std::size_t nu_s_max = 15, vartheta_steps = 9, count = 10;
  double k_mean = 4.0;
  bool no_labels = false;
  gen->add_option("--nu-s-max", nu_s_max, "Largest track count")->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--vartheta-steps", vartheta_steps, "Gating probabilities s/(steps+1)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  gen->add_option("--count", count, "Instances per cell")->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Master seed")->capture_default_str();
  gen->add_option("--k-max", k_max, "Reference labels per instance")->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--k-mean", k_mean, "Mean of the requested-k Poisson draw")->capture_default_str();
  gen->add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_flag("--no-labels", no_labels, "Skip the Murty reference labels");
  gen->add_option("--out", out, "Dataset directory")->required();

  // export-graphs
  auto* exp = app.add_subcommand("export-graphs", "Write one normalised graph file per dataset instance");
  bool raw_graphs = false;
  exp->add_option("--dataset", dataset_dir, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  exp->add_option("--out", out, "Output directory")->required();
  exp->add_option("--k-max", k_max, "Label columns in the targets array")->capture_default_str();
  exp->add_flag("--raw", raw_graphs, "Keep unnormalised features");

  // solve
  auto* solve = app.add_subcommand("solve", "Exact k-best assignments of one instance");
  solve->add_option("--instances", instances, "Instance file")->required()->check(CLI::ExistingFile);
  solve->add_option("--algorithm", algorithm, "murty, lap or bruteforce")
      ->capture_default_str()
      ->check(CLI::IsMember({"murty", "lap", "bruteforce"}));
  solve->add_option("--k", k, "Number of assignments")->default_val(1)->check(CLI::PositiveNumber);
  solve->add_option("--out", out, "Output file (stdout when omitted)");

  // sample
  auto* sample = app.add_subcommand("sample", "Gibbs-sampled k-best assignments of one instance");
  sample->add_option("--instances", instances, "Instance file")->required()->check(CLI::ExistingFile);
  sample->add_option("--iterations", iterations, "Sweeps (default 100 x tracks)");
  sample->add_option("--seed", seed, "Chain seed")->capture_default_str();
  sample->add_option("--k", k, "Number of assignments")->default_val(1)->check(CLI::PositiveNumber);
  sample->add_option("--out", out, "Output file (stdout when omitted)");

  // postprocess
  auto* post = app.add_subcommand("postprocess", "Extract ranked assignments from a prediction file");
  post->add_option("--predictions", predictions, "Prediction file")->required()->check(CLI::ExistingFile);
  post->add_option("--instances", instances, "Instance file")->required()->check(CLI::ExistingFile);
  post->add_option("--theta", theta, "Expansion threshold")->capture_default_str();
  post->add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  post->add_option("--out", out, "Output file (stdout when omitted)");

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Score predictions against Murty");
  std::string results_path;
  eval->add_option("--predictions", predictions, "Prediction file, or directory of <id>.json with --dataset")
      ->required();
  eval->add_option("--instances", instances, "Instance file");
  eval->add_option("--dataset", dataset_dir, "Dataset directory");
  eval->add_option("--k", k, "Ranks to score (default: prediction k_max, or the instance's k)");
  eval->add_option("--theta", theta, "Expansion threshold")->capture_default_str();
  eval->add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  eval->add_option("--results", results_path, "Per-instance CSV (dataset mode)");
  eval->add_option("--out", out, "Output file (stdout when omitted)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over k_max or nu_s");
  std::string axis = "k-max";
  std::vector<std::size_t> values;
  std::vector<std::string> methods{"murty"};
  bool verbose = false;
  sweep->add_option("--dataset", dataset_dir, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  sweep->add_option("--axis", axis, "k-max or nu-s")->capture_default_str();
  sweep->add_option("--values", values, "Axis values")->required()->delimiter(',');
  sweep->add_option("--methods", methods, "murty, gibbs, predictions-file")->delimiter(',')->capture_default_str();
  sweep->add_option("--predictions", predictions, "Directory of <id>.json prediction files");
  sweep->add_option("--repetitions", repetitions, "Timed runs per measurement")->default_val(1);
  sweep->add_option("--iterations", iterations, "Gibbs sweeps (default 100 x tracks)");
  sweep->add_option("--seed", seed, "Gibbs seed")->capture_default_str();
  sweep->add_option("--theta", theta, "Expansion threshold")->capture_default_str();
  sweep->add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_flag("--verbose", verbose, "Add the full per-rank accuracy vector");
  sweep->add_option("--out", out, "Output directory")->required();

  // time
  auto* timing = app.add_subcommand("time", "Median module timings per track count");
  std::size_t min_instances = 100;
  timing->add_option("--dataset", dataset_dir, "Dataset directory (generated in memory when omitted)");
  timing->add_option("--nu-s-max", nu_s_max, "Largest track count for the in-memory dataset")->capture_default_str();
  timing->add_option("--vartheta-steps", vartheta_steps, "Gating steps for the in-memory dataset")->capture_default_str();
  timing->add_option("--count", count, "Instances per cell for the in-memory dataset")->capture_default_str();
  timing->add_option("--min-instances", min_instances, "Warn below this bucket size")->capture_default_str();
  timing->add_option("--k", k, "Assignments per solve")->default_val(10)->check(CLI::PositiveNumber);
  timing->add_option("--repetitions", repetitions, "Timed runs per measurement")->default_val(5);
  timing->add_option("--iterations", iterations, "Gibbs sweeps (default 100 x tracks)");
  timing->add_option("--seed", seed, "Seed")->capture_default_str();
  timing->add_option("--out", out, "Output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("UsageError", e.what());
    return 2;
  }

  try {
    if (*gen) {
      auto spec = DatasetSpec::grid(nu_s_max, vartheta_steps, count, seed);
      spec.k_max = k_max;
      spec.k_mean = k_mean;
      spec.with_labels = !no_labels;
      spec.jobs = jobs;
      const auto m = io::write_dataset(out, spec, build_dataset(spec));
      io::Json j;
      j["dataset"] = out;
      j["instances"] = m.instances.size();
      std::cout << j.dump() << "\n";
    } else if (*exp) {
      const auto entries = io::load_dataset(dataset_dir);
      for (const auto& e : entries) {
        auto g = to_bipartite(e.cost);
        if (!raw_graphs) g = normalize_graph(g);
        io::write_json(fs::path(out) / (e.id + ".json"), io::graph_to_json(g, e.id, e.labels, k_max));
      }
      io::Json j;
      j["graphs"] = entries.size();
      j["out"] = out;
      std::cout << j.dump() << "\n";
    } else if (*solve) {
      const auto inst = io::instance_from_json(io::read_json(instances));
      RankedSolution s;
      if (algorithm == "murty") {
        s = murty_k_best(inst.cost, k);
      } else if (algorithm == "lap") {
        s.requested_k = 1;
        if (auto a = solve_linear(inst.cost)) s.assignments.push_back(*a);
      } else {
        s = enumerate_assignments(inst.cost, k);
      }
      emit_json(out, io::ranked_solution_to_json(s));
    } else if (*sample) {
      const auto inst = io::instance_from_json(io::read_json(instances));
      GibbsConfig cfg;
      cfg.k = k;
      cfg.seed = seed;
      cfg.iterations = iterations ? iterations : default_gibbs_iterations(inst.cost);
      emit_json(out, io::ranked_solution_to_json(gibbs_sample(inst.cost, cfg)));
    } else if (*post) {
      const auto inst = io::instance_from_json(io::read_json(instances));
      const auto pred = load_prediction(predictions, inst.cost, {});
      emit_json(out, io::ranked_solution_to_json(greedy_post_process(pred, inst.cost, {theta, jobs})));
    } else if (*eval) {
      PostProcessOptions opts{theta, jobs};
      if (!dataset_dir.empty()) {
        const auto entries = io::load_dataset(dataset_dir);
        const auto lookup = directory_lookup(predictions);
        MetricAccumulator acc;
        std::vector<ResultRow> rows;
        for (const auto& e : entries) {
          const auto pred = lookup(e);
          if (!pred) throw Error(ErrorCode::MissingPredictions, "no prediction for instance " + e.id);
          const std::size_t kk = k ? k : e.requested_k;
          auto ranked = greedy_post_process(*pred, e.cost, opts);
          if (ranked.assignments.size() > kk) ranked.assignments.resize(kk);
          const auto r = evaluate(ranked, murty_k_best(e.cost, kk), kk);
          acc.add(r, 0.0);
          rows.push_back({e.id, "predictions", kk, r.k, r.wp, r.mean_cost, r.per_rank_accuracy, 0.0});
        }
        if (!results_path.empty()) io::write_text(results_path, results_csv(rows, true));
        emit_json(out, accumulator_json(acc));
      } else {
        if (instances.empty()) throw Error(ErrorCode::InvalidArgument, "evaluate needs --instances or --dataset");
        const auto inst = io::instance_from_json(io::read_json(instances));
        const auto pred = load_prediction(predictions, inst.cost, {});
        const std::size_t kk = k ? k : pred.k_max();
        auto ranked = greedy_post_process(pred, inst.cost, opts);
        if (ranked.assignments.size() > kk) ranked.assignments.resize(kk);
        emit_json(out, report_json(evaluate(ranked, murty_k_best(inst.cost, kk), kk)));
      }
    } else if (*sweep) {
      SweepSpec spec;
      spec.axis = parse_axis(axis);
      spec.values = values;
      for (const auto& m : methods) spec.methods.push_back(parse_method(m));
      spec.repetitions = repetitions;
      spec.seed = seed;
      spec.gibbs_iterations = iterations;
      spec.theta = theta;
      spec.jobs = jobs;
      spec.validate();
      const auto entries = io::load_dataset(dataset_dir);
      PredictionLookup lookup;
      if (!predictions.empty()) lookup = directory_lookup(predictions);
      const auto result = run_sweep(spec, entries, lookup);
      io::write_text(fs::path(out) / "results.csv", results_csv(result.rows, verbose));
      io::write_text(fs::path(out) / "summary.csv", summary_csv(result.summary, spec.axis));
      io::Json j;
      j["rows"] = result.rows.size();
      j["out"] = out;
      std::cout << j.dump() << "\n";
    } else if (*timing) {
      std::vector<DatasetEntry> entries;
      if (!dataset_dir.empty()) {
        entries = io::load_dataset(dataset_dir);
      } else {
        auto spec = DatasetSpec::grid(nu_s_max, vartheta_steps, count, seed);
        spec.with_labels = false;
        entries = build_dataset(spec);
      }
      TimingOptions opts;
      opts.k = k;
      opts.repetitions = repetitions;
      opts.min_instances = min_instances;
      opts.gibbs_iterations = iterations;
      opts.seed = seed;
      emit(out, timing_report(time_modules(entries, opts)));
    }
  } catch (const Error& e) {
    print_error(to_string(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("InternalError", e.what());
    return 1;
  }
  return 0;
}
