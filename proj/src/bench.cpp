#include "rankassign/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <thread>

#include "rankassign/exact_solver.hpp"
#include "rankassign/gibbs.hpp"
#include "rankassign/graph.hpp"
#include "rankassign/parallel.hpp"
#include "rankassign/rng.hpp"

namespace rankassign {

std::string to_string(Method m) {
  switch (m) {
    case Method::Murty: return "murty";
    case Method::Gibbs: return "gibbs";
    case Method::Predictions: return "predictions";
  }
  return "unknown";
}

Method parse_method(const std::string& s) {
  if (s == "murty") return Method::Murty;
  if (s == "gibbs") return Method::Gibbs;
  if (s == "predictions" || s == "predictions-file") return Method::Predictions;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + s + "'");
}

std::string to_string(SweepAxis a) { return a == SweepAxis::KMax ? "k_max" : "nu_s"; }

SweepAxis parse_axis(const std::string& s) {
  if (s == "k_max" || s == "k-max") return SweepAxis::KMax;
  if (s == "nu_s" || s == "nu-s") return SweepAxis::NuS;
  throw Error(ErrorCode::InvalidArgument, "unknown sweep axis '" + s + "'");
}

void SweepSpec::validate() const {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "sweep values are empty");
  if (methods.empty()) throw Error(ErrorCode::InvalidArgument, "sweep methods are empty");
  if (repetitions == 0) throw Error(ErrorCode::InvalidArgument, "repetitions must be >= 1");
  if (axis == SweepAxis::KMax &&
      std::any_of(values.begin(), values.end(), [](std::size_t v) { return v == 0; })) {
    throw Error(ErrorCode::InvalidArgument, "k values must be >= 1");
  }
}

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<long>(mid), v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double upper = v[mid];
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<long>(mid));
  return 0.5 * (lower + upper);
}

// Runs fn `reps` times and returns (last result, median microseconds).
template <typename Fn>
auto timed(std::size_t reps, Fn&& fn) {
  std::vector<double> us;
  us.reserve(reps);
  decltype(fn()) result{};
  for (std::size_t r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    result = fn();
    const auto t1 = Clock::now();
    us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
  }
  return std::make_pair(std::move(result), median(std::move(us)));
}

RankedSolution truncated(RankedSolution s, std::size_t k) {
  if (s.assignments.size() > k) s.assignments.resize(k);
  s.requested_k = k;
  return s;
}

struct Task {
  std::size_t instance = 0;
  std::size_t axis_value = 0;
  std::size_t k = 0;
};

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, const std::vector<DatasetEntry>& dataset,
                      const PredictionLookup& predictions) {
  spec.validate();

  std::vector<Method> methods{Method::Murty};
  for (Method m : spec.methods) {
    if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
  }
  const bool wants_predictions =
      std::find(methods.begin(), methods.end(), Method::Predictions) != methods.end();
  if (wants_predictions && !predictions) {
    throw Error(ErrorCode::MissingPredictions, "method 'predictions' needs a predictions source");
  }

  std::vector<Task> tasks;
  for (std::size_t v : spec.values) {
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      if (spec.axis == SweepAxis::KMax) {
        tasks.push_back({i, v, v});
      } else if (dataset[i].nu_s == v) {
        tasks.push_back({i, v, dataset[i].requested_k});
      }
    }
  }

  std::vector<std::vector<ResultRow>> per_task(tasks.size());
  parallel_for(tasks.size(), spec.jobs, [&](std::size_t t) {
    const Task& task = tasks[t];
    const DatasetEntry& entry = dataset[task.instance];
    auto [reference, murty_us] =
        timed(spec.repetitions, [&] { return murty_k_best(entry.cost, task.k); });

    for (Method m : methods) {
      RankedSolution pred;
      double us = 0.0;
      switch (m) {
        case Method::Murty:
          pred = reference;
          us = murty_us;
          break;
        case Method::Gibbs: {
          GibbsConfig cfg;
          cfg.k = task.k;
          cfg.iterations = spec.gibbs_iterations ? spec.gibbs_iterations
                                                 : default_gibbs_iterations(entry.cost);
          cfg.seed = derive_seed(spec.seed, task.instance, task.k);
          std::tie(pred, us) = timed(spec.repetitions, [&] { return gibbs_sample(entry.cost, cfg); });
          break;
        }
        case Method::Predictions: {
          auto p = predictions(entry);
          if (!p) {
            throw Error(ErrorCode::MissingPredictions, "no prediction for instance " + entry.id);
          }
          PostProcessOptions opts;
          opts.theta = spec.theta;
          std::tie(pred, us) =
              timed(spec.repetitions, [&] { return greedy_post_process(*p, entry.cost, opts); });
          pred = truncated(std::move(pred), task.k);
          break;
        }
      }
      const EvalReport report = evaluate(pred, reference, task.k);
      per_task[t].push_back({entry.id, to_string(m), task.axis_value, report.k, report.wp,
                             report.mean_cost, report.per_rank_accuracy, us});
    }
  });

  SweepResult out;
  // Key: (axis value, method position) so the summary order is deterministic.
  std::map<std::pair<std::size_t, std::size_t>, MetricAccumulator> cells;
  for (auto& rows : per_task) {
    for (auto& row : rows) {
      const auto pos = static_cast<std::size_t>(
          std::find(methods.begin(), methods.end(), parse_method(row.method)) - methods.begin());
      EvalReport r;
      r.per_rank_accuracy = row.accuracy;
      r.wp = row.wp;
      r.mean_cost = row.mean_cost;
      cells[{row.axis_value, pos}].add(r, row.wall_time_us);
      out.rows.push_back(std::move(row));
    }
  }
  for (const auto& [key, acc] : cells) {
    SummaryRow s;
    s.axis_value = key.first;
    s.method = to_string(methods[key.second]);
    s.instances = acc.count();
    s.wp = acc.mean_wp();
    s.mean_cost = acc.mean_cost();
    for (std::size_t i = 1; i <= kResultAccuracyColumns; ++i) s.accuracy.push_back(acc.accuracy(i));
    s.wall_time_us = acc.mean_wall_time_us();
    out.summary.push_back(std::move(s));
  }
  return out;
}

std::string results_csv_header() {
  return "instance_id,method,k,wp,mean_cost,acc_1,acc_2,acc_3,acc_4,wall_time_us";
}

std::string results_csv(const std::vector<ResultRow>& rows, bool verbose) {
  std::string out = results_csv_header();
  if (verbose) out += ",accuracy";
  out += "\n";
  for (const auto& r : rows) {
    out += r.instance_id + "," + r.method + "," + std::to_string(r.k) + "," + format_double(r.wp) +
           "," + format_double(r.mean_cost);
    for (std::size_t i = 0; i < kResultAccuracyColumns; ++i) {
      out += ",";
      if (i < r.accuracy.size()) out += format_double(r.accuracy[i]);
    }
    out += "," + format_double(r.wall_time_us);
    if (verbose) {
      out += ",";
      for (std::size_t i = 0; i < r.accuracy.size(); ++i) {
        if (i) out += ";";
        out += format_double(r.accuracy[i]);
      }
    }
    out += "\n";
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows, SweepAxis axis) {
  std::string out = to_string(axis) + ",method,instances,wp,mean_cost,acc_1,acc_2,acc_3,acc_4,wall_time_us\n";
  for (const auto& r : rows) {
    out += std::to_string(r.axis_value) + "," + r.method + "," + std::to_string(r.instances) + "," +
           format_double(r.wp) + "," + format_double(r.mean_cost);
    for (std::size_t i = 0; i < kResultAccuracyColumns; ++i) {
      out += "," + (i < r.accuracy.size() ? format_double(r.accuracy[i]) : std::string());
    }
    out += "," + format_double(r.wall_time_us) + "\n";
  }
  return out;
}

std::string hardware_description() {
  std::string cpu = "unknown cpu";
  std::ifstream info("/proc/cpuinfo");
  for (std::string line; std::getline(info, line);) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) cpu = line.substr(colon + 2);
      break;
    }
  }
  return cpu + "; threads=" + std::to_string(std::thread::hardware_concurrency()) +
         "; compiler=" + __VERSION__;
}

TimingTable time_modules(const std::vector<DatasetEntry>& dataset, const TimingOptions& options) {
  if (options.k == 0 || options.repetitions == 0) {
    throw Error(ErrorCode::InvalidArgument, "timing k and repetitions must be >= 1");
  }
  TimingTable table;
  table.hardware = hardware_description();

  std::map<std::size_t, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < dataset.size(); ++i) buckets[dataset[i].nu_s].push_back(i);

  struct Samples {
    std::vector<double> graph, post, gibbs, murty;
  };
  std::map<std::size_t, Samples> samples;

  // Round-robin over buckets so slow drift in machine load is shared by all
  // of them instead of landing on whichever bucket runs at that moment.
  std::size_t sink = 0;
  const std::size_t rounds = std::accumulate(buckets.begin(), buckets.end(), std::size_t{0},
                                             [](std::size_t m, const auto& b) { return std::max(m, b.second.size()); });
  for (std::size_t round = 0; round < rounds; ++round) {
    for (const auto& [nu_s, members] : buckets) {
      if (round >= members.size()) continue;
      const std::size_t idx = members[round];
      const CostMatrix& c = dataset[idx].cost;
      Samples& out = samples[nu_s];

      auto [graph, g_us] = timed(options.repetitions, [&] { return normalize_graph(to_bipartite(c)); });
      out.graph.push_back(g_us);

      auto [ranked, m_us] = timed(options.repetitions, [&] { return murty_k_best(c, options.k); });
      out.murty.push_back(m_us);

      GibbsConfig cfg;
      cfg.k = options.k;
      cfg.iterations = options.gibbs_iterations ? options.gibbs_iterations : default_gibbs_iterations(c);
      cfg.seed = derive_seed(options.seed, idx);
      auto [sampled, s_us] = timed(options.repetitions, [&] { return gibbs_sample(c, cfg); });
      out.gibbs.push_back(s_us);

      const auto pred = PredictionMatrix::one_hot(to_bipartite(c), ranked, options.k);
      auto [extracted, p_us] = timed(options.repetitions, [&] { return greedy_post_process(pred, c); });
      out.post.push_back(p_us);

      sink += graph.num_edges() + sampled.size() + extracted.size();
    }
  }

  for (const auto& [nu_s, members] : buckets) {
    if (members.size() < options.min_instances) {
      table.warnings.push_back("nu_s=" + std::to_string(nu_s) + " has only " +
                               std::to_string(members.size()) + " instances");
    }
    Samples& s = samples[nu_s];
    table.rows.push_back({nu_s, members.size(), median(std::move(s.graph)), median(std::move(s.post)),
                          median(std::move(s.gibbs)), median(std::move(s.murty))});
  }
  if (sink == 0) table.warnings.push_back("empty dataset");
  return table;
}

std::string timing_report(const TimingTable& t) {
  std::string out = "# hardware: " + t.hardware + "\n";
  out += "# median wall time per instance in microseconds\n";
  for (const auto& w : t.warnings) out += "# warning: " + w + "\n";
  out += "nu_s,instances,graph_creation_us,postproc_us,gibbs_us,murty_us\n";
  for (const auto& r : t.rows) {
    out += std::to_string(r.nu_s) + "," + std::to_string(r.instances) + "," + format_double(r.graph_us) +
           "," + format_double(r.postproc_us) + "," + format_double(r.gibbs_us) + "," +
           format_double(r.murty_us) + "\n";
  }
  return out;
}

}  // namespace rankassign
