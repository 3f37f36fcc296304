#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rankassign/datagen.hpp"
#include "rankassign/metrics.hpp"
#include "rankassign/postproc.hpp"

namespace rankassign {

enum class Method { Murty, Gibbs, Predictions };
enum class SweepAxis { KMax, NuS };

[[nodiscard]] std::string to_string(Method m);
[[nodiscard]] Method parse_method(const std::string& s);
[[nodiscard]] std::string to_string(SweepAxis a);
[[nodiscard]] SweepAxis parse_axis(const std::string& s);

struct SweepSpec {
  SweepAxis axis = SweepAxis::NuS;
  std::vector<std::size_t> values;
  std::vector<Method> methods;
  std::size_t repetitions = 1;   ///< timed runs per (instance, method); the median is kept
  std::uint64_t seed = 0;        ///< Gibbs chains derive their seeds from this
  std::size_t gibbs_iterations = 0;  ///< 0 selects the per-instance default
  double theta = kDefaultTheta;
  std::size_t jobs = 1;

  /// Throws InvalidArgument when values or methods are empty.
  void validate() const;
};

/// Looks up the prediction for an instance id; nullopt when none exists.
using PredictionLookup = std::function<std::optional<PredictionMatrix>(const DatasetEntry&)>;

/// One line of the per-instance results CSV.
struct ResultRow {
  std::string instance_id;
  std::string method;
  std::size_t axis_value = 0;
  std::size_t k = 0;
  double wp = 0.0;
  double mean_cost = 0.0;
  std::vector<double> accuracy;  ///< full per-rank vector
  double wall_time_us = 0.0;
};

struct SummaryRow {
  std::size_t axis_value = 0;
  std::string method;
  std::size_t instances = 0;
  double wp = 0.0;
  double mean_cost = 0.0;
  std::vector<double> accuracy;  ///< ranks 1..4, NaN where no instance reaches the rank
  double wall_time_us = 0.0;
};

struct SweepResult {
  std::vector<ResultRow> rows;
  std::vector<SummaryRow> summary;
};

/// Scores every requested method against Murty on each cell of the sweep.
/// Murty rows are always present. Axis k_max overrides each instance's k;
/// axis nu_s keeps the instance's own k and filters instances by row count.
[[nodiscard]] SweepResult run_sweep(const SweepSpec& spec, const std::vector<DatasetEntry>& dataset,
                                    const PredictionLookup& predictions = {});

inline constexpr std::size_t kResultAccuracyColumns = 4;

[[nodiscard]] std::string results_csv_header();
[[nodiscard]] std::string results_csv(const std::vector<ResultRow>& rows, bool verbose = false);
[[nodiscard]] std::string summary_csv(const std::vector<SummaryRow>& rows, SweepAxis axis);

struct TimingOptions {
  std::size_t k = 10;
  std::size_t repetitions = 5;
  std::size_t min_instances = 100;
  std::size_t gibbs_iterations = 0;  ///< 0 selects the per-instance default
  std::uint64_t seed = 0;
};

/// Median microseconds per module for one row-count bucket.
struct TimingRow {
  std::size_t nu_s = 0;
  std::size_t instances = 0;
  double graph_us = 0.0;
  double postproc_us = 0.0;
  double gibbs_us = 0.0;
  double murty_us = 0.0;
};

struct TimingTable {
  std::string hardware;
  std::vector<TimingRow> rows;
  std::vector<std::string> warnings;
};

/// Graph creation covers to_bipartite plus normalisation. Post-processing is
/// fed the one-hot encoding of the Murty labels, so it measures the
/// extraction cost alone.
[[nodiscard]] TimingTable time_modules(const std::vector<DatasetEntry>& dataset,
                                       const TimingOptions& options = {});

[[nodiscard]] std::string timing_report(const TimingTable& t);
[[nodiscard]] std::string hardware_description();

}  // namespace rankassign
