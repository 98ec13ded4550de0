// Experiment orchestration: variant wiring, the test-only renaming
// protocol, wall-clock timing, and report emission.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vultriage/corpus.hpp"
#include "vultriage/eval.hpp"
#include "vultriage/model.hpp"
#include "vultriage/vectorize.hpp"

namespace vultriage {

struct PipelineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Setting { Random, Cross };

const char* setting_name(Setting s);
Setting setting_from_name(const std::string& name);

struct ExperimentConfig {
  std::string dataset_path;
  DatasetFormat format = DatasetFormat::JsonArray;
  std::vector<Setting> settings{Setting::Random};
  std::string train_project;  // cross setting only
  std::string test_project;
  std::vector<Variant> variants{Variant::Metrics, Variant::TokU, Variant::TokUB, Variant::Mix};
  std::uint64_t seed = 42;
  bool rename_test = false;   // when set, each variant also runs with renamed test source
  double fraction = 0.10;
  double threshold = 0.5;
  double C = 1.0;
  double tol = 1e-4;
  int max_iter = 2000;
  std::size_t min_df = 2;
  std::string output_path;
};

struct ReportRow {
  std::string setting;
  std::string variant;
  bool renamed = false;
  double pr_auc = 0, roc_auc = 0, f1 = 0, precision = 0, recall = 0, recall_at_k = 0;
  double feat_time_s = 0, train_time_s = 0, infer_time_s = 0;
  std::size_t n_train = 0, n_test = 0, n_features = 0;
};

// One (setting, variant, renamed) run over a precomputed split. The
// feature-extraction time is measured once over the whole dataset by
// run_experiment and passed in; it is shared across every row.
ReportRow run_variant(const ExperimentConfig& config,
                      const std::vector<FunctionRecord>& records,
                      const std::vector<MetricVector>& all_metrics,
                      double feat_time_s, const SplitResult& split,
                      Setting setting, Variant variant, bool renamed);

// Cartesian product of settings x variants x rename states, rows in that
// deterministic order. Metric extraction happens once, before splitting.
std::vector<ReportRow> run_experiment(const ExperimentConfig& config,
                                      const std::vector<FunctionRecord>& records);

enum class ReportFormat { Csv, Json };

// CSV header: setting,variant,renamed,pr_auc,roc_auc,f1,precision,recall,
// recall_at_k,feat_time_s,train_time_s,infer_time_s,n_train,n_test,
// n_features. Reals printed with 6 decimal places.
void emit_report(const std::vector<ReportRow>& rows, std::ostream& out, ReportFormat format);
void emit_report(const std::vector<ReportRow>& rows, const std::string& path, ReportFormat format);

// Serialized-model workflow behind the `train` / `score` subcommands:
// the fitted TF-IDF vocabulary, metric scale, and classifier for one
// variant, serialized to JSON.
struct PipelineModel {
  Variant variant = Variant::Mix;
  std::optional<TfidfModel> tfidf;
  std::optional<MaxAbsScale> scale;
  TrainedModel model;
  std::size_t min_df = 2;
};

// Fits a PipelineModel on every supplied record.
PipelineModel fit_pipeline_model(const std::vector<FunctionRecord>& records, Variant variant,
                                 double C, double tol, int max_iter, std::uint64_t seed,
                                 std::size_t min_df);

// Probability scores in record order.
std::vector<double> score_records(const PipelineModel& pm,
                                  const std::vector<FunctionRecord>& records);

void save_pipeline_model(const PipelineModel& pm, const std::string& path);
PipelineModel load_pipeline_model(const std::string& path);

}  // namespace vultriage
