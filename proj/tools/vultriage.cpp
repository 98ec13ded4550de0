// vultriage: function-level vulnerability triage from token and metric
// features. Subcommands: run (experiment harness), metrics (per-function
// metric CSV), train / score (serialized-model workflow).
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vultriage/corpus.hpp"
#include "vultriage/metrics.hpp"
#include "vultriage/pipeline.hpp"

namespace {

using namespace vultriage;

DatasetFormat parse_format(const std::string& name) {
  if (name == "json-array") return DatasetFormat::JsonArray;
  if (name == "jsonl") return DatasetFormat::JsonLines;
  throw CorpusError("unknown dataset format: " + name);
}

std::vector<Variant> parse_variants(const std::string& csv) {
  std::vector<Variant> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string item = csv.substr(start, comma == std::string::npos ? comma : comma - start);
    if (!item.empty()) out.push_back(variant_from_name(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw PipelineError("no variants requested");
  return out;
}

std::vector<Setting> parse_settings(const std::string& csv) {
  std::vector<Setting> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string item = csv.substr(start, comma == std::string::npos ? comma : comma - start);
    if (!item.empty()) out.push_back(setting_from_name(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw PipelineError("no setting requested");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lightweight function-level vulnerability triage"};
  app.require_subcommand(1);

  // ---- run ----
  auto* run = app.add_subcommand("run", "run the experiment harness and emit a report");
  std::string dataset, format_name = "json-array", setting_name_arg = "random";
  std::string train_project, test_project, variants_csv = "metrics,tok-u,tok-ub,mix";
  std::string out_path = "report.csv";
  bool rename_test = false;
  std::uint64_t seed = 42;
  double fraction = 0.10, threshold = 0.5, c_value = 1.0, tol = 1e-4;
  int max_iter = 2000;
  std::size_t min_df = 2;
  run->add_option("--dataset", dataset, "dataset file")->required();
  run->add_option("--format", format_name, "json-array|jsonl");
  run->add_option("--setting", setting_name_arg, "random|cross (comma list allowed)");
  run->add_option("--train-project", train_project, "training project (cross setting)");
  run->add_option("--test-project", test_project, "test project (cross setting)");
  run->add_option("--variants", variants_csv, "comma list of metrics,tok-u,tok-ub,mix");
  run->add_flag("--rename-test", rename_test, "also run with identifiers renamed in test source");
  run->add_option("--seed", seed, "split/solver seed");
  run->add_option("--fraction", fraction, "inspection budget for recall@k");
  run->add_option("--threshold", threshold, "decision threshold for P/R/F1");
  run->add_option("--min-df", min_df, "minimum document frequency");
  run->add_option("--c", c_value, "inverse regularization strength");
  run->add_option("--max-iter", max_iter, "solver iteration cap");
  run->add_option("--tol", tol, "relative gradient stopping tolerance");
  run->add_option("--out", out_path, "report output path (.csv or .json)");

  // ---- metrics ----
  auto* metrics_cmd = app.add_subcommand("metrics", "print per-function metric CSV");
  std::string m_dataset, m_format = "json-array", m_out;
  metrics_cmd->add_option("--dataset", m_dataset, "dataset file")->required();
  metrics_cmd->add_option("--format", m_format, "json-array|jsonl");
  metrics_cmd->add_option("--out", m_out, "output path (default stdout)");

  // ---- train ----
  auto* train_cmd = app.add_subcommand("train", "fit a model on every record and serialize it");
  std::string t_dataset, t_format = "json-array", t_variant = "mix", t_model_out = "model.json";
  std::uint64_t t_seed = 42;
  double t_c = 1.0, t_tol = 1e-4;
  int t_max_iter = 2000;
  std::size_t t_min_df = 2;
  train_cmd->add_option("--dataset", t_dataset, "dataset file")->required();
  train_cmd->add_option("--format", t_format, "json-array|jsonl");
  train_cmd->add_option("--variant", t_variant, "metrics|tok-u|tok-ub|mix");
  train_cmd->add_option("--min-df", t_min_df, "minimum document frequency");
  train_cmd->add_option("--c", t_c, "inverse regularization strength");
  train_cmd->add_option("--max-iter", t_max_iter, "solver iteration cap");
  train_cmd->add_option("--tol", t_tol, "relative gradient stopping tolerance");
  train_cmd->add_option("--seed", t_seed, "solver seed");
  train_cmd->add_option("--model-out", t_model_out, "serialized model path");

  // ---- score ----
  auto* score_cmd = app.add_subcommand("score", "score records with a serialized model");
  std::string s_dataset, s_format = "json-array", s_model, s_out;
  score_cmd->add_option("--model", s_model, "serialized model path")->required();
  score_cmd->add_option("--dataset", s_dataset, "dataset file")->required();
  score_cmd->add_option("--format", s_format, "json-array|jsonl");
  score_cmd->add_option("--out", s_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      ExperimentConfig cfg;
      cfg.dataset_path = dataset;
      cfg.format = parse_format(format_name);
      cfg.settings = parse_settings(setting_name_arg);
      cfg.train_project = train_project;
      cfg.test_project = test_project;
      cfg.variants = parse_variants(variants_csv);
      cfg.rename_test = rename_test;
      cfg.seed = seed;
      cfg.fraction = fraction;
      cfg.threshold = threshold;
      cfg.C = c_value;
      cfg.tol = tol;
      cfg.max_iter = max_iter;
      cfg.min_df = min_df;
      cfg.output_path = out_path;
      const auto records = load_dataset(cfg.dataset_path, cfg.format);
      const auto rows = run_experiment(cfg, records);
      const bool json_out = out_path.size() >= 5 && out_path.substr(out_path.size() - 5) == ".json";
      emit_report(rows, out_path, json_out ? ReportFormat::Json : ReportFormat::Csv);
      std::cerr << "wrote " << rows.size() << " rows to " << out_path << "\n";
    } else if (*metrics_cmd) {
      const auto records = load_dataset(m_dataset, parse_format(m_format));
      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!m_out.empty()) {
        file.open(m_out, std::ios::binary);
        if (!file) throw PipelineError("cannot open output: " + m_out);
        out = &file;
      }
      *out << "id,nloc,ccn,tokens,depth,params\n";
      for (const auto& r : records) {
        const MetricVector m = extract_metrics(r.source);
        *out << r.id << ',' << m.nloc << ',' << m.ccn << ',' << m.token_count << ','
             << m.max_depth << ',' << m.param_count << '\n';
      }
    } else if (*train_cmd) {
      const auto records = load_dataset(t_dataset, parse_format(t_format));
      const auto pm = fit_pipeline_model(records, variant_from_name(t_variant), t_c, t_tol,
                                         t_max_iter, t_seed, t_min_df);
      save_pipeline_model(pm, t_model_out);
      std::cerr << "trained on " << records.size() << " records ("
                << pm.model.iterations << " iterations, "
                << (pm.model.converged ? "converged" : "iteration cap") << "); model at "
                << t_model_out << "\n";
    } else if (*score_cmd) {
      const auto pm = load_pipeline_model(s_model);
      const auto records = load_dataset(s_dataset, parse_format(s_format));
      const auto scores = score_records(pm, records);
      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!s_out.empty()) {
        file.open(s_out, std::ios::binary);
        if (!file) throw PipelineError("cannot open output: " + s_out);
        out = &file;
      }
      *out << "id,score\n";
      char buf[48];
      for (std::size_t i = 0; i < records.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.6f", scores[i]);
        *out << records[i].id << ',' << buf << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
