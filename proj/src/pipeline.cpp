#include "vultriage/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "vultriage/lexer.hpp"
#include "vultriage/metrics.hpp"

namespace vultriage {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// Renaming keyword set: the C keywords plus the placeholder itself, so
// the perturbation is idempotent.
const std::unordered_set<std::string>& rename_keywords() {
  static const std::unordered_set<std::string> kw = [] {
    auto s = c_keywords();
    s.insert("ID");
    return s;
  }();
  return kw;
}

std::pair<int, int> ngram_range(Variant v) {
  return v == Variant::TokU ? std::pair{1, 1} : std::pair{1, 2};
}

bool uses_tokens(Variant v) { return v != Variant::Metrics; }
bool uses_metrics(Variant v) { return v == Variant::Metrics || v == Variant::Mix; }

nlohmann::json row_to_json(const ReportRow& r) {
  return nlohmann::json{{"setting", r.setting},
                        {"variant", r.variant},
                        {"renamed", r.renamed ? 1 : 0},
                        {"pr_auc", r.pr_auc},
                        {"roc_auc", r.roc_auc},
                        {"f1", r.f1},
                        {"precision", r.precision},
                        {"recall", r.recall},
                        {"recall_at_k", r.recall_at_k},
                        {"feat_time_s", r.feat_time_s},
                        {"train_time_s", r.train_time_s},
                        {"infer_time_s", r.infer_time_s},
                        {"n_train", r.n_train},
                        {"n_test", r.n_test},
                        {"n_features", r.n_features}};
}

}  // namespace

const char* setting_name(Setting s) {
  return s == Setting::Random ? "random" : "cross";
}

Setting setting_from_name(const std::string& name) {
  if (name == "random") return Setting::Random;
  if (name == "cross") return Setting::Cross;
  throw PipelineError("unknown setting: " + name);
}

ReportRow run_variant(const ExperimentConfig& config,
                      const std::vector<FunctionRecord>& records,
                      const std::vector<MetricVector>& all_metrics,
                      double feat_time_s, const SplitResult& split,
                      Setting setting, Variant variant, bool renamed) {
  try {
    const bool want_tokens = uses_tokens(variant);
    const bool want_metrics = uses_metrics(variant);

    // ---- training side (timer covers TF-IDF fitting + optimization) ----
    const auto t_train = Clock::now();
    std::optional<TfidfModel> tfidf;
    std::vector<SparseVector> train_tok;
    if (want_tokens) {
      std::vector<TokenStream> docs;
      docs.reserve(split.train_ids.size());
      for (int id : split.train_ids) docs.push_back(tokenize(records[id].source));
      const auto [n_min, n_max] = ngram_range(variant);
      tfidf = fit_tfidf(docs, n_min, n_max, config.min_df);
      train_tok.reserve(docs.size());
      for (const auto& doc : docs) train_tok.push_back(transform_tfidf(*tfidf, doc));
    }
    std::optional<MaxAbsScale> scale;
    if (want_metrics) {
      std::vector<MetricVector> train_rows;
      train_rows.reserve(split.train_ids.size());
      for (int id : split.train_ids) train_rows.push_back(all_metrics[id]);
      scale = fit_maxabs(train_rows);
    }
    std::vector<SparseVector> X_train;
    std::vector<int> y_train;
    X_train.reserve(split.train_ids.size());
    y_train.reserve(split.train_ids.size());
    for (std::size_t i = 0; i < split.train_ids.size(); ++i) {
      const int id = split.train_ids[i];
      std::optional<SparseVector> tok;
      if (want_tokens) tok = std::move(train_tok[i]);
      std::optional<std::array<double, 5>> met;
      if (want_metrics) met = apply_maxabs(*scale, all_metrics[id]);
      X_train.push_back(assemble_features(variant, tok, met));
      y_train.push_back(records[id].label);
    }
    const ClassWeights cw = compute_class_weights(y_train);
    const TrainedModel model = train_logreg(X_train, y_train, config.C, cw, config.tol,
                                            config.max_iter, config.seed);
    const double train_time = seconds_since(t_train);
    const std::size_t n_features = X_train.empty() ? 0 : X_train[0].dim;
    X_train.clear();
    X_train.shrink_to_fit();

    // ---- test side ----
    // Renaming rewrites the raw test source before any feature
    // extraction, so test metrics are recomputed from the renamed text.
    std::vector<std::string> test_source;
    std::vector<MetricVector> test_metrics;
    test_source.reserve(split.test_ids.size());
    test_metrics.reserve(split.test_ids.size());
    for (int id : split.test_ids) {
      if (renamed) {
        std::string r = rename_identifiers(records[id].source, rename_keywords());
        test_metrics.push_back(extract_metrics(r));
        test_source.push_back(std::move(r));
      } else {
        test_source.push_back(records[id].source);
        test_metrics.push_back(all_metrics[id]);
      }
    }

    // infer timer covers TF-IDF transformation and prediction
    const auto t_infer = Clock::now();
    ScoredSet scored;
    scored.labels.reserve(split.test_ids.size());
    scored.scores.reserve(split.test_ids.size());
    scored.ids = split.test_ids;
    for (std::size_t i = 0; i < split.test_ids.size(); ++i) {
      std::optional<SparseVector> tok;
      if (want_tokens) tok = transform_tfidf(*tfidf, tokenize(test_source[i]));
      std::optional<std::array<double, 5>> met;
      if (want_metrics) met = apply_maxabs(*scale, test_metrics[i]);
      const SparseVector x = assemble_features(variant, tok, met);
      scored.scores.push_back(predict_proba(model, x));
      scored.labels.push_back(records[split.test_ids[i]].label);
    }
    const double infer_time = seconds_since(t_infer);

    ReportRow row;
    row.setting = setting_name(setting);
    row.variant = variant_name(variant);
    row.renamed = renamed;
    row.pr_auc = average_precision(scored);
    row.roc_auc = roc_auc(scored);
    const Prf prf = thresholded_prf(scored, config.threshold);
    row.precision = prf.precision;
    row.recall = prf.recall;
    row.f1 = prf.f1;
    row.recall_at_k = recall_at_fraction(scored, config.fraction);
    row.feat_time_s = feat_time_s;
    row.train_time_s = train_time;
    row.infer_time_s = infer_time;
    row.n_train = split.train_ids.size();
    row.n_test = split.test_ids.size();
    row.n_features = n_features;
    return row;
  } catch (const std::exception& e) {
    throw PipelineError(std::string("[") + setting_name(setting) + "/" + variant_name(variant) +
                        (renamed ? "/renamed" : "") + "] " + e.what());
  }
}

std::vector<ReportRow> run_experiment(const ExperimentConfig& config,
                                      const std::vector<FunctionRecord>& records) {
  // Metric extraction runs once over the entire dataset before splitting
  // and its time is shared across every report row.
  const auto t_feat = Clock::now();
  std::vector<MetricVector> all_metrics;
  all_metrics.reserve(records.size());
  for (const auto& r : records) all_metrics.push_back(extract_metrics(r.source));
  const double feat_time = seconds_since(t_feat);

  std::vector<ReportRow> rows;
  for (Setting setting : config.settings) {
    SplitResult split;
    if (setting == Setting::Random) {
      split = stratified_split(records, {0.8, 0.1, 0.1}, config.seed);
      std::cerr << "split[random]: train=" << split.train_ids.size()
                << " val=" << split.val_ids.size() << " test=" << split.test_ids.size()
                << " (validation partition unused)\n";
    } else {
      if (config.train_project.empty() || config.test_project.empty()) {
        throw PipelineError("cross setting requires --train-project and --test-project");
      }
      split = cross_project_split(records, config.train_project, config.test_project);
      std::cerr << "split[cross]: train=" << split.train_ids.size()
                << " test=" << split.test_ids.size() << "\n";
    }
    for (Variant variant : config.variants) {
      rows.push_back(run_variant(config, records, all_metrics, feat_time, split, setting,
                                 variant, false));
      if (config.rename_test) {
        rows.push_back(run_variant(config, records, all_metrics, feat_time, split, setting,
                                   variant, true));
      }
    }
  }
  return rows;
}

void emit_report(const std::vector<ReportRow>& rows, std::ostream& out, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    out << "setting,variant,renamed,pr_auc,roc_auc,f1,precision,recall,recall_at_k,"
           "feat_time_s,train_time_s,infer_time_s,n_train,n_test,n_features\n";
    for (const auto& r : rows) {
      out << r.setting << ',' << r.variant << ',' << (r.renamed ? 1 : 0) << ','
          << fmt6(r.pr_auc) << ',' << fmt6(r.roc_auc) << ',' << fmt6(r.f1) << ','
          << fmt6(r.precision) << ',' << fmt6(r.recall) << ',' << fmt6(r.recall_at_k) << ','
          << fmt6(r.feat_time_s) << ',' << fmt6(r.train_time_s) << ',' << fmt6(r.infer_time_s)
          << ',' << r.n_train << ',' << r.n_test << ',' << r.n_features << '\n';
    }
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back(row_to_json(r));
    out << arr.dump(2) << '\n';
  }
}

void emit_report(const std::vector<ReportRow>& rows, const std::string& path,
                 ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PipelineError("cannot open report output: " + path);
  emit_report(rows, out, format);
}

PipelineModel fit_pipeline_model(const std::vector<FunctionRecord>& records, Variant variant,
                                 double C, double tol, int max_iter, std::uint64_t seed,
                                 std::size_t min_df) {
  if (records.empty()) throw PipelineError("fit_pipeline_model: empty record list");
  PipelineModel pm;
  pm.variant = variant;
  pm.min_df = min_df;

  std::vector<SparseVector> tok_vecs;
  if (uses_tokens(variant)) {
    std::vector<TokenStream> docs;
    docs.reserve(records.size());
    for (const auto& r : records) docs.push_back(tokenize(r.source));
    const auto [n_min, n_max] = ngram_range(variant);
    pm.tfidf = fit_tfidf(docs, n_min, n_max, min_df);
    tok_vecs.reserve(docs.size());
    for (const auto& doc : docs) tok_vecs.push_back(transform_tfidf(*pm.tfidf, doc));
  }
  std::vector<MetricVector> rows;
  if (uses_metrics(variant)) {
    rows.reserve(records.size());
    for (const auto& r : records) rows.push_back(extract_metrics(r.source));
    pm.scale = fit_maxabs(rows);
  }
  std::vector<SparseVector> X;
  std::vector<int> y;
  X.reserve(records.size());
  y.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::optional<SparseVector> tok;
    if (uses_tokens(variant)) tok = std::move(tok_vecs[i]);
    std::optional<std::array<double, 5>> met;
    if (uses_metrics(variant)) met = apply_maxabs(*pm.scale, rows[i]);
    X.push_back(assemble_features(variant, tok, met));
    y.push_back(records[i].label);
  }
  const ClassWeights cw = compute_class_weights(y);
  pm.model = train_logreg(X, y, C, cw, tol, max_iter, seed);
  return pm;
}

std::vector<double> score_records(const PipelineModel& pm,
                                  const std::vector<FunctionRecord>& records) {
  std::vector<double> scores;
  scores.reserve(records.size());
  for (const auto& r : records) {
    std::optional<SparseVector> tok;
    if (uses_tokens(pm.variant)) tok = transform_tfidf(*pm.tfidf, tokenize(r.source));
    std::optional<std::array<double, 5>> met;
    if (uses_metrics(pm.variant)) met = apply_maxabs(*pm.scale, extract_metrics(r.source));
    scores.push_back(predict_proba(pm.model, assemble_features(pm.variant, tok, met)));
  }
  return scores;
}

void save_pipeline_model(const PipelineModel& pm, const std::string& path) {
  nlohmann::json doc;
  doc["variant"] = variant_name(pm.variant);
  doc["min_df"] = pm.min_df;
  if (pm.tfidf) {
    std::vector<std::string> terms(pm.tfidf->vocabulary.size());
    for (const auto& [term, index] : pm.tfidf->vocabulary) terms[index] = term;
    doc["tfidf"] = {{"terms", terms},
                    {"idf", pm.tfidf->idf},
                    {"n_min", pm.tfidf->n_min},
                    {"n_max", pm.tfidf->n_max}};
  }
  if (pm.scale) doc["maxabs"] = pm.scale->factors;
  doc["model"] = {{"dim", pm.model.weights.size()},
                  {"weights", pm.model.weights},
                  {"bias", pm.model.bias},
                  {"C", pm.model.C},
                  {"w_neg", pm.model.class_weights.w_neg},
                  {"w_pos", pm.model.class_weights.w_pos},
                  {"tol", pm.model.tol},
                  {"max_iter", pm.model.max_iter},
                  {"seed", pm.model.seed}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PipelineError("cannot open model output: " + path);
  out << doc.dump() << '\n';
}

PipelineModel load_pipeline_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PipelineError("cannot open model file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw PipelineError(std::string("model file parse error: ") + e.what());
  }
  PipelineModel pm;
  pm.variant = variant_from_name(doc.at("variant").get<std::string>());
  pm.min_df = doc.at("min_df").get<std::size_t>();
  if (doc.contains("tfidf")) {
    TfidfModel tf;
    const auto& t = doc["tfidf"];
    const auto terms = t.at("terms").get<std::vector<std::string>>();
    for (std::size_t i = 0; i < terms.size(); ++i) tf.vocabulary.emplace(terms[i], i);
    tf.idf = t.at("idf").get<std::vector<double>>();
    tf.n_min = t.at("n_min").get<int>();
    tf.n_max = t.at("n_max").get<int>();
    tf.min_df = pm.min_df;
    pm.tfidf = std::move(tf);
  }
  if (doc.contains("maxabs")) {
    MaxAbsScale sc;
    const auto f = doc["maxabs"].get<std::vector<double>>();
    if (f.size() != 5) throw PipelineError("model file: maxabs must have 5 factors");
    std::copy(f.begin(), f.end(), sc.factors.begin());
    pm.scale = sc;
  }
  const auto& m = doc.at("model");
  pm.model.weights = m.at("weights").get<std::vector<double>>();
  pm.model.bias = m.at("bias").get<double>();
  pm.model.C = m.at("C").get<double>();
  pm.model.class_weights = {m.at("w_neg").get<double>(), m.at("w_pos").get<double>()};
  pm.model.tol = m.at("tol").get<double>();
  pm.model.max_iter = m.at("max_iter").get<int>();
  pm.model.seed = m.at("seed").get<std::uint64_t>();
  return pm;
}

}  // namespace vultriage
