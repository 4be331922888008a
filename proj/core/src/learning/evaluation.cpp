#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "prosodex/error.hpp"
#include "prosodex/learning.hpp"
#include "prosodex/parallel.hpp"

namespace prosodex {

Dataset Dataset::from_table(const FeatureTable& table) {
  Dataset d;
  d.features = table.matrix();
  d.feature_names = table.names;
  for (const auto& row : table.rows) {
    d.labels.push_back(class_index(row.label));
    d.row_ids.push_back(row.doc_id);
  }
  return d;
}

EvalRow score_predictions(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) throw DomainError("prediction count mismatch");
  EvalRow row;
  std::size_t confusion[2][2] = {{0, 0}, {0, 0}};  // [truth][predicted]
  for (std::size_t i = 0; i < truth.size(); ++i) ++confusion[truth[i]][predicted[i]];
  row.total = truth.size();
  row.correct = confusion[0][0] + confusion[1][1];
  row.accuracy = row.total ? static_cast<double>(row.correct) / static_cast<double>(row.total) : 0.0;
  for (int c = 0; c < 2; ++c) {
    const std::size_t tp = confusion[c][c];
    const std::size_t predicted_c = confusion[0][c] + confusion[1][c];
    const std::size_t actual_c = confusion[c][0] + confusion[c][1];
    row.support[c] = actual_c;
    row.precision[c] = predicted_c ? static_cast<double>(tp) / static_cast<double>(predicted_c) : 0.0;
    row.recall[c] = actual_c ? static_cast<double>(tp) / static_cast<double>(actual_c) : 0.0;
  }
  row.predictions.assign(predicted.begin(), predicted.end());
  return row;
}

FoldPipeline fit_fold_pipeline(const Matrix& train_x, std::span<const int> train_y, int bins) {
  FoldPipeline fp;
  fp.standardizer = fit_standardizer(train_x);
  fp.ranking = rank_features(apply_standardizer(fp.standardizer, train_x), train_y, bins);
  return fp;
}

namespace {

void check_dataset(const Dataset& data) {
  if (data.rows() != data.labels.size()) throw DomainError("dataset rows and labels differ");
  if (data.rows() < 4) throw ConfigError("leave-one-out needs at least 4 rows");
  const auto ones = std::count(data.labels.begin(), data.labels.end(), 1);
  if (ones == 0) throw TrainError("dataset has no prose rows");
  if (ones == static_cast<std::ptrdiff_t>(data.rows())) throw TrainError("dataset has no poetry rows");
}

std::vector<std::size_t> top_columns(const std::vector<RankedFeature>& ranking, std::size_t k) {
  std::vector<std::size_t> cols(k);
  for (std::size_t i = 0; i < k; ++i) cols[i] = ranking[i].index;
  return cols;
}

struct Fold {
  Matrix train;  // standardized, all columns
  std::vector<int> labels;
  std::vector<double> held_out;  // standardized
  std::vector<RankedFeature> ranking;
};

Fold make_fold(const Dataset& data, std::size_t i, int bins) {
  Fold f;
  const Matrix raw = data.features.without_row(i);
  f.labels = data.labels;
  f.labels.erase(f.labels.begin() + static_cast<std::ptrdiff_t>(i));
  const auto pipeline = fit_fold_pipeline(raw, f.labels, bins);
  f.train = apply_standardizer(pipeline.standardizer, raw);
  const auto row = data.features.row(i);
  f.held_out.assign(row.begin(), row.end());
  apply_standardizer_inplace(pipeline.standardizer, f.held_out);
  f.ranking = pipeline.ranking;
  return f;
}

int predict_fold(const Fold& f, const ClassifierConfig& config, std::size_t n_features) {
  const auto cols = top_columns(f.ranking, n_features);
  const Matrix x = f.train.select_columns(cols);
  std::vector<double> query(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) query[j] = f.held_out[cols[j]];
  return train(config, x, f.labels)->predict(query);
}

}  // namespace

EvalRow loocv(const Dataset& data, const ClassifierConfig& config, int bins,
              std::size_t n_features, int jobs) {
  check_dataset(data);
  if (n_features == 0 || n_features > data.cols()) {
    throw ConfigError("n_f = " + std::to_string(n_features) + " outside 1.." + std::to_string(data.cols()));
  }
  std::vector<int> predicted(data.rows());
  parallel_for(data.rows(), jobs, [&](std::size_t i) {
    predicted[i] = predict_fold(make_fold(data, i, bins), config, n_features);
  });
  EvalRow row = score_predictions(data.labels, predicted);
  row.classifier = config.kind;
  row.n_features = n_features;
  return row;
}

EvalReport sweep_nf(const Dataset& data, std::span<const ClassifierConfig> configs,
                    std::size_t nf_min, std::size_t nf_max, int bins, int jobs) {
  check_dataset(data);
  nf_max = std::min(nf_max, data.cols());
  if (nf_min == 0 || nf_min > nf_max) {
    throw ConfigError("empty n_f range " + std::to_string(nf_min) + ".." + std::to_string(nf_max));
  }
  std::vector<Fold> folds(data.rows());
  parallel_for(data.rows(), jobs, [&](std::size_t i) { folds[i] = make_fold(data, i, bins); });

  EvalReport report;
  for (const auto& config : configs) {
    EvalRow best;
    bool have_best = false;
    for (std::size_t nf = nf_min; nf <= nf_max; ++nf) {
      std::vector<int> predicted(data.rows());
      parallel_for(data.rows(), jobs, [&](std::size_t i) { predicted[i] = predict_fold(folds[i], config, nf); });
      EvalRow row = score_predictions(data.labels, predicted);
      row.classifier = config.kind;
      row.n_features = nf;
      if (!have_best || row.correct > best.correct) {
        best = row;
        have_best = true;
      }
      report.rows.push_back(std::move(row));
    }
    report.best.push_back(std::move(best));
  }
  return report;
}

std::string report_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "classifier,n_f,precision_poetry,precision_prose,recall_poetry,recall_prose,accuracy\n";
  for (const auto& r : report.rows) {
    out << to_string(r.classifier) << ',' << r.n_features << ',' << format_double(r.precision[0]) << ','
        << format_double(r.precision[1]) << ',' << format_double(r.recall[0]) << ','
        << format_double(r.recall[1]) << ',' << format_double(r.accuracy) << '\n';
  }
  return out.str();
}

std::string report_summary_json(const EvalReport& report) {
  auto two = [](double v) { return std::round(v * 100.0) / 100.0; };
  nlohmann::ordered_json best = nlohmann::ordered_json::array();
  for (const auto& r : report.best) {
    best.push_back({{"classifier", to_string(r.classifier)},
                    {"n_f", r.n_features},
                    {"precision_poetry", two(r.precision[0])},
                    {"precision_prose", two(r.precision[1])},
                    {"recall_poetry", two(r.recall[0])},
                    {"recall_prose", two(r.recall[1])},
                    {"accuracy", two(r.accuracy)}});
  }
  nlohmann::ordered_json doc;
  doc["best"] = std::move(best);
  return doc.dump(2) + "\n";
}

}  // namespace prosodex
