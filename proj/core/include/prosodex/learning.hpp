#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prosodex/features.hpp"
#include "prosodex/matrix.hpp"

namespace prosodex {

/// Feature matrix with class indices 0 (poetry) / 1 (prose).
struct Dataset {
  Matrix features;
  std::vector<int> labels;
  std::vector<std::string> feature_names;
  std::vector<std::string> row_ids;

  std::size_t rows() const noexcept { return features.rows(); }
  std::size_t cols() const noexcept { return features.cols(); }

  /// Throws ConfigError for unlabeled rows.
  static Dataset from_table(const FeatureTable& table);
};

// ---------------------------------------------------------------------------
// Feature ranking

/// Normalized mutual information between an equal-frequency discretization
/// of `feature` (into at most `bins` bins) and the class labels:
/// I(B; C) / sqrt(H(B) H(C)), defined as 0 when either entropy vanishes.
double nmi(std::span<const double> feature, std::span<const int> labels, int bins = 10);

/// Bin index per sample under the equal-frequency discretization used by nmi.
std::vector<int> equal_frequency_bins(std::span<const double> feature, int bins);

struct RankedFeature {
  std::size_t index = 0;
  double score = 0.0;

  friend bool operator==(const RankedFeature&, const RankedFeature&) = default;
};

/// Columns by descending NMI; ties by ascending column index.
std::vector<RankedFeature> rank_features(const Matrix& features, std::span<const int> labels,
                                         int bins = 10);

// ---------------------------------------------------------------------------
// Classifiers

enum class ClassifierKind { lda, rf, knn, svm, mlp };

inline constexpr std::array<ClassifierKind, 5> kAllClassifiers = {
    ClassifierKind::lda, ClassifierKind::rf, ClassifierKind::knn, ClassifierKind::svm,
    ClassifierKind::mlp,
};

std::string_view to_string(ClassifierKind kind) noexcept;
/// "LDA", "RF", "KNN", "SVM", "MLP" (any case). Throws ConfigError.
ClassifierKind parse_classifier(std::string_view name);

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::lda;
  std::uint64_t seed = 0;

  double lda_ridge = 1e-6;

  int rf_trees = 100;
  int rf_max_depth = 2;

  int knn_k = 5;

  double svm_lambda = 1e-2;
  long svm_iterations = 100000;

  int mlp_hidden = 40;
  int mlp_max_iterations = 10000;
  double mlp_learning_rate = 0.01;
  double mlp_tolerance = 1e-6;

  static ClassifierConfig defaults(ClassifierKind kind) {
    ClassifierConfig c;
    c.kind = kind;
    return c;
  }
};

class Model {
 public:
  virtual ~Model() = default;
  virtual int predict(std::span<const double> row) const = 0;
};

/// Two-class Fisher discriminant on a pooled, ridge-regularized covariance.
/// Decides class 1 when w·x - w·(m0+m1)/2 + ln(π1/π0) > 0.
class LdaModel final : public Model {
 public:
  LdaModel(const Matrix& x, std::span<const int> y, double ridge);
  int predict(std::span<const double> row) const override;
  double score(std::span<const double> row) const;
  const std::vector<double>& direction() const noexcept { return w_; }

 private:
  std::vector<double> w_;
  double offset_ = 0.0;
};

/// Bagged depth-limited Gini trees with sqrt(p) candidate features per split.
class RandomForestModel final : public Model {
 public:
  RandomForestModel(const Matrix& x, std::span<const int> y, int trees, int max_depth,
                    std::uint64_t seed);
  int predict(std::span<const double> row) const override;

  struct Node {
    int feature = -1;  ///< -1 for leaves
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int leaf_class = 0;
  };
  using Tree = std::vector<Node>;

  const std::vector<Tree>& trees() const noexcept { return trees_; }

 private:
  std::vector<Tree> trees_;
};

/// Euclidean k-nearest neighbours. Distance ties go to the lower training
/// row; vote ties to the nearest neighbour's class.
class KnnModel final : public Model {
 public:
  KnnModel(const Matrix& x, std::span<const int> y, int k);
  int predict(std::span<const double> row) const override;

 private:
  Matrix x_;
  std::vector<int> y_;
  int k_;
};

/// Linear soft-margin SVM trained with Pegasos (bias as a constant feature).
class LinearSvmModel final : public Model {
 public:
  LinearSvmModel(const Matrix& x, std::span<const int> y, double lambda, long iterations,
                 std::uint64_t seed);
  int predict(std::span<const double> row) const override;
  double decision(std::span<const double> row) const;

 private:
  std::vector<double> w_;
  double bias_ = 0.0;
};

/// One tanh hidden layer, logistic output, full-batch gradient descent on
/// mean cross-entropy.
class MlpModel final : public Model {
 public:
  MlpModel(const Matrix& x, std::span<const int> y, const ClassifierConfig& config);
  ~MlpModel() override;
  int predict(std::span<const double> row) const override;
  double probability(std::span<const double> row) const;
  int iterations() const noexcept { return iterations_; }
  double final_loss() const noexcept { return loss_; }

 private:
  struct Weights;
  std::unique_ptr<Weights> weights_;
  int iterations_ = 0;
  double loss_ = 0.0;
};

/// Throws TrainError unless both classes are present.
std::unique_ptr<Model> train(const ClassifierConfig& config, const Matrix& x,
                             std::span<const int> y);

// ---------------------------------------------------------------------------
// Evaluation

struct EvalRow {
  ClassifierKind classifier = ClassifierKind::lda;
  std::size_t n_features = 0;
  std::array<double, 2> precision{};  ///< [poetry, prose]
  std::array<double, 2> recall{};
  double accuracy = 0.0;
  std::size_t correct = 0;
  std::size_t total = 0;
  std::array<std::size_t, 2> support{};
  std::vector<int> predictions;  ///< held-out prediction per row

  friend bool operator==(const EvalRow&, const EvalRow&) = default;
};

/// Metrics from true and predicted class indices.
EvalRow score_predictions(std::span<const int> truth, std::span<const int> predicted);

/// Everything a fold fits on its training rows.
struct FoldPipeline {
  StandardizationModel standardizer;
  std::vector<RankedFeature> ranking;
};

FoldPipeline fit_fold_pipeline(const Matrix& train_x, std::span<const int> train_y, int bins);

/// Leave-one-out: each row is predicted by a pipeline (standardizer, NMI
/// ranking, top-`n_features` classifier) fitted on the other rows.
EvalRow loocv(const Dataset& data, const ClassifierConfig& config, int bins,
              std::size_t n_features, int jobs = 1);

struct EvalReport {
  std::vector<EvalRow> rows;
  /// Per classifier: highest accuracy, smallest n_features among ties.
  std::vector<EvalRow> best;
};

/// loocv for every classifier and n_f in [nf_min, min(nf_max, columns)].
/// Fold pipelines are fitted once and shared across classifiers.
EvalReport sweep_nf(const Dataset& data, std::span<const ClassifierConfig> configs,
                    std::size_t nf_min, std::size_t nf_max, int bins, int jobs = 1);

/// classifier,n_f,precision_poetry,precision_prose,recall_poetry,recall_prose,accuracy
std::string report_csv(const EvalReport& report);
/// Best rows per classifier with metrics rounded to two decimals.
std::string report_summary_json(const EvalReport& report);

}  // namespace prosodex
