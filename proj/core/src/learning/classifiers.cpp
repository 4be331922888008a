#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "prosodex/error.hpp"
#include "prosodex/learning.hpp"
#include "prosodex/rng.hpp"

namespace prosodex {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMatrix> as_eigen(const Matrix& m) {
  return {m.raw(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

Eigen::Map<const Eigen::VectorXd> as_eigen(std::span<const double> v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

void check_training_set(const Matrix& x, std::span<const int> y) {
  if (x.rows() != y.size()) throw TrainError("feature rows and labels differ in count");
  if (x.rows() == 0) throw TrainError("empty training set");
  bool seen[2] = {false, false};
  for (int c : y) {
    if (c != 0 && c != 1) throw TrainError("labels must be class indices 0 or 1");
    seen[c] = true;
  }
  if (!seen[0] || !seen[1]) {
    throw TrainError(std::string("training set has no ") + (seen[0] ? "prose" : "poetry") + " rows");
  }
}

}  // namespace

std::string_view to_string(ClassifierKind kind) noexcept {
  switch (kind) {
    case ClassifierKind::lda: return "LDA";
    case ClassifierKind::rf: return "RF";
    case ClassifierKind::knn: return "KNN";
    case ClassifierKind::svm: return "SVM";
    case ClassifierKind::mlp: return "MLP";
  }
  return "LDA";
}

ClassifierKind parse_classifier(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (auto kind : kAllClassifiers) {
    if (to_string(kind) == upper) return kind;
  }
  throw ConfigError("unknown classifier '" + std::string(name) + "'");
}

// --- LDA -------------------------------------------------------------------

LdaModel::LdaModel(const Matrix& x, std::span<const int> y, double ridge) {
  check_training_set(x, y);
  const auto X = as_eigen(x);
  const Eigen::Index p = X.cols();
  Eigen::VectorXd mean[2] = {Eigen::VectorXd::Zero(p), Eigen::VectorXd::Zero(p)};
  double count[2] = {0, 0};
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    mean[y[i]] += X.row(i).transpose();
    count[y[i]] += 1;
  }
  mean[0] /= count[0];
  mean[1] /= count[1];

  Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const Eigen::VectorXd d = X.row(i).transpose() - mean[y[i]];
    pooled.noalias() += d * d.transpose();
  }
  const double dof = X.rows() > 2 ? static_cast<double>(X.rows() - 2) : static_cast<double>(X.rows());
  pooled /= dof;
  pooled.diagonal().array() += ridge;

  const Eigen::VectorXd w = pooled.ldlt().solve(mean[1] - mean[0]);
  w_.assign(w.data(), w.data() + w.size());
  const double n = count[0] + count[1];
  offset_ = -w.dot(0.5 * (mean[0] + mean[1])) + std::log((count[1] / n) / (count[0] / n));
}

double LdaModel::score(std::span<const double> row) const {
  return as_eigen(std::span<const double>(w_)).dot(as_eigen(row)) + offset_;
}

int LdaModel::predict(std::span<const double> row) const { return score(row) > 0.0 ? 1 : 0; }

// --- Random forest ---------------------------------------------------------

namespace {

struct TreeBuilder {
  const Matrix& x;
  std::span<const int> y;
  int max_depth;
  Rng& rng;
  RandomForestModel::Tree tree;

  static int majority(std::span<const std::size_t> rows, std::span<const int> y) {
    std::size_t ones = 0;
    for (auto r : rows) ones += static_cast<std::size_t>(y[r]);
    return 2 * ones > rows.size() ? 1 : 0;
  }

  static double gini(double n0, double n1) {
    const double n = n0 + n1;
    if (n == 0) return 0.0;
    const double p0 = n0 / n, p1 = n1 / n;
    return 1.0 - p0 * p0 - p1 * p1;
  }

  int build(std::vector<std::size_t> rows, int depth) {
    const int id = static_cast<int>(tree.size());
    tree.push_back({});
    tree[static_cast<std::size_t>(id)].leaf_class = majority(rows, y);

    std::size_t ones = 0;
    for (auto r : rows) ones += static_cast<std::size_t>(y[r]);
    if (depth >= max_depth || ones == 0 || ones == rows.size() || rows.size() < 2) return id;

    // Candidate features: partial Fisher-Yates draw of sqrt(p).
    const std::size_t p = x.cols();
    const std::size_t m = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(p))));
    std::vector<std::size_t> features(p);
    std::iota(features.begin(), features.end(), 0);
    for (std::size_t i = 0; i < m; ++i) std::swap(features[i], features[i + rng.below(p - i)]);

    const double n = static_cast<double>(rows.size());
    const double parent = gini(n - static_cast<double>(ones), static_cast<double>(ones));
    double best_gain = 1e-12;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::pair<double, int>> column(rows.size());
    for (std::size_t f = 0; f < m; ++f) {
      const std::size_t feat = features[f];
      for (std::size_t i = 0; i < rows.size(); ++i) column[i] = {x(rows[i], feat), y[rows[i]]};
      std::sort(column.begin(), column.end());
      double left[2] = {0, 0};
      const double total1 = static_cast<double>(ones), total0 = n - total1;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        left[column[i].second] += 1;
        if (column[i].first == column[i + 1].first) continue;
        const double nl = left[0] + left[1];
        const double nr = n - nl;
        const double impurity = (nl * gini(left[0], left[1]) + nr * gini(total0 - left[0], total1 - left[1])) / n;
        const double gain = parent - impurity;
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = static_cast<int>(feat);
          best_threshold = 0.5 * (column[i].first + column[i + 1].first);
        }
      }
    }
    if (best_feature < 0) return id;

    std::vector<std::size_t> lrows, rrows;
    for (auto r : rows) {
      (x(r, static_cast<std::size_t>(best_feature)) <= best_threshold ? lrows : rrows).push_back(r);
    }
    const int l = build(std::move(lrows), depth + 1);
    const int r = build(std::move(rrows), depth + 1);
    auto& node = tree[static_cast<std::size_t>(id)];
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = l;
    node.right = r;
    return id;
  }
};

}  // namespace

RandomForestModel::RandomForestModel(const Matrix& x, std::span<const int> y, int trees,
                                     int max_depth, std::uint64_t seed) {
  check_training_set(x, y);
  Rng rng(seed);
  const std::size_t n = x.rows();
  trees_.reserve(static_cast<std::size_t>(trees));
  for (int t = 0; t < trees; ++t) {
    std::vector<std::size_t> sample(n);
    for (auto& s : sample) s = rng.below(n);
    TreeBuilder builder{x, y, max_depth, rng, {}};
    builder.build(std::move(sample), 0);
    trees_.push_back(std::move(builder.tree));
  }
}

int RandomForestModel::predict(std::span<const double> row) const {
  std::size_t votes = 0;
  for (const auto& tree : trees_) {
    std::size_t node = 0;
    while (tree[node].feature >= 0) {
      node = static_cast<std::size_t>(row[static_cast<std::size_t>(tree[node].feature)] <= tree[node].threshold
                                          ? tree[node].left
                                          : tree[node].right);
    }
    votes += static_cast<std::size_t>(tree[node].leaf_class);
  }
  return 2 * votes > trees_.size() ? 1 : 0;
}

// --- KNN -------------------------------------------------------------------

KnnModel::KnnModel(const Matrix& x, std::span<const int> y, int k)
    : x_(x), y_(y.begin(), y.end()), k_(k) {
  if (k < 1) throw ConfigError("KNN needs k >= 1");
  check_training_set(x, y);
}

int KnnModel::predict(std::span<const double> row) const {
  std::vector<std::pair<double, std::size_t>> dist(x_.rows());
  for (std::size_t i = 0; i < x_.rows(); ++i) {
    const auto r = x_.row(i);
    double d = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) d += (r[j] - row[j]) * (r[j] - row[j]);
    dist[i] = {d, i};
  }
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(k_), dist.size());
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
  std::size_t votes[2] = {0, 0};
  for (std::size_t i = 0; i < k; ++i) ++votes[y_[dist[i].second]];
  if (votes[0] == votes[1]) return y_[dist[0].second];
  return votes[1] > votes[0] ? 1 : 0;
}

// --- Linear SVM (Pegasos) --------------------------------------------------

LinearSvmModel::LinearSvmModel(const Matrix& x, std::span<const int> y, double lambda,
                               long iterations, std::uint64_t seed) {
  check_training_set(x, y);
  if (!(lambda > 0.0)) throw ConfigError("SVM lambda must be positive");
  const std::size_t n = x.rows(), p = x.cols();
  std::vector<double> w(p + 1, 0.0);  // last component multiplies a constant 1
  double scale = 1.0;                 // w_true = scale * w
  Rng rng(seed);
  const double radius = 1.0 / std::sqrt(lambda);
  double sq_norm = 0.0;
  for (long t = 1; t <= iterations; ++t) {
    const std::size_t i = rng.below(n);
    const auto xi = x.row(i);
    const double yi = y[i] == 1 ? 1.0 : -1.0;
    double dot = w[p];
    for (std::size_t j = 0; j < p; ++j) dot += w[j] * xi[j];
    const double margin = yi * scale * dot;
    const double eta = 1.0 / (lambda * static_cast<double>(t));

    // w <- (1 - eta·lambda) w, kept implicit in `scale`.
    const double shrink = 1.0 - eta * lambda;
    if (shrink <= 0.0) {
      std::fill(w.begin(), w.end(), 0.0);
      scale = 1.0;
      sq_norm = 0.0;
    } else {
      scale *= shrink;
      sq_norm *= shrink * shrink;
    }
    if (margin < 1.0) {
      const double step = eta * yi / scale;
      double cross = w[p];
      double xx = 1.0;
      for (std::size_t j = 0; j < p; ++j) {
        cross += w[j] * xi[j];
        xx += xi[j] * xi[j];
      }
      for (std::size_t j = 0; j < p; ++j) w[j] += step * xi[j];
      w[p] += step;
      sq_norm += scale * scale * (2.0 * step * cross + step * step * xx);
    }
    // Projection onto the ball of radius 1/sqrt(lambda).
    const double norm = std::sqrt(std::max(sq_norm, 0.0));
    if (norm > radius) {
      scale *= radius / norm;
      sq_norm = radius * radius;
    }
    if (scale < 1e-100) {
      for (auto& v : w) v *= scale;
      scale = 1.0;
    }
  }
  w_.resize(p);
  for (std::size_t j = 0; j < p; ++j) w_[j] = scale * w[j];
  bias_ = scale * w[p];
}

double LinearSvmModel::decision(std::span<const double> row) const {
  double d = bias_;
  for (std::size_t j = 0; j < w_.size(); ++j) d += w_[j] * row[j];
  return d;
}

int LinearSvmModel::predict(std::span<const double> row) const { return decision(row) >= 0.0 ? 1 : 0; }

// --- MLP -------------------------------------------------------------------

struct MlpModel::Weights {
  Eigen::MatrixXd w1;  // p x h
  Eigen::RowVectorXd b1;
  Eigen::VectorXd w2;  // h
  double b2 = 0.0;
};

MlpModel::~MlpModel() = default;

MlpModel::MlpModel(const Matrix& x, std::span<const int> y, const ClassifierConfig& config)
    : weights_(std::make_unique<Weights>()) {
  check_training_set(x, y);
  const auto X = as_eigen(x);
  const Eigen::Index n = X.rows(), p = X.cols(), h = config.mlp_hidden;
  if (h < 1) throw ConfigError("MLP needs at least one hidden unit");
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) target[i] = y[static_cast<std::size_t>(i)];

  Rng rng(config.seed);
  auto& W = *weights_;
  W.w1.resize(p, h);
  W.b1.resize(h);
  W.w2.resize(h);
  for (Eigen::Index j = 0; j < h; ++j) {
    for (Eigen::Index i = 0; i < p; ++i) W.w1(i, j) = rng.uniform(-0.5, 0.5);
  }
  for (Eigen::Index j = 0; j < h; ++j) W.b1[j] = rng.uniform(-0.5, 0.5);
  for (Eigen::Index j = 0; j < h; ++j) W.w2[j] = rng.uniform(-0.5, 0.5);
  W.b2 = rng.uniform(-0.5, 0.5);

  const Eigen::MatrixXd Xd = X;
  Eigen::MatrixXd hidden(n, h);
  Eigen::VectorXd prob(n);
  const double lr = config.mlp_learning_rate;

  auto forward = [&] {
    hidden.noalias() = Xd * W.w1;
    hidden.rowwise() += W.b1;
    // tanh(a) = 1 - 2/(e^{2a} + 1); Eigen vectorizes exp but not tanh for doubles.
    hidden = 1.0 - 2.0 / ((2.0 * hidden.array()).exp() + 1.0);
    prob.noalias() = hidden * W.w2;
    double loss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double z = prob[i] + W.b2;
      // log(1 + e^{-|z|}) keeps the cross-entropy finite for large |z|.
      const double soft = std::log1p(std::exp(-std::abs(z)));
      loss += (target[i] > 0.5 ? std::max(-z, 0.0) : std::max(z, 0.0)) + soft;
      prob[i] = 1.0 / (1.0 + std::exp(-z));
    }
    return loss / static_cast<double>(n);
  };

  double loss = forward();
  int it = 0;
  for (; it < config.mlp_max_iterations; ++it) {
    const Eigen::VectorXd dz = (prob - target) / static_cast<double>(n);
    const Eigen::VectorXd gw2 = hidden.transpose() * dz;
    const double gb2 = dz.sum();
    const Eigen::MatrixXd dh = (dz * W.w2.transpose()).array() * (1.0 - hidden.array().square());
    W.w1.noalias() -= lr * (Xd.transpose() * dh);
    W.b1 -= lr * dh.colwise().sum();
    W.w2 -= lr * gw2;
    W.b2 -= lr * gb2;

    const double next = forward();
    const double improvement = loss - next;
    loss = next;
    if (improvement < config.mlp_tolerance) {
      ++it;
      break;
    }
  }
  iterations_ = it;
  loss_ = loss;
}

double MlpModel::probability(std::span<const double> row) const {
  const auto& W = *weights_;
  const Eigen::RowVectorXd hidden = ((as_eigen(row).transpose() * W.w1) + W.b1).array().tanh();
  const double z = hidden.dot(W.w2) + W.b2;
  return 1.0 / (1.0 + std::exp(-z));
}

int MlpModel::predict(std::span<const double> row) const { return probability(row) >= 0.5 ? 1 : 0; }

// ---------------------------------------------------------------------------

std::unique_ptr<Model> train(const ClassifierConfig& config, const Matrix& x, std::span<const int> y) {
  switch (config.kind) {
    case ClassifierKind::lda:
      return std::make_unique<LdaModel>(x, y, config.lda_ridge);
    case ClassifierKind::rf:
      return std::make_unique<RandomForestModel>(x, y, config.rf_trees, config.rf_max_depth, config.seed);
    case ClassifierKind::knn:
      return std::make_unique<KnnModel>(x, y, config.knn_k);
    case ClassifierKind::svm:
      return std::make_unique<LinearSvmModel>(x, y, config.svm_lambda, config.svm_iterations, config.seed);
    case ClassifierKind::mlp:
      return std::make_unique<MlpModel>(x, y, config);
  }
  throw ConfigError("unknown classifier kind");
}

}  // namespace prosodex
