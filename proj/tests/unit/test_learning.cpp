#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "prosodex/error.hpp"
#include "prosodex/learning.hpp"

using namespace prosodex;

namespace {

// Two Gaussian-ish clouds around (0,0) and (10,10).
void clouds(std::uint64_t seed, std::size_t per_class, Matrix& x, std::vector<int>& y) {
  Rng rng(seed);
  x = Matrix(2 * per_class, 2);
  y.assign(2 * per_class, 0);
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    const int c = i < per_class ? 0 : 1;
    y[i] = c;
    x(i, 0) = 10.0 * c + rng.uniform(-2, 2);
    x(i, 1) = 10.0 * c + rng.uniform(-2, 2);
  }
}

Dataset random_dataset(std::uint64_t seed, std::size_t rows, std::size_t cols, double signal) {
  Rng rng(seed);
  Dataset d;
  d.features = Matrix(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const int label = static_cast<int>(r % 2);
    d.labels.push_back(label);
    d.row_ids.push_back("r" + std::to_string(r));
    for (std::size_t c = 0; c < cols; ++c) {
      d.features(r, c) = rng.uniform(-1, 1) + (c < 2 ? signal * label : 0.0);
    }
  }
  for (std::size_t c = 0; c < cols; ++c) d.feature_names.push_back("f" + std::to_string(c));
  return d;
}

}  // namespace

TEST_SUITE("learning") {
  TEST_CASE("nmi reference cases") {
    std::vector<int> labels;
    std::vector<double> copy;
    for (int i = 0; i < 40; ++i) {
      labels.push_back(i % 2);
      copy.push_back(i % 2);
    }
    CHECK(std::abs(nmi(copy, labels) - 1.0) < 1e-9);
    CHECK(nmi(std::vector<double>(40, 3.0), labels) == 0.0);

    Rng rng(17);
    std::vector<double> noise(200);
    std::vector<int> lab(200);
    for (std::size_t i = 0; i < 200; ++i) {
      noise[i] = rng.uniform();
      lab[i] = static_cast<int>(rng.below(2));
    }
    CHECK(nmi(noise, lab) < 0.15);
    CHECK(nmi(noise, std::vector<int>(200, 1)) == 0.0);
    CHECK_THROWS_AS(nmi(noise, lab, 1), ConfigError);
  }

  TEST_CASE("nmi matches a hand-computed contingency table") {
    // Four bins of two values each; labels split 3/1 in one bin.
    const std::vector<double> f{1, 2, 3, 4, 5, 6, 7, 8};
    const std::vector<int> y{0, 0, 0, 1, 1, 1, 1, 0};
    const double got = nmi(f, y, 4);
    // p(bin) = 1/4 each; p(y) = 1/2 each. Cells: (0,0)=2,(1,0)=1,(1,1)=1,(2,1)=2,(3,1)=1,(3,0)=1.
    auto h = [](double p) { return p > 0 ? -p * std::log(p) : 0.0; };
    const double hb = 4 * h(0.25), hc = 2 * h(0.5);
    double mi = 0;
    for (auto [n, pb, pc] : std::vector<std::tuple<double, double, double>>{
             {2, .25, .5}, {1, .25, .5}, {1, .25, .5}, {2, .25, .5}, {1, .25, .5}, {1, .25, .5}}) {
      const double p = n / 8.0;
      mi += p * std::log(p / (pb * pc));
    }
    CHECK(std::abs(got - mi / std::sqrt(hb * hc)) < 1e-12);
  }

  TEST_CASE("equal frequency bins keep ties together") {
    const auto bins = equal_frequency_bins(std::vector<double>{1, 1, 1, 1, 2, 3}, 3);
    CHECK(bins[0] == bins[3]);
    CHECK(bins[4] != bins[0]);
  }

  TEST_CASE("feature ranking") {
    std::vector<int> y;
    Matrix m(40, 4);
    Rng rng(2);
    for (std::size_t i = 0; i < 40; ++i) {
      const int c = static_cast<int>(i % 2);
      y.push_back(c);
      m(i, 0) = c;
      m(i, 1) = c + (i % 4 == 1 ? -1.0 : 0.0);  // partially informative
      m(i, 2) = 5.0;
      m(i, 3) = c;  // duplicate of column 0
    }
    const auto r = rank_features(m, y);
    REQUIRE(r.size() == 4);
    CHECK(r[0].index == 0);
    CHECK(r[1].index == 3);
    CHECK(r[2].index == 1);
    CHECK(r[3].index == 2);
    CHECK(r[0].score == doctest::Approx(1.0));
    CHECK(r[3].score == 0.0);
  }

  TEST_CASE("every classifier separates two clouds") {
    Matrix x;
    std::vector<int> y;
    clouds(5, 20, x, y);
    for (auto kind : kAllClassifiers) {
      const auto model = train(ClassifierConfig::defaults(kind), x, y);
      CHECK_MESSAGE(model->predict(std::vector<double>{0, 1}) == 0, to_string(kind));
      CHECK_MESSAGE(model->predict(std::vector<double>{9, 10}) == 1, to_string(kind));
    }
  }

  TEST_CASE("single class training fails") {
    const Matrix x{{1, 2}, {2, 3}, {3, 4}};
    const std::vector<int> y{1, 1, 1};
    for (auto kind : kAllClassifiers) CHECK_THROWS_AS(train(ClassifierConfig::defaults(kind), x, y), TrainError);
  }

  TEST_CASE("knn unanimous vote") {
    const Matrix x{{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}, {9, 9}};
    const std::vector<int> y{0, 0, 0, 0, 0, 1};
    const KnnModel knn(x, y, 5);
    CHECK(knn.predict(std::vector<double>{9, 9}) == 0);
    CHECK(knn.predict(std::vector<double>{-100, 3}) == 0);
  }

  TEST_CASE("lda in one dimension") {
    const Matrix x{{-1}, {-2}, {1}, {2}};
    const std::vector<int> y{0, 0, 1, 1};
    const LdaModel lda(x, y, 1e-6);
    CHECK(lda.predict(std::vector<double>{0.5}) == 1);
    CHECK(lda.predict(std::vector<double>{-0.5}) == 0);
    CHECK(std::abs(lda.score(std::vector<double>{0.0})) < 1e-9);
  }

  TEST_CASE("lda direction matches the closed form") {
    Matrix x;
    std::vector<int> y;
    clouds(9, 15, x, y);
    const LdaModel lda(x, y, 0.0);
    double m[2][2] = {};
    for (std::size_t i = 0; i < x.rows(); ++i) {
      m[y[i]][0] += x(i, 0) / 15.0;
      m[y[i]][1] += x(i, 1) / 15.0;
    }
    double s00 = 0, s01 = 0, s11 = 0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const double a = x(i, 0) - m[y[i]][0], b = x(i, 1) - m[y[i]][1];
      s00 += a * a;
      s01 += a * b;
      s11 += b * b;
    }
    const double n2 = static_cast<double>(x.rows()) - 2.0;
    s00 /= n2;
    s01 /= n2;
    s11 /= n2;
    const double det = s00 * s11 - s01 * s01;
    const double d0 = m[1][0] - m[0][0], d1 = m[1][1] - m[0][1];
    const double w0 = (s11 * d0 - s01 * d1) / det, w1 = (-s01 * d0 + s00 * d1) / det;
    CHECK(lda.direction()[0] == doctest::Approx(w0).epsilon(1e-9));
    CHECK(lda.direction()[1] == doctest::Approx(w1).epsilon(1e-9));
  }

  TEST_CASE("models are deterministic in the seed") {
    Matrix x;
    std::vector<int> y;
    clouds(21, 12, x, y);
    for (auto kind : {ClassifierKind::rf, ClassifierKind::svm, ClassifierKind::mlp}) {
      auto cfg = ClassifierConfig::defaults(kind);
      cfg.mlp_max_iterations = 300;
      const auto a = train(cfg, x, y);
      const auto b = train(cfg, x, y);
      Rng rng(1);
      for (int i = 0; i < 20; ++i) {
        const std::vector<double> q{rng.uniform(-3, 13), rng.uniform(-3, 13)};
        CHECK(a->predict(q) == b->predict(q));
      }
    }
    const RandomForestModel rf(x, y, 100, 2, 0);
    CHECK(rf.trees().size() == 100);
    for (const auto& t : rf.trees()) CHECK(t.size() <= 7);
  }

  TEST_CASE("mlp stops early on tolerance") {
    Matrix x;
    std::vector<int> y;
    clouds(3, 10, x, y);
    auto cfg = ClassifierConfig::defaults(ClassifierKind::mlp);
    cfg.mlp_tolerance = 1e-3;
    const MlpModel mlp(x, y, cfg);
    CHECK(mlp.iterations() < cfg.mlp_max_iterations);
  }

  TEST_CASE("score predictions") {
    const std::vector<int> truth{0, 0, 0, 1, 1};
    const std::vector<int> pred{0, 1, 0, 1, 0};
    const auto r = score_predictions(truth, pred);
    CHECK(r.correct == 3);
    CHECK(r.accuracy == doctest::Approx(0.6));
    CHECK(r.precision[0] == doctest::Approx(2.0 / 3.0));
    CHECK(r.recall[0] == doctest::Approx(2.0 / 3.0));
    CHECK(r.precision[1] == doctest::Approx(0.5));
    CHECK(r.recall[1] == doctest::Approx(0.5));
    CHECK(r.accuracy == doctest::Approx((r.recall[0] * r.support[0] + r.recall[1] * r.support[1]) / 5.0));
  }

  TEST_CASE("loocv on four rows") {
    const auto d = random_dataset(1, 4, 3, 3.0);
    const auto row = loocv(d, ClassifierConfig::defaults(ClassifierKind::lda), 10, 2);
    CHECK(row.total == 4);
    CHECK(row.predictions.size() == 4);
    const double acc4 = row.accuracy * 4.0;
    CHECK(std::abs(acc4 - std::round(acc4)) < 1e-12);
    CHECK_THROWS_AS(loocv(d, ClassifierConfig::defaults(ClassifierKind::lda), 10, 4), ConfigError);
    auto three = d;
    three.features = d.features.select_rows(std::vector<std::size_t>{0, 1, 2});
    three.labels.resize(3);
    CHECK_THROWS_AS(loocv(three, ClassifierConfig::defaults(ClassifierKind::lda), 10, 2), ConfigError);
  }

  TEST_CASE("loocv matches a fold-by-fold replay") {
    const auto d = random_dataset(4, 24, 6, 1.0);
    for (auto kind : {ClassifierKind::lda, ClassifierKind::knn, ClassifierKind::rf}) {
      const auto cfg = ClassifierConfig::defaults(kind);
      const auto row = loocv(d, cfg, 10, 3);
      for (std::size_t i = 0; i < d.rows(); ++i) {
        const Matrix train_x = d.features.without_row(i);
        std::vector<int> train_y = d.labels;
        train_y.erase(train_y.begin() + static_cast<std::ptrdiff_t>(i));
        const auto model = fit_standardizer(train_x);
        const Matrix z = apply_standardizer(model, train_x);
        const auto ranking = rank_features(z, train_y, 10);
        std::vector<std::size_t> top;
        for (std::size_t k = 0; k < 3; ++k) top.push_back(ranking[k].index);
        const auto clf = train(cfg, z.select_columns(top), train_y);
        std::vector<double> held(d.features.row(i).begin(), d.features.row(i).end());
        apply_standardizer_inplace(model, held);
        std::vector<double> q;
        for (auto c : top) q.push_back(held[c]);
        CHECK(clf->predict(q) == row.predictions[i]);
      }
    }
  }

  TEST_CASE("an all-zero column is inert") {
    const auto d = random_dataset(8, 20, 4, 1.5);
    auto padded = d;
    Matrix wide(d.rows(), d.cols() + 1);
    for (std::size_t r = 0; r < d.rows(); ++r) {
      for (std::size_t c = 0; c < d.cols(); ++c) wide(r, c) = d.features(r, c);
    }
    padded.features = wide;
    padded.feature_names.push_back("zero");
    for (auto kind : {ClassifierKind::lda, ClassifierKind::knn, ClassifierKind::svm}) {
      const auto cfg = ClassifierConfig::defaults(kind);
      CHECK(loocv(d, cfg, 10, 3).predictions == loocv(padded, cfg, 10, 3).predictions);
    }
  }

  TEST_CASE("sweep picks the smallest n_f among ties and is deterministic") {
    const auto d = random_dataset(10, 30, 6, 4.0);
    const std::vector<ClassifierConfig> cfgs{ClassifierConfig::defaults(ClassifierKind::lda),
                                             ClassifierConfig::defaults(ClassifierKind::knn)};
    const auto a = sweep_nf(d, cfgs, 1, 50, 10);
    const auto b = sweep_nf(d, cfgs, 1, 50, 10, 3);
    CHECK(a.rows == b.rows);
    CHECK(a.best == b.best);
    CHECK(a.rows.size() == 12);
    for (const auto& best : a.best) {
      for (const auto& r : a.rows) {
        if (r.classifier != best.classifier) continue;
        CHECK(r.accuracy <= best.accuracy);
        if (r.accuracy == best.accuracy) CHECK(r.n_features >= best.n_features);
      }
    }
    CHECK(report_csv(a).starts_with(
        "classifier,n_f,precision_poetry,precision_prose,recall_poetry,recall_prose,accuracy\n"));
    const auto j = nlohmann::json::parse(report_summary_json(a));
    CHECK(j["best"].size() == 2);
  }

  TEST_CASE("classifier names") {
    for (auto kind : kAllClassifiers) CHECK(parse_classifier(to_string(kind)) == kind);
    CHECK(parse_classifier("mlp") == ClassifierKind::mlp);
    CHECK_THROWS_AS(parse_classifier("xgboost"), ConfigError);
  }
}
