#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prosodex/label.hpp"
#include "prosodex/matrix.hpp"
#include "prosodex/windowing.hpp"

namespace prosodex {

struct WindowMeasures {
  int span = 0;            ///< l
  double mean_diff = 0.0;  ///< mean of T_w
  double std_diff = 0.0;   ///< population std of T_w
};

WindowMeasures window_measures(const Window& window);

inline constexpr std::size_t kFeaturesPerGridPoint = 7;

/// Per grid point: mu_l, cv_l, mu_l_x_cv_l, mean_mu_d, std_mu_d,
/// mean_sigma_d, std_sigma_d.
inline constexpr std::array<std::string_view, kFeaturesPerGridPoint> kFeatureNames = {
    "mu_l", "cv_l", "mu_l_x_cv_l", "mean_mu_d", "std_mu_d", "mean_sigma_d", "std_sigma_d",
};

using GridPointFeatures = std::array<double, kFeaturesPerGridPoint>;

/// Seven aggregates over the windows of one grid point; all zero when empty.
GridPointFeatures aggregate_windows(const WindowSet& windows);

struct FeatureVector {
  std::string doc_id;
  Label label = Label::unlabeled;
  std::vector<double> values;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Concatenates aggregate_windows(detect_windows(signals, p)) for p in grid.
FeatureVector document_features(const SignalSequence& signals,
                                 std::span<const WindowingParams> grid);

/// "f_<L0>_<Δ with two decimals>_<name>", grid-major.
std::vector<std::string> feature_column_names(std::span<const WindowingParams> grid);

struct StandardizationModel {
  std::vector<double> mean;
  std::vector<double> stddev;  ///< population
};

StandardizationModel fit_standardizer(const Matrix& train);
/// z-scores with the model's statistics; zero-std columns become 0.
Matrix apply_standardizer(const StandardizationModel& model, const Matrix& data);
void apply_standardizer_inplace(const StandardizationModel& model, std::span<double> row);

struct FeatureTable {
  std::vector<std::string> names;
  std::vector<FeatureVector> rows;

  Matrix matrix() const;
};

/// CSV with header `doc_id,label,<names...>`; values in shortest round-trip form.
void write_feature_csv(std::ostream& out, const FeatureTable& table);
FeatureTable read_feature_csv(std::istream& in);

/// Shortest decimal that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace prosodex
