#include <algorithm>
#include <cmath>
#include <numeric>

#include "prosodex/error.hpp"
#include "prosodex/learning.hpp"

namespace prosodex {
namespace {

double entropy(std::span<const double> counts, double n) {
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) h -= (c / n) * std::log(c / n);
  }
  return h;
}

}  // namespace

std::vector<int> equal_frequency_bins(std::span<const double> feature, int bins) {
  if (bins < 2) throw ConfigError("nmi needs at least 2 bins, got " + std::to_string(bins));
  const std::size_t n = feature.size();
  std::vector<double> sorted(feature.begin(), feature.end());
  std::sort(sorted.begin(), sorted.end());

  // Cut k sits after the first floor(k·n/bins) sorted values; tied values
  // always share a bin.
  std::vector<double> cuts;
  for (int k = 1; k < bins; ++k) {
    const std::size_t pos = static_cast<std::size_t>(k) * n / static_cast<std::size_t>(bins);
    if (pos == 0) continue;
    const double cut = sorted[pos - 1];
    if (cuts.empty() || cut > cuts.back()) cuts.push_back(cut);
  }
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<int>(std::lower_bound(cuts.begin(), cuts.end(), feature[i]) - cuts.begin());
  }
  return out;
}

double nmi(std::span<const double> feature, std::span<const int> labels, int bins) {
  if (feature.size() != labels.size()) throw DomainError("nmi: feature and label lengths differ");
  if (feature.size() < 2) throw DomainError("nmi needs at least 2 samples");
  const auto binned = equal_frequency_bins(feature, bins);
  const int nb = *std::max_element(binned.begin(), binned.end()) + 1;
  const int nc = *std::max_element(labels.begin(), labels.end()) + 1;
  if (*std::min_element(labels.begin(), labels.end()) < 0) throw DomainError("nmi: negative label");

  std::vector<double> joint(static_cast<std::size_t>(nb * nc), 0.0);
  std::vector<double> pb(static_cast<std::size_t>(nb), 0.0);
  std::vector<double> pc(static_cast<std::size_t>(nc), 0.0);
  for (std::size_t i = 0; i < binned.size(); ++i) {
    joint[static_cast<std::size_t>(binned[i] * nc + labels[i])] += 1.0;
    pb[static_cast<std::size_t>(binned[i])] += 1.0;
    pc[static_cast<std::size_t>(labels[i])] += 1.0;
  }
  const double n = static_cast<double>(binned.size());
  const double hb = entropy(pb, n);
  const double hc = entropy(pc, n);
  if (hb <= 0.0 || hc <= 0.0) return 0.0;

  double mi = 0.0;
  for (int b = 0; b < nb; ++b) {
    for (int c = 0; c < nc; ++c) {
      const double j = joint[static_cast<std::size_t>(b * nc + c)];
      if (j > 0.0) mi += (j / n) * std::log(j * n / (pb[static_cast<std::size_t>(b)] * pc[static_cast<std::size_t>(c)]));
    }
  }
  return std::clamp(mi / std::sqrt(hb * hc), 0.0, 1.0);
}

std::vector<RankedFeature> rank_features(const Matrix& features, std::span<const int> labels, int bins) {
  std::vector<RankedFeature> ranking(features.cols());
  for (std::size_t c = 0; c < features.cols(); ++c) {
    const auto col = features.column(c);
    ranking[c] = {c, nmi(col, labels, bins)};
  }
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const RankedFeature& a, const RankedFeature& b) { return a.score > b.score; });
  return ranking;
}

}  // namespace prosodex
