#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prosodex/corpus.hpp"
#include "prosodex/phonetics.hpp"
#include "prosodex/timeline.hpp"

namespace prosodex {

struct Histogram {
  double lo = 0.0;
  double width = 1.0;
  std::vector<std::size_t> counts;

  /// Number of samples binned.
  std::size_t total() const;
  double edge(std::size_t i) const { return lo + width * static_cast<double>(i); }
  /// Bin holding `value`; values on the last edge go to the last bin.
  std::size_t bin_of(double value) const;
};

/// Freedman-Diaconis bin width (2·IQR·n^{-1/3}) with at least `min_bins`
/// bins. An empty sample yields a histogram without bins.
Histogram freedman_diaconis(std::span<const double> samples, std::size_t min_bins = 5);

/// Linear-interpolated sample quantile (q in [0, 1]); samples need not be sorted.
double quantile(std::span<const double> samples, double q);

struct WeibullFit {
  double shape = 0.0;  ///< k
  double scale = 0.0;  ///< λ
  int iterations = 0;
};

/// Two-parameter Weibull maximum-likelihood fit. The shape solves the
/// profile score equation by damped Newton iteration (relative tolerance
/// 1e-9, at most 200 steps); the scale follows in closed form.
/// Throws DomainError on non-positive samples, FitError on fewer than three
/// samples, zero spread or non-convergence.
WeibullFit fit_weibull(std::span<const double> samples);

struct DocumentStats {
  std::string id;
  Label label = Label::unlabeled;
  double phone_count = 0;
  double char_count = 0;
  double rhythm_punct_count = 0;
  /// Mean character distance between consecutive rhythm punctuation marks.
  std::optional<double> punct_gap;
  double distinct_rhymes = 0;
  /// Signals per rhyme class; absent when there are no rhyme classes.
  std::optional<double> mean_rhyme_repetitions;
};

DocumentStats document_stats(const Document& doc, const PronDict& dict,
                             const RhythmPunctSet& punct);

struct CorpusStats {
  std::vector<DocumentStats> documents;
  /// Metric name -> histogram over every contributing document.
  std::map<std::string, Histogram> histograms;
  /// Metric name -> per-label counts on the same bin edges.
  std::map<std::string, std::map<std::string, std::vector<std::size_t>>> label_counts;
  /// "distinct_rhymes", "mean_rhyme_repetitions" and "<metric>/<label>" keys.
  /// Degenerate samples are absent.
  std::map<std::string, WeibullFit> weibull_fits;
};

inline constexpr std::array<std::string_view, 6> kStatMetrics = {
    "phone_count",      "char_count",      "rhythm_punct_count",
    "punct_gap",        "distinct_rhymes", "mean_rhyme_repetitions",
};

CorpusStats corpus_stats(const Corpus& corpus, const PronDict& dict, const RhythmPunctSet& punct);

/// One row per document, one column per metric (empty cell when absent).
std::string stats_csv(const CorpusStats& stats);
/// Histograms, per-label counts and Weibull fits.
std::string stats_json(const CorpusStats& stats);

}  // namespace prosodex
