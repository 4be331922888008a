#include "prosodex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>

#include "prosodex/error.hpp"
#include "prosodex/features.hpp"
#include "prosodex/utf8.hpp"

namespace prosodex {

std::size_t Histogram::total() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

std::size_t Histogram::bin_of(double value) const {
  if (counts.empty()) return 0;
  const double pos = std::floor((value - lo) / width);
  if (pos < 0) return 0;
  return std::min(static_cast<std::size_t>(pos), counts.size() - 1);
}

double quantile(std::span<const double> samples, double q) {
  if (samples.empty()) throw DomainError("quantile of an empty sample");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double h = q * static_cast<double>(s.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(h));
  if (i + 1 >= s.size()) return s.back();
  return s[i] + (h - static_cast<double>(i)) * (s[i + 1] - s[i]);
}

Histogram freedman_diaconis(std::span<const double> samples, std::size_t min_bins) {
  constexpr std::size_t kMaxBins = 1000;
  Histogram h;
  if (samples.empty()) return h;
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  double lo = *mn;
  double range = *mx - *mn;
  if (range <= 0.0) {
    lo -= 0.5;
    range = 1.0;
  }
  std::size_t bins = min_bins;
  const double iqr = quantile(samples, 0.75) - quantile(samples, 0.25);
  if (iqr > 0.0) {
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(samples.size()));
    bins = std::clamp(static_cast<std::size_t>(std::ceil(range / width)), min_bins, kMaxBins);
  }
  h.lo = lo;
  h.width = range / static_cast<double>(bins);
  h.counts.assign(bins, 0);
  for (double v : samples) ++h.counts[h.bin_of(v)];
  return h;
}

WeibullFit fit_weibull(std::span<const double> samples) {
  for (double x : samples) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("Weibull samples must be positive and finite");
  }
  if (samples.size() < 3) throw FitError("Weibull fit needs at least 3 samples");
  const double n = static_cast<double>(samples.size());

  // Work on log-samples centred at zero: y = x / geometric_mean.
  std::vector<double> logs(samples.size());
  std::transform(samples.begin(), samples.end(), logs.begin(), [](double x) { return std::log(x); });
  const double mean_log = std::accumulate(logs.begin(), logs.end(), 0.0) / n;
  double var_log = 0.0;
  for (double& l : logs) {
    l -= mean_log;
    var_log += l * l;
  }
  var_log /= n;
  if (!(var_log > 0.0)) throw FitError("Weibull fit on a zero-variance sample");

  // Profile score g(k) = Σ y^k ln y / Σ y^k - 1/k (Σ ln y = 0); g is increasing.
  auto moments = [&](double k, double& s0, double& s1, double& s2) {
    const double top = *std::max_element(logs.begin(), logs.end());
    s0 = s1 = s2 = 0.0;
    for (double l : logs) {
      const double w = std::exp(k * (l - top));
      s0 += w;
      s1 += w * l;
      s2 += w * l * l;
    }
  };

  double k = 1.2825498301618641 / std::sqrt(var_log);  // π/√6 over the log-sd
  WeibullFit fit;
  for (int it = 1; it <= 200; ++it) {
    double s0, s1, s2;
    moments(k, s0, s1, s2);
    const double m1 = s1 / s0;
    const double g = m1 - 1.0 / k;
    const double dg = s2 / s0 - m1 * m1 + 1.0 / (k * k);
    double next = k - g / dg;
    if (!(next > 0.5 * k)) next = 0.5 * k;
    if (next > 2.0 * k) next = 2.0 * k;
    const bool done = std::abs(next - k) <= 1e-9 * k;
    k = next;
    if (done) {
      fit.iterations = it;
      double s0k, s1k, s2k;
      moments(k, s0k, s1k, s2k);
      const double top = *std::max_element(logs.begin(), logs.end());
      // λ = gm · (mean y^k)^{1/k}, with y^k = exp(k·top)·w.
      fit.shape = k;
      fit.scale = std::exp(mean_log + top + std::log(s0k / n) / k);
      return fit;
    }
  }
  throw FitError("Weibull shape did not converge in 200 iterations");
}

DocumentStats document_stats(const Document& doc, const PronDict& dict,
                             const RhythmPunctSet& punct) {
  DocumentStats s;
  s.id = doc.id;
  s.label = doc.label;
  const auto tokens = tokenize(doc.text);
  const auto timeline = build_timeline(tokens, dict, DurationTable::standard());
  const auto signals = find_rhyme_signals(tokens, timeline, dict, punct);

  s.phone_count = timeline.phone_count;
  s.char_count = static_cast<double>(utf8::length(doc.text));
  std::vector<std::size_t> offsets;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::punctuation && punct.contains(t.surface)) offsets.push_back(t.char_offset);
  }
  s.rhythm_punct_count = static_cast<double>(offsets.size());
  if (offsets.size() >= 2) {
    s.punct_gap = static_cast<double>(offsets.back() - offsets.front()) /
                  static_cast<double>(offsets.size() - 1);
  }
  const auto classes = signals.class_count();
  s.distinct_rhymes = static_cast<double>(classes);
  if (classes > 0) s.mean_rhyme_repetitions = static_cast<double>(signals.size()) / static_cast<double>(classes);
  return s;
}

namespace {

std::optional<double> metric_value(const DocumentStats& s, std::string_view metric) {
  if (metric == "phone_count") return s.phone_count;
  if (metric == "char_count") return s.char_count;
  if (metric == "rhythm_punct_count") return s.rhythm_punct_count;
  if (metric == "punct_gap") return s.punct_gap;
  if (metric == "distinct_rhymes") return s.distinct_rhymes;
  if (metric == "mean_rhyme_repetitions") return s.mean_rhyme_repetitions;
  return std::nullopt;
}

void try_fit(CorpusStats& out, const std::string& key, const std::vector<double>& values) {
  std::vector<double> positive;
  std::copy_if(values.begin(), values.end(), std::back_inserter(positive), [](double v) { return v > 0.0; });
  try {
    out.weibull_fits[key] = fit_weibull(positive);
  } catch (const FitError&) {
    // recorded as absent
  }
}

}  // namespace

CorpusStats corpus_stats(const Corpus& corpus, const PronDict& dict, const RhythmPunctSet& punct) {
  if (corpus.empty()) throw DomainError("corpus_stats on an empty corpus");
  CorpusStats out;
  for (const auto& doc : corpus.documents) out.documents.push_back(document_stats(doc, dict, punct));

  for (auto metric : kStatMetrics) {
    const std::string key(metric);
    std::vector<double> values;
    std::map<std::string, std::vector<double>> by_label;
    for (const auto& d : out.documents) {
      if (const auto v = metric_value(d, metric)) {
        values.push_back(*v);
        by_label[std::string(to_string(d.label))].push_back(*v);
      }
    }
    const Histogram h = freedman_diaconis(values);
    for (const auto& [label, vs] : by_label) {
      std::vector<std::size_t> counts(h.counts.size(), 0);
      for (double v : vs) ++counts[h.bin_of(v)];
      out.label_counts[key][label] = std::move(counts);
    }
    out.histograms[key] = h;
    if (metric == "distinct_rhymes" || metric == "mean_rhyme_repetitions") {
      try_fit(out, key, values);
      for (const auto& [label, vs] : by_label) try_fit(out, key + "/" + label, vs);
    }
  }
  return out;
}

std::string stats_csv(const CorpusStats& stats) {
  std::ostringstream out;
  out << "doc_id,label";
  for (auto m : kStatMetrics) out << ',' << m;
  out << '\n';
  for (const auto& d : stats.documents) {
    out << d.id << ',' << to_string(d.label);
    for (auto m : kStatMetrics) {
      out << ',';
      if (const auto v = metric_value(d, m)) out << format_double(*v);
    }
    out << '\n';
  }
  return out.str();
}

std::string stats_json(const CorpusStats& stats) {
  nlohmann::ordered_json doc;
  doc["documents"] = stats.documents.size();
  auto& hists = doc["histograms"] = nlohmann::ordered_json::object();
  for (const auto& [metric, h] : stats.histograms) {
    std::vector<double> edges;
    for (std::size_t i = 0; i <= h.counts.size(); ++i) edges.push_back(h.edge(i));
    hists[metric] = {{"edges", edges}, {"counts", h.counts}};
    if (const auto it = stats.label_counts.find(metric); it != stats.label_counts.end()) {
      hists[metric]["counts_by_label"] = it->second;
    }
  }
  auto& fits = doc["weibull_fits"] = nlohmann::ordered_json::object();
  for (const auto& [key, fit] : stats.weibull_fits) {
    fits[key] = {{"shape", fit.shape}, {"scale", fit.scale}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace prosodex
