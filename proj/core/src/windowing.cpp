#include "prosodex/windowing.hpp"

#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <numeric>

#include "prosodex/error.hpp"

namespace prosodex {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// prev[j]: index of the previous signal of the same class, or kNone.
std::vector<std::size_t> previous_same_class(const SignalSequence& s) {
  std::vector<std::size_t> prev(s.size(), kNone);
  std::vector<std::size_t> last(s.class_count(), kNone);
  for (std::size_t j = 0; j < s.size(); ++j) {
    auto& slot = last[static_cast<std::size_t>(s.signals[j].rhyme_class)];
    prev[j] = slot;
    slot = j;
  }
  return prev;
}

}  // namespace

std::vector<WindowingParams> standard_grid() {
  std::vector<WindowingParams> grid;
  for (int l0 : {2, 5, 10, 15, 20}) {
    for (double delta : {0.01, 0.05, 0.10, 0.15, 0.20}) grid.push_back({l0, delta});
  }
  return grid;
}

double cv(std::span<const double> values) {
  if (values.empty()) throw DomainError("cv of an empty sample");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (!(mean > 0.0)) throw DomainError("cv requires a positive mean");
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / n) / mean;
}

double cv(std::span<const int> values) {
  const std::vector<double> d(values.begin(), values.end());
  return cv(std::span<const double>(d));
}

std::vector<SignalPair> same_type_pairs(const SignalSequence& signals, std::size_t first,
                                        std::size_t last) {
  std::vector<SignalPair> pairs;
  if (signals.empty() || first > last) return pairs;
  last = std::min(last, signals.size() - 1);
  const auto prev = previous_same_class(signals);
  for (std::size_t j = first + 1; j <= last; ++j) {
    if (prev[j] != kNone && prev[j] >= first) {
      pairs.push_back({prev[j], j, signals.signals[j].time - signals.signals[prev[j]].time});
    }
  }
  return pairs;
}

WindowSet detect_windows(const SignalSequence& signals, const WindowingParams& params) {
  WindowSet stored;
  const std::size_t n = signals.size();
  if (n == 0) return stored;
  const auto prev = previous_same_class(signals);
  const auto& sig = signals.signals;
  const std::size_t needed = static_cast<std::size_t>(std::max(params.initial_pairs, 0));

  std::size_t start = 0;
  for (;;) {
    // Initial window: shortest run from `start` holding `needed` pairs.
    std::vector<int> diffs;
    std::size_t end = start;
    while (diffs.size() < needed && end + 1 < n) {
      ++end;
      if (prev[end] != kNone && prev[end] >= start) diffs.push_back(sig[end].time - sig[prev[end]].time);
    }
    if (diffs.size() < needed || diffs.empty()) return stored;

    double current_cv = cv(diffs);
    bool closed = false;
    while (!closed) {
      // Extend until one more pair completes.
      std::size_t next = end;
      int new_dt = 0;
      bool found = false;
      while (next + 1 < n) {
        ++next;
        if (prev[next] != kNone && prev[next] >= start) {
          new_dt = sig[next].time - sig[prev[next]].time;
          found = true;
          break;
        }
      }
      if (!found) return stored;  // open window is discarded

      diffs.push_back(new_dt);
      const double extended_cv = cv(diffs);
      if (std::abs(current_cv - extended_cv) > params.delta) {
        diffs.pop_back();
        stored.push_back(Window{start, end, std::move(diffs), sig[end].time - sig[start].time});
        start = end;
        closed = true;
      } else {
        end = next;
        current_cv = extended_cv;
      }
    }
  }
}

std::string windows_dump_json(const SignalSequence& signals, const WindowSet& windows) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& w : windows) {
    out.push_back({{"start_time", signals.signals[w.start_signal].time},
                   {"end_time", signals.signals[w.end_signal].time},
                   {"l", w.span},
                   {"T_w", w.time_diffs},
                   {"cv", cv(w.time_diffs)}});
  }
  return out.dump(2) + "\n";
}

}  // namespace prosodex
