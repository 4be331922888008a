#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "prosodex/timeline.hpp"

namespace prosodex {

struct WindowingParams {
  /// Same-class consecutive pairs an initial window must contain (L0).
  int initial_pairs = 2;
  /// Largest tolerated jump in cv between a window and its extension (Δ).
  double delta = 0.1;

  friend bool operator==(const WindowingParams&, const WindowingParams&) = default;
};

/// L0 ∈ {2, 5, 10, 15, 20} × Δ ∈ {0.01, 0.05, 0.10, 0.15, 0.20}, L0-major.
std::vector<WindowingParams> standard_grid();

struct Window {
  std::size_t start_signal = 0;
  std::size_t end_signal = 0;
  /// Time differences of the same-class consecutive pairs inside the window,
  /// ordered by the later signal.
  std::vector<int> time_diffs;
  /// time(end_signal) - time(start_signal).
  int span = 0;

  friend bool operator==(const Window&, const Window&) = default;
};

using WindowSet = std::vector<Window>;

/// Coefficient of variation: population standard deviation over mean.
/// Throws DomainError on empty input or a non-positive mean.
double cv(std::span<const double> values);
double cv(std::span<const int> values);

struct SignalPair {
  std::size_t first = 0;
  std::size_t second = 0;
  int dt = 0;

  friend bool operator==(const SignalPair&, const SignalPair&) = default;
};

/// Consecutive same-class pairs with both members in [first, last],
/// ordered by the later member.
std::vector<SignalPair> same_type_pairs(const SignalSequence& signals, std::size_t first,
                                        std::size_t last);

/// Clusters signals into windows of homogeneous same-class spacing.
///
/// A window opens at the current start signal and grows until it holds
/// `initial_pairs` same-class pairs. It then grows one completed pair at a
/// time (signals that complete no pair are absorbed along the way); when the
/// cv of the pair differences jumps by more than `delta`, the window before
/// the jump is stored and the next one opens at its last signal. A window
/// still open when the signals run out is dropped.
WindowSet detect_windows(const SignalSequence& signals, const WindowingParams& params);

/// JSON list: [{start_time, end_time, l, T_w, cv}].
std::string windows_dump_json(const SignalSequence& signals, const WindowSet& windows);

}  // namespace prosodex
