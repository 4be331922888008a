#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "prosodex/error.hpp"
#include "prosodex/windowing.hpp"
#include "window_oracle.hpp"

using namespace prosodex;
using prosodex::testing::detect_windows_bruteforce;
using prosodex::testing::random_signals;

namespace {

SignalSequence seq(std::initializer_list<std::pair<int, int>> class_time) {
  SignalSequence s;
  std::size_t i = 0;
  for (auto [c, t] : class_time) s.signals.push_back({t, c, i++});
  s.total_duration = s.signals.empty() ? 0 : s.signals.back().time + 1;
  return s;
}

SignalSequence one_class(std::initializer_list<int> times) {
  SignalSequence s;
  std::size_t i = 0;
  for (int t : times) s.signals.push_back({t, 0, i++});
  return s;
}

}  // namespace

TEST_SUITE("windowing") {
  TEST_CASE("cv") {
    CHECK(cv(std::vector<double>{4, 4, 4}) == 0.0);
    CHECK(cv(std::vector<double>{2, 4}) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(cv(std::vector<double>{10}) == 0.0);
    CHECK(std::abs(cv(std::vector<int>{10, 10, 80}) - std::sqrt(9800.0 / 9.0) * 3.0 / 100.0) < 1e-12);
    CHECK_THROWS_AS(cv(std::vector<double>{}), DomainError);
    CHECK_THROWS_AS(cv(std::vector<double>{0, 0}), DomainError);
  }

  TEST_CASE("same type pairs") {
    CHECK(same_type_pairs(one_class({0, 10, 20}), 0, 2) == std::vector<SignalPair>{{0, 1, 10}, {1, 2, 10}});
    CHECK(same_type_pairs(seq({{0, 0}, {1, 5}, {0, 12}}), 0, 2) == std::vector<SignalPair>{{0, 2, 12}});
    CHECK(same_type_pairs(one_class({3}), 0, 0).empty());
    // The earlier member must also be inside the range.
    CHECK(same_type_pairs(one_class({0, 10, 20}), 1, 2) == std::vector<SignalPair>{{1, 2, 10}});
  }

  TEST_CASE("regular chain never closes") {
    CHECK(detect_windows(one_class({0, 10, 20, 30}), {2, 0.1}).empty());
  }

  TEST_CASE("jump closes the window") {
    const auto w = detect_windows(one_class({0, 10, 20, 100}), {2, 0.2});
    REQUIRE(w.size() == 1);
    CHECK(w[0].start_signal == 0);
    CHECK(w[0].end_signal == 2);
    CHECK(w[0].span == 20);
    CHECK(w[0].time_diffs == std::vector<int>{10, 10});
  }

  TEST_CASE("too few signals") {
    CHECK(detect_windows(one_class({0, 10}), {2, 0.1}).empty());
    CHECK(detect_windows(SignalSequence{}, {2, 0.1}).empty());
    CHECK(detect_windows_bruteforce(SignalSequence{}, {2, 0.1}).empty());
  }

  TEST_CASE("signals completing no pair are swallowed") {
    // A A A [B] A: the B signal rides along with the next A pair.
    const auto s = seq({{0, 0}, {0, 10}, {0, 20}, {1, 25}, {0, 30}, {0, 200}});
    const auto w = detect_windows(s, {2, 0.2});
    REQUIRE(w.size() == 1);
    CHECK(w[0].end_signal == 4);
    CHECK(w[0].time_diffs == std::vector<int>{10, 10, 10});
    CHECK(w == detect_windows_bruteforce(s, {2, 0.2}));
  }

  TEST_CASE("restart shares the boundary signal") {
    const auto s = one_class({0, 10, 20, 100, 110, 120, 130, 400});
    const auto w = detect_windows(s, {2, 0.2});
    // cv([80,10]) = 0.778 and cv([80,10,10]) = 0.990 differ by more than 0.2.
    REQUIRE(w.size() == 3);
    CHECK(w[0].end_signal == 2);
    CHECK(w[1].start_signal == 2);
    CHECK(w[1].end_signal == 4);
    CHECK(w[1].time_diffs == std::vector<int>{80, 10});
    CHECK(w[2].start_signal == 4);
    CHECK(w[2].time_diffs == std::vector<int>{10, 10});
    CHECK(w == detect_windows_bruteforce(s, {2, 0.2}));
  }

  TEST_CASE("oracle agreement on random sequences") {
    Rng rng(2024);
    const auto grid = standard_grid();
    for (int trial = 0; trial < 200; ++trial) {
      const auto s = random_signals(rng, rng.below(61), static_cast<int>(rng.between(1, 6)));
      for (const auto& p : grid) {
        REQUIRE(detect_windows(s, p) == detect_windows_bruteforce(s, p));
      }
    }
  }

  TEST_CASE("stored windows satisfy the acceptance history") {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
      const auto s = random_signals(rng, 60, static_cast<int>(rng.between(1, 4)), 12);
      const WindowingParams p{2, 0.1};
      for (const auto& w : detect_windows(s, p)) {
        const auto pairs = same_type_pairs(s, w.start_signal, w.end_signal);
        REQUIRE(pairs.size() == w.time_diffs.size());
        REQUIRE(pairs.size() >= 2);
        for (std::size_t k = 2; k < pairs.size(); ++k) {
          std::vector<int> before(w.time_diffs.begin(), w.time_diffs.begin() + static_cast<std::ptrdiff_t>(k));
          std::vector<int> after(w.time_diffs.begin(), w.time_diffs.begin() + static_cast<std::ptrdiff_t>(k) + 1);
          CHECK(std::abs(cv(before) - cv(after)) <= p.delta);
        }
        CHECK(w.start_signal < w.end_signal);
        CHECK(w.span >= 1);
      }
    }
  }

  TEST_CASE("uniform time scaling leaves window ranges unchanged") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      auto s = random_signals(rng, 50, 3);
      auto scaled = s;
      for (auto& sig : scaled.signals) sig.time *= 3;
      for (const auto& p : standard_grid()) {
        const auto a = detect_windows(s, p);
        const auto b = detect_windows(scaled, p);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
          CHECK(a[i].start_signal == b[i].start_signal);
          CHECK(a[i].end_signal == b[i].end_signal);
        }
      }
    }
  }

  TEST_CASE("standard grid") {
    const auto g = standard_grid();
    REQUIRE(g.size() == 25);
    CHECK(g.front() == WindowingParams{2, 0.01});
    CHECK(g[1] == WindowingParams{2, 0.05});
    CHECK(g.back() == WindowingParams{20, 0.20});
  }

  TEST_CASE("window dump") {
    const auto s = one_class({0, 10, 20, 100});
    const auto j = nlohmann::json::parse(windows_dump_json(s, detect_windows(s, {2, 0.2})));
    REQUIRE(j.size() == 1);
    CHECK(j[0]["start_time"] == 0);
    CHECK(j[0]["end_time"] == 20);
    CHECK(j[0]["l"] == 20);
    CHECK(j[0]["cv"] == 0.0);
  }
}
