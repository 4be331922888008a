#include <benchmark/benchmark.h>

#include "prosodex/features.hpp"
#include "prosodex/learning.hpp"
#include "prosodex/phonetics.hpp"
#include "prosodex/rng.hpp"
#include "prosodex/simgraph.hpp"
#include "prosodex/synth.hpp"
#include "prosodex/timeline.hpp"
#include "prosodex/windowing.hpp"

using namespace prosodex;

namespace {

const PronDict& lexicon() {
  static const PronDict dict = load_cmudict(PROSODEX_FIXTURE_LEXICON);
  return dict;
}

const Corpus& corpus() {
  static const Corpus c = generate_synthetic_corpus(20, 7, lexicon());
  return c;
}

SignalSequence random_signals(std::size_t count, int classes, std::uint64_t seed) {
  Rng rng(seed);
  SignalSequence s;
  int t = 0;
  for (std::size_t i = 0; i < count; ++i) {
    t += static_cast<int>(rng.between(1, 30));
    s.signals.push_back({t, static_cast<int>(rng.below(static_cast<std::uint64_t>(classes))), i});
  }
  s.total_duration = t + 1;
  return s;
}

FeatureTable corpus_features() {
  const auto grid = standard_grid();
  FeatureTable table;
  table.names = feature_column_names(grid);
  for (const auto& doc : corpus().documents) {
    auto row = document_features(
        extract_signals(doc.text, lexicon(), DurationTable::standard(), RhythmPunctSet::standard()), grid);
    row.doc_id = doc.id;
    row.label = doc.label;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace

static void BM_DetectWindows(benchmark::State& state) {
  const auto signals = random_signals(static_cast<std::size_t>(state.range(0)), 4, 1);
  const WindowingParams params{2, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(detect_windows(signals, params));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DetectWindows)->Arg(60)->Arg(500)->Arg(5000);

static void BM_ExtractSignals(benchmark::State& state) {
  const auto& text = corpus().documents.front().text;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        extract_signals(text, lexicon(), DurationTable::standard(), RhythmPunctSet::standard()));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ExtractSignals);

static void BM_DocumentFeatures(benchmark::State& state) {
  const auto signals = extract_signals(corpus().documents.front().text, lexicon(), DurationTable::standard(),
                                       RhythmPunctSet::standard());
  const auto grid = standard_grid();
  for (auto _ : state) benchmark::DoNotOptimize(document_features(signals, grid));
}
BENCHMARK(BM_DocumentFeatures);

static void BM_LoocvLda(benchmark::State& state) {
  const auto data = Dataset::from_table(corpus_features());
  const auto config = ClassifierConfig::defaults(ClassifierKind::lda);
  for (auto _ : state) benchmark::DoNotOptimize(loocv(data, config, 10, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_LoocvLda)->Arg(3)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_LayoutFr(benchmark::State& state) {
  const auto table = corpus_features();
  const auto graph = build_graph(table.rows, {}, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(layout_fr(graph));
}
BENCHMARK(BM_LayoutFr)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
