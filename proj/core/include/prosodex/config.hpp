#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "prosodex/learning.hpp"
#include "prosodex/simgraph.hpp"
#include "prosodex/synth.hpp"
#include "prosodex/timeline.hpp"
#include "prosodex/windowing.hpp"

namespace prosodex {

/// A value from the flat TOML subset: strings, integers, floats, booleans
/// and (possibly nested) arrays of those.
struct ConfigValue {
  enum class Kind { string, integer, floating, boolean, array };
  Kind kind = Kind::string;
  std::string text;
  std::int64_t integer = 0;
  double floating = 0.0;
  bool boolean = false;
  std::vector<ConfigValue> items;
};

/// Keys are "section.key" ("key" for the top level), in file order of
/// appearance irrelevant. Throws ParseError with the offending line.
std::map<std::string, ConfigValue> parse_toml(std::string_view text);

struct Config {
  std::filesystem::path lexicon_path;
  std::filesystem::path corpus_dir;

  std::vector<int> grid_l0 = {2, 5, 10, 15, 20};
  std::vector<double> grid_delta = {0.01, 0.05, 0.10, 0.15, 0.20};
  RhythmPunctSet rhythm_punct = RhythmPunctSet::standard();
  DurationTable durations = DurationTable::standard();

  int nmi_bins = 10;
  std::vector<ClassifierConfig> classifiers;
  int nf_min = 3;
  int nf_max = 50;

  double tau = 0.5;
  std::string top_k = "all";
  LayoutParams layout;

  std::uint64_t seed = 0;
  int jobs = 1;

  int synth_per_class = 40;
  std::uint64_t synth_seed = 7;
  SynthParams synth;

  Config();

  /// L0-major cross product of grid_l0 and grid_delta.
  std::vector<WindowingParams> grid() const;
};

/// Overlays the keys of a parsed file onto `config`. Relative paths resolve
/// against `base_dir`. Unknown keys and ill-typed values throw ConfigError.
void apply_config(Config& config, const std::map<std::string, ConfigValue>& table,
                  const std::filesystem::path& base_dir);

/// Defaults overlaid with the file at `path`.
Config load_config(const std::filesystem::path& path);

}  // namespace prosodex
