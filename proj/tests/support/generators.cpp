#include "generators.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace prosodex::testing {

SignalSequence random_signals(Rng& rng, std::size_t count, int classes, int max_step) {
  SignalSequence s;
  std::map<int, int> renumber;
  int time = static_cast<int>(rng.below(5));
  for (std::size_t i = 0; i < count; ++i) {
    const int raw = static_cast<int>(rng.below(static_cast<std::uint64_t>(classes)));
    const auto [it, inserted] = renumber.emplace(raw, static_cast<int>(renumber.size()));
    s.signals.push_back({time, it->second, i});
    time += static_cast<int>(rng.between(1, max_step));
  }
  s.total_duration = time;
  return s;
}

std::string random_text(Rng& rng, const PronDict& dict, std::size_t tokens) {
  static const std::vector<std::string> punct = {",", ".", ";", ":", "!", "?", "-", "--", "(", ")", "\"", "—"};
  static const std::vector<std::string> unknown = {"zzxqy", "blorf", "qwop", "don't"};
  std::vector<std::string> words;
  for (const auto& [w, v] : dict.entries()) words.push_back(w);
  std::string text;
  for (std::size_t i = 0; i < tokens; ++i) {
    const auto roll = rng.below(100);
    if (roll < 60) {
      text += " " + words[rng.below(words.size())];
    } else if (roll < 65) {
      text += " " + unknown[rng.below(unknown.size())];
    } else if (roll < 70) {
      text += " " + std::to_string(rng.below(2000));
    } else if (roll < 80) {
      text += "\n";
    } else {
      text += punct[rng.below(punct.size())];
    }
  }
  return text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const PronDict& fixture_lexicon() {
  static const PronDict dict = load_cmudict(PROSODEX_FIXTURE_LEXICON);
  return dict;
}

}  // namespace prosodex::testing
