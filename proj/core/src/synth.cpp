#include "prosodex/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "prosodex/error.hpp"
#include "prosodex/rng.hpp"
#include "prosodex/timeline.hpp"

namespace prosodex {
namespace {

struct WordPools {
  std::vector<std::vector<std::string>> families;  // rhyme classes used for line endings
  std::vector<std::string> fillers;                // words outside the families
  std::vector<std::string> singletons;             // words whose rhyme class has one member
  std::map<std::string, std::string> key_of;
};

WordPools build_pools(const PronDict& lexicon, const SynthParams& p) {
  std::map<std::string, std::vector<std::string>> classes;
  WordPools pools;
  for (const auto& [word, variants] : lexicon.entries()) {
    // Only plain alphabetic words tokenize back to themselves.
    if (!std::all_of(word.begin(), word.end(), [](char c) { return c >= 'a' && c <= 'z'; })) continue;
    const auto key = rhyming_part(variants.front()).key();
    classes[key].push_back(word);
    pools.key_of[word] = key;
  }
  std::size_t words = 0;
  for (const auto& [key, members] : classes) {
    words += members.size();
    if (static_cast<int>(members.size()) >= p.family_min_size) {
      pools.families.push_back(members);
    } else {
      pools.fillers.insert(pools.fillers.end(), members.begin(), members.end());
      if (members.size() == 1) pools.singletons.push_back(members.front());
    }
  }
  if (static_cast<int>(words) < p.min_lexicon_words || static_cast<int>(classes.size()) < p.min_rhyme_classes) {
    throw ConfigError("synthetic corpus needs a lexicon of at least " + std::to_string(p.min_lexicon_words) +
                      " words in " + std::to_string(p.min_rhyme_classes) + " rhyme classes; got " +
                      std::to_string(words) + " words in " + std::to_string(classes.size()));
  }
  if (pools.families.size() < 4 || pools.singletons.size() < 20 || pools.fillers.size() < 20) {
    throw ConfigError("lexicon lacks rhyme families (>= " + std::to_string(p.family_min_size) +
                      " words) or unrhymed words for the generator");
  }
  return pools;
}

template <class T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[rng.below(items.size())];
}

std::string capitalized(std::string w) {
  if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

int phones_of(const PronDict& lexicon, const std::string& word) {
  return static_cast<int>(lexicon.first(word)->size());
}

std::string poetry_text(Rng& rng, const PronDict& lexicon, const WordPools& pools, const SynthParams& p) {
  const int target = static_cast<int>(rng.between(p.poetry_phones_target_min, p.poetry_phones_target_max));
  std::string text;
  int phones = 0;
  std::vector<std::size_t> used;
  int until_punct = static_cast<int>(rng.between(p.poetry_punct_every_min, p.poetry_punct_every_max));

  auto choose_family = [&] {
    if (!used.empty() && rng.chance(p.poetry_refrain_prob)) return pick(rng, used);
    return static_cast<std::size_t>(rng.below(pools.families.size()));
  };

  while (phones < target) {
    const std::string& scheme = pick(rng, p.poetry_schemes);
    std::map<char, std::size_t> slots;
    for (char c : scheme) {
      if (!slots.contains(c)) {
        std::size_t fam = choose_family();
        for (int tries = 0; tries < 8; ++tries) {
          bool clash = false;
          for (const auto& [k, v] : slots) clash |= v == fam;
          if (!clash) break;
          fam = rng.below(pools.families.size());
        }
        slots[c] = fam;
        used.push_back(fam);
      }
    }
    for (char c : scheme) {
      const int words = static_cast<int>(rng.between(p.poetry_line_words_min, p.poetry_line_words_max));
      std::string line;
      for (int i = 0; i < words - 1; ++i) {
        const std::string& w = rng.chance(p.poetry_internal_rhyme_prob)
                                   ? pick(rng, pick(rng, pools.families))
                                   : pick(rng, pools.fillers);
        phones += phones_of(lexicon, w);
        if (!line.empty()) line.push_back(' ');
        line += i == 0 ? capitalized(w) : w;
      }
      const std::string& end = pick(rng, pools.families[slots[c]]);
      phones += phones_of(lexicon, end);
      line += line.empty() ? capitalized(end) : " " + end;

      const bool last = phones >= target;
      if (--until_punct <= 0 || last) {
        line += pick(rng, p.poetry_punct);
        until_punct = static_cast<int>(rng.between(p.poetry_punct_every_min, p.poetry_punct_every_max));
      } else if (rng.chance(p.poetry_comma_prob)) {
        line += ",";
      }
      text += line;
      if (last) return text;
      text.push_back('\n');
    }
  }
  return text;
}

std::string prose_text(Rng& rng, const PronDict& lexicon, const WordPools& pools, const SynthParams& p) {
  const int target = static_cast<int>(rng.between(p.prose_phones_target_min, p.prose_phones_target_max));

  // Sentence endings are distinct unrhymed words; fillers avoid them.
  std::vector<std::string> endings = pools.singletons;
  for (std::size_t i = endings.size(); i > 1; --i) std::swap(endings[i - 1], endings[rng.below(i)]);
  endings.resize(std::min<std::size_t>(endings.size(), 60));
  const std::set<std::string> reserved(endings.begin(), endings.end());
  std::vector<std::string> fillers;
  for (const auto& w : pools.fillers) {
    if (!reserved.contains(w)) fillers.push_back(w);
  }

  std::string text;
  int phones = 0;
  std::size_t next_ending = 0;
  std::vector<std::string> used_endings;
  int left_in_paragraph = static_cast<int>(rng.between(p.prose_paragraph_sentences_min, p.prose_paragraph_sentences_max));
  bool paragraph_start = true;

  while (phones < target) {
    const int words = static_cast<int>(rng.between(p.prose_sentence_words_min, p.prose_sentence_words_max));
    std::string sentence;
    for (int i = 0; i < words - 1; ++i) {
      const std::string& w = pick(rng, fillers);
      phones += phones_of(lexicon, w);
      if (!sentence.empty()) sentence.push_back(' ');
      sentence += i == 0 ? capitalized(w) : w;
      if (i > 1 && i < words - 3 && rng.chance(p.prose_comma_prob)) sentence += ",";
    }
    std::string end;
    if (!used_endings.empty() && rng.chance(p.prose_rhyme_repeat_prob)) {
      end = pick(rng, used_endings);
    } else {
      end = endings[next_ending++ % endings.size()];
      used_endings.push_back(end);
    }
    phones += phones_of(lexicon, end);
    sentence += " " + end + pick(rng, p.prose_punct);

    if (!paragraph_start) text.push_back(' ');
    text += sentence;
    paragraph_start = false;
    if (--left_in_paragraph == 0 && phones < target) {
      text.push_back('\n');
      paragraph_start = true;
      left_in_paragraph = static_cast<int>(rng.between(p.prose_paragraph_sentences_min, p.prose_paragraph_sentences_max));
    }
  }
  return text;
}

int word_phones(const std::string& text, const PronDict& lexicon) {
  int n = 0;
  for (const auto& t : tokenize(text)) {
    if (t.kind != TokenKind::word) continue;
    if (const auto* pron = lexicon.first(lookup_key(t.surface))) n += static_cast<int>(pron->size());
  }
  return n;
}

int repeated_classes(const std::string& text, const PronDict& lexicon) {
  const auto signals = extract_signals(text, lexicon, DurationTable::standard(), RhythmPunctSet::standard());
  std::map<int, int> counts;
  for (const auto& s : signals.signals) ++counts[s.rhyme_class];
  return static_cast<int>(std::count_if(counts.begin(), counts.end(), [](const auto& kv) { return kv.second >= 2; }));
}

}  // namespace

Corpus generate_synthetic_corpus(int n_per_class, std::uint64_t seed, const PronDict& lexicon,
                                 const SynthParams& params) {
  if (n_per_class < 1) throw ConfigError("n_per_class must be positive");
  const WordPools pools = build_pools(lexicon, params);
  Rng rng(seed);
  Corpus corpus;

  auto make = [&](Label label, int i) {
    for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
      const std::string text = label == Label::poetry ? poetry_text(rng, lexicon, pools, params)
                                                      : prose_text(rng, lexicon, pools, params);
      const int phones = word_phones(text, lexicon);
      if (phones < params.phones_min || phones > params.phones_max) continue;
      if (label == Label::poetry && repeated_classes(text, lexicon) < params.poetry_min_repeated_classes) continue;
      char id[32];
      std::snprintf(id, sizeof id, "%s/%03d", label == Label::poetry ? "poetry" : "prose", i);
      corpus.documents.push_back(load_document(text, id, label));
      return;
    }
    throw ConfigError("synthetic generator could not meet its constraints in " +
                      std::to_string(params.max_attempts) + " attempts");
  };
  for (int i = 0; i < n_per_class; ++i) make(Label::poetry, i);
  for (int i = 0; i < n_per_class; ++i) make(Label::prose, i);
  return corpus;
}

}  // namespace prosodex
