#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prosodex/corpus.hpp"
#include "prosodex/phonetics.hpp"

namespace prosodex {

/// Generator knobs; the shipped values live in config/prosodex.toml [synth].
struct SynthParams {
  int phones_min = 800;  ///< accepted document size, word phones
  int phones_max = 1200;
  int min_lexicon_words = 200;
  int min_rhyme_classes = 20;
  /// Rhyme classes with at least this many words supply line endings.
  int family_min_size = 4;
  int max_attempts = 100;

  int poetry_phones_target_min = 850;
  int poetry_phones_target_max = 1100;
  int poetry_line_words_min = 5;
  int poetry_line_words_max = 8;
  int poetry_punct_every_min = 2;  ///< lines between rhythm punctuation
  int poetry_punct_every_max = 4;
  double poetry_comma_prob = 0.4;
  double poetry_refrain_prob = 0.15;
  double poetry_internal_rhyme_prob = 0.04;
  std::vector<std::string> poetry_schemes = {"AABB", "ABAB"};
  std::vector<std::string> poetry_punct = {".", ".", ".", ";", "!", "?"};
  int poetry_min_repeated_classes = 5;

  int prose_phones_target_min = 850;
  int prose_phones_target_max = 1000;
  int prose_sentence_words_min = 12;
  int prose_sentence_words_max = 26;
  int prose_paragraph_sentences_min = 3;
  int prose_paragraph_sentences_max = 6;
  double prose_comma_prob = 0.06;
  double prose_rhyme_repeat_prob = 0.05;
  std::vector<std::string> prose_punct = {".", ".", ".", ".", ".", ".", "?", ";", ":", "!"};
};

/// n_per_class poetry-like documents (short lines whose endings follow
/// AABB/ABAB schemes, rhythm punctuation every few lines) followed by
/// n_per_class prose-like documents (long sentences ending on words with no
/// rhyme partner in the lexicon, line breaks only between paragraphs).
/// Deterministic in `seed`. Throws ConfigError when the lexicon is too small.
Corpus generate_synthetic_corpus(int n_per_class, std::uint64_t seed, const PronDict& lexicon,
                                 const SynthParams& params = {});

}  // namespace prosodex
