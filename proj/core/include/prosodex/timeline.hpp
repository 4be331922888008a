#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prosodex/phonetics.hpp"

namespace prosodex {

enum class TokenKind { word, punctuation, line_break, number };

std::string_view to_string(TokenKind kind) noexcept;

struct Token {
  TokenKind kind = TokenKind::word;
  std::string surface;
  std::size_t index = 0;
  /// Offset of the first code point of the token in the source text.
  std::size_t char_offset = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Splits text into word, number, punctuation and line-break tokens.
///
/// Line breaks ('\n') are tokens. Maximal runs of letters and apostrophes are
/// words, maximal digit runs are numbers, "--" is a single token and every
/// other punctuation character is a token of its own. Other whitespace only
/// separates. Non-ASCII code points count as letters unless they are in the
/// Unicode punctuation or space blocks; U+2019 counts as an apostrophe.
std::vector<Token> tokenize(std::string_view text);

/// Dictionary lookup key for a word token: ASCII-lowercased, typographic
/// apostrophes folded to '\''.
std::string lookup_key(std::string_view surface);

/// Time units occupied by each token kind.
struct DurationTable {
  std::map<std::string, int, std::less<>> punctuation;
  int line_break = 1;
  int unknown_word = 1;
  int gap = 1;
  /// Punctuation not listed in `punctuation`.
  int other_punctuation = 1;

  /// , 3  . 4  ; 4  : 4  ! 5  ? 5  - 5  -- 5 (plus the typographic dashes).
  static DurationTable standard();

  int of_punctuation(std::string_view symbol) const;

  /// Throws ConfigError if any duration is below one unit.
  void validate() const;
};

struct RhythmPunctSet {
  std::set<std::string, std::less<>> symbols;

  /// . : ; ! ?
  static RhythmPunctSet standard();

  bool contains(std::string_view symbol) const { return symbols.contains(symbol); }
};

struct TokenSpan {
  int start = 0;  ///< first time unit, inclusive
  int end = 0;    ///< last time unit, inclusive
  int phones = 0; ///< phones contributed (0 for non-words and unknown words)
};

struct Timeline {
  std::vector<TokenSpan> spans;  ///< one per token
  /// Word token index -> time unit of its final phone.
  std::map<std::size_t, int> last_phone_time;
  int total_duration = 0;
  int phone_count = 0;
};

/// Lays tokens out left to right: a known word takes one unit per phone, an
/// unknown word or number one unit, punctuation and line breaks their table
/// value, with `durations.gap` units between consecutive tokens.
Timeline build_timeline(std::span<const Token> tokens, const PronDict& dict,
                        const DurationTable& durations);

struct Signal {
  int time = 0;
  int rhyme_class = 0;
  std::size_t token_index = 0;

  friend bool operator==(const Signal&, const Signal&) = default;
};

struct SignalSequence {
  std::vector<Signal> signals;
  int total_duration = 0;

  std::size_t size() const noexcept { return signals.size(); }
  bool empty() const noexcept { return signals.empty(); }
  std::size_t class_count() const;

  friend bool operator==(const SignalSequence&, const SignalSequence&) = default;
};

/// Rhyme signals of a document.
///
/// Anchors are words whose next non-line-break token is rhythm punctuation.
/// Every word sharing an anchor's rhyme key becomes a rhyme word and emits
/// one signal at its last phone. Class ids follow first occurrence.
SignalSequence find_rhyme_signals(std::span<const Token> tokens, const Timeline& timeline,
                                  const PronDict& dict, const RhythmPunctSet& punct);

/// tokenize + build_timeline + find_rhyme_signals.
SignalSequence extract_signals(std::string_view text, const PronDict& dict,
                               const DurationTable& durations, const RhythmPunctSet& punct);

/// JSON: {"tokens": [{index, kind, surface, start, end, phones}], "signals":
/// [{time, class, token_index}], "total_duration": n}.
std::string timeline_dump_json(std::span<const Token> tokens, const Timeline& timeline,
                               const SignalSequence& signals);

}  // namespace prosodex
