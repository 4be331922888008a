#include "prosodex/timeline.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <unordered_map>

#include "prosodex/error.hpp"
#include "prosodex/utf8.hpp"

namespace prosodex {
namespace {

constexpr char32_t kRightSingleQuote = 0x2019;

bool is_whitespace(char32_t c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f' || c == 0xA0 ||
         (c >= 0x2000 && c <= 0x200B) || c == 0x202F || c == 0x205F || c == 0x3000 ||
         c == 0xFEFF;
}

bool is_unicode_punct(char32_t c) {
  return (c >= 0xA1 && c <= 0xBF) || c == 0xD7 || c == 0xF7 || (c >= 0x2010 && c <= 0x2027) ||
         (c >= 0x2030 && c <= 0x205E) || (c >= 0x3001 && c <= 0x303F) ||
         c == utf8::kInvalid;
}

bool is_word_char(char32_t c) {
  if (c < 0x80) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '\'';
  }
  if (c == kRightSingleQuote) return true;
  return !is_whitespace(c) && !is_unicode_punct(c);
}

bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

}  // namespace

std::string_view to_string(TokenKind kind) noexcept {
  switch (kind) {
    case TokenKind::word: return "word";
    case TokenKind::punctuation: return "punctuation";
    case TokenKind::line_break: return "line_break";
    case TokenKind::number: return "number";
  }
  return "word";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  std::size_t chars = 0;

  auto emit = [&](TokenKind kind, std::size_t begin, std::size_t end, std::size_t offset) {
    tokens.push_back(Token{kind, std::string(text.substr(begin, end - begin)), tokens.size(), offset});
  };

  while (pos < text.size()) {
    const std::size_t begin = pos;
    const std::size_t offset = chars;
    const char32_t c = utf8::decode(text, pos);
    ++chars;

    if (c == '\n') {
      emit(TokenKind::line_break, begin, pos, offset);
    } else if (is_whitespace(c)) {
      continue;
    } else if (is_word_char(c) || is_digit(c)) {
      const bool digits = is_digit(c);
      std::size_t end = pos;
      while (end < text.size()) {
        std::size_t next = end;
        const char32_t d = utf8::decode(text, next);
        if (digits ? !is_digit(d) : !is_word_char(d)) break;
        end = next;
        ++chars;
      }
      pos = end;
      emit(digits ? TokenKind::number : TokenKind::word, begin, end, offset);
    } else if (c == '-' && pos < text.size() && text[pos] == '-') {
      ++pos;
      ++chars;
      emit(TokenKind::punctuation, begin, pos, offset);
    } else {
      emit(TokenKind::punctuation, begin, pos, offset);
    }
  }
  return tokens;
}

std::string lookup_key(std::string_view surface) {
  std::string folded;
  folded.reserve(surface.size());
  std::size_t pos = 0;
  while (pos < surface.size()) {
    const std::size_t begin = pos;
    const char32_t c = utf8::decode(surface, pos);
    if (c == kRightSingleQuote) {
      folded.push_back('\'');
    } else {
      folded.append(surface.substr(begin, pos - begin));
    }
  }
  return to_lower_ascii(folded);
}

DurationTable DurationTable::standard() {
  DurationTable t;
  t.punctuation = {
      {",", 3}, {".", 4}, {";", 4}, {":", 4}, {"!", 5}, {"?", 5}, {"-", 5}, {"--", 5},
      {"–", 5}, {"—", 5},
  };
  return t;
}

int DurationTable::of_punctuation(std::string_view symbol) const {
  const auto it = punctuation.find(symbol);
  return it == punctuation.end() ? other_punctuation : it->second;
}

void DurationTable::validate() const {
  auto check = [](std::string_view what, int units) {
    if (units < 1) {
      throw ConfigError("duration of " + std::string(what) + " must be at least 1 unit, got " +
                        std::to_string(units));
    }
  };
  for (const auto& [symbol, units] : punctuation) check("'" + symbol + "'", units);
  check("line break", line_break);
  check("unknown word", unknown_word);
  check("gap", gap);
  check("other punctuation", other_punctuation);
}

RhythmPunctSet RhythmPunctSet::standard() { return RhythmPunctSet{{".", ":", ";", "!", "?"}}; }

std::size_t SignalSequence::class_count() const {
  int max_class = -1;
  for (const auto& s : signals) max_class = std::max(max_class, s.rhyme_class);
  return static_cast<std::size_t>(max_class + 1);
}

Timeline build_timeline(std::span<const Token> tokens, const PronDict& dict,
                        const DurationTable& durations) {
  Timeline tl;
  tl.spans.reserve(tokens.size());
  int t = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) t += durations.gap;
    const Token& tok = tokens[i];
    int units = 0;
    int phones = 0;
    switch (tok.kind) {
      case TokenKind::word:
        if (const auto* pron = dict.first(lookup_key(tok.surface))) {
          phones = static_cast<int>(pron->size());
          units = phones;
        } else {
          units = durations.unknown_word;
        }
        break;
      case TokenKind::number:
        units = durations.unknown_word;
        break;
      case TokenKind::punctuation:
        units = durations.of_punctuation(tok.surface);
        break;
      case TokenKind::line_break:
        units = durations.line_break;
        break;
    }
    tl.spans.push_back(TokenSpan{t, t + units - 1, phones});
    if (tok.kind == TokenKind::word) tl.last_phone_time[i] = t + units - 1;
    tl.phone_count += phones;
    t += units;
  }
  tl.total_duration = t;
  return tl;
}

SignalSequence find_rhyme_signals(std::span<const Token> tokens, const Timeline& timeline,
                                  const PronDict& dict, const RhythmPunctSet& punct) {
  std::vector<std::optional<std::string>> keys(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind == TokenKind::word) keys[i] = rhyme_key(dict, lookup_key(tokens[i].surface));
  }

  std::set<std::string, std::less<>> anchor_keys;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!keys[i]) continue;
    std::size_t j = i + 1;
    while (j < tokens.size() && tokens[j].kind == TokenKind::line_break) ++j;
    if (j < tokens.size() && tokens[j].kind == TokenKind::punctuation &&
        punct.contains(tokens[j].surface)) {
      anchor_keys.insert(*keys[i]);
    }
  }

  SignalSequence out;
  out.total_duration = timeline.total_duration;
  std::unordered_map<std::string, int> class_ids;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!keys[i] || !anchor_keys.contains(*keys[i])) continue;
    const auto [it, inserted] = class_ids.emplace(*keys[i], static_cast<int>(class_ids.size()));
    out.signals.push_back(Signal{timeline.last_phone_time.at(i), it->second, i});
  }
  return out;
}

SignalSequence extract_signals(std::string_view text, const PronDict& dict,
                               const DurationTable& durations, const RhythmPunctSet& punct) {
  const auto tokens = tokenize(text);
  const auto timeline = build_timeline(tokens, dict, durations);
  return find_rhyme_signals(tokens, timeline, dict, punct);
}

std::string timeline_dump_json(std::span<const Token> tokens, const Timeline& timeline,
                               const SignalSequence& signals) {
  nlohmann::ordered_json doc;
  auto& toks = doc["tokens"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    toks.push_back({{"index", tokens[i].index},
                    {"kind", to_string(tokens[i].kind)},
                    {"surface", tokens[i].surface},
                    {"start", timeline.spans[i].start},
                    {"end", timeline.spans[i].end},
                    {"phones", timeline.spans[i].phones}});
  }
  auto& sigs = doc["signals"] = nlohmann::ordered_json::array();
  for (const auto& s : signals.signals) {
    sigs.push_back({{"time", s.time}, {"class", s.rhyme_class}, {"token_index", s.token_index}});
  }
  doc["total_duration"] = timeline.total_duration;
  return doc.dump(2) + "\n";
}

}  // namespace prosodex
