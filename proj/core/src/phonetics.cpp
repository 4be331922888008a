#include "prosodex/phonetics.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "prosodex/error.hpp"

namespace prosodex {
namespace {

constexpr std::array<std::string_view, kArpabetCount> kNames = {
    "AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D",  "DH", "EH", "ER", "EY",
    "F",  "G",  "HH", "IH", "IY", "JH", "K",  "L",  "M",  "N",  "NG", "OW", "OY",
    "P",  "R",  "S",  "SH", "T",  "TH", "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH",
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// "READ(1)" -> ("READ", 1); "READ" -> ("READ", 0).
std::pair<std::string_view, int> split_variant(std::string_view word) {
  if (word.size() < 4 || word.back() != ')') return {word, 0};
  const auto open = word.rfind('(');
  if (open == std::string_view::npos || open == 0) return {word, 0};
  const auto digits = word.substr(open + 1, word.size() - open - 2);
  int n = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || n < 1) return {word, 0};
  return {word.substr(0, open), n};
}

}  // namespace

std::string_view symbol_name(Arpabet symbol) noexcept {
  return kNames[static_cast<std::size_t>(symbol)];
}

std::optional<Arpabet> parse_symbol(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Arpabet>(i);
  }
  return std::nullopt;
}

bool is_vowel(Arpabet s) noexcept {
  switch (s) {
    case Arpabet::AA: case Arpabet::AE: case Arpabet::AH: case Arpabet::AO:
    case Arpabet::AW: case Arpabet::AY: case Arpabet::EH: case Arpabet::ER:
    case Arpabet::EY: case Arpabet::IH: case Arpabet::IY: case Arpabet::OW:
    case Arpabet::OY: case Arpabet::UH: case Arpabet::UW:
      return true;
    default:
      return false;
  }
}

std::string Phone::to_string() const {
  std::string out(symbol_name(symbol));
  if (stress >= 0) out.push_back(static_cast<char>('0' + stress));
  return out;
}

std::optional<Phone> parse_phone(std::string_view text) noexcept {
  if (text.empty()) return std::nullopt;
  std::int8_t stress = -1;
  if (const char last = text.back(); last >= '0' && last <= '9') {
    if (last > '2') return std::nullopt;
    stress = static_cast<std::int8_t>(last - '0');
    text.remove_suffix(1);
  }
  const auto symbol = parse_symbol(text);
  if (!symbol) return std::nullopt;
  if (is_vowel(*symbol) != (stress >= 0)) return std::nullopt;
  return Phone{*symbol, stress};
}

std::string to_string(std::span<const Phone> phones) {
  std::string out;
  for (const auto& p : phones) {
    if (!out.empty()) out.push_back(' ');
    out += p.to_string();
  }
  return out;
}

std::string to_lower_ascii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

const std::vector<Pronunciation>* PronDict::variants(std::string_view word) const {
  const auto it = entries_.find(to_lower_ascii(word));
  return it == entries_.end() ? nullptr : &it->second;
}

const Pronunciation* PronDict::first(std::string_view word) const {
  const auto* v = variants(word);
  return v ? &v->front() : nullptr;
}

PronDict parse_cmudict(std::istream& in) {
  std::map<std::string, std::map<int, Pronunciation>, std::less<>> grouped;
  std::size_t duplicates = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (view.starts_with(";;;")) continue;
    const auto fields = split_ws(view);
    if (fields.empty()) continue;
    if (fields.size() < 2) throw ParseError("entry '" + std::string(fields[0]) + "' has no phones", line_no);

    const auto [base, variant] = split_variant(fields[0]);
    Pronunciation pron;
    pron.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto phone = parse_phone(fields[i]);
      if (!phone) throw ParseError("malformed phone '" + std::string(fields[i]) + "'", line_no);
      pron.push_back(*phone);
    }
    auto& slots = grouped[to_lower_ascii(base)];
    if (!slots.emplace(variant, pron).second) {
      slots[variant] = std::move(pron);
      ++duplicates;
    }
  }
  if (grouped.empty()) throw ParseError("pronunciation dictionary is empty", 0);

  PronDict::Entries entries;
  for (auto& [word, slots] : grouped) {
    auto& list = entries[word];
    for (auto& [n, pron] : slots) list.push_back(std::move(pron));
  }
  return PronDict(std::move(entries), duplicates);
}

PronDict parse_cmudict(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_cmudict(in);
}

PronDict load_cmudict(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lexicon '" + path.string() + "'");
  return parse_cmudict(in);
}

std::string format_cmudict(const PronDict& dict) {
  std::string out;
  for (const auto& [word, variants] : dict.entries()) {
    std::string upper = word;
    for (char& c : upper) {
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
    for (std::size_t i = 0; i < variants.size(); ++i) {
      out += upper;
      if (i > 0) out += "(" + std::to_string(i) + ")";
      out += "  ";
      out += to_string(variants[i]);
      out.push_back('\n');
    }
  }
  return out;
}

std::optional<Pronunciation> phones_for(const PronDict& dict, std::string_view token) {
  if (const auto* p = dict.first(token)) return *p;
  return std::nullopt;
}

std::string RhymingPart::key() const {
  std::string out;
  for (const auto& p : phones) {
    if (!out.empty()) out.push_back(' ');
    out += symbol_name(p.symbol);
  }
  return out;
}

RhymingPart rhyming_part(std::span<const Phone> pron) {
  std::size_t start = pron.size();
  for (std::size_t i = pron.size(); i-- > 0;) {
    if (pron[i].is_vowel() && pron[i].stress >= 1) {
      start = i;
      break;
    }
  }
  if (start == pron.size()) {
    for (std::size_t i = pron.size(); i-- > 0;) {
      if (pron[i].is_vowel()) {
        start = i;
        break;
      }
    }
  }
  if (start == pron.size()) start = 0;
  return RhymingPart{{pron.begin() + static_cast<std::ptrdiff_t>(start), pron.end()}};
}

std::optional<std::string> rhyme_key(const PronDict& dict, std::string_view word) {
  const auto* pron = dict.first(word);
  if (!pron) return std::nullopt;
  return rhyming_part(*pron).key();
}

bool rhymes(const PronDict& dict, std::string_view a, std::string_view b) {
  const auto ka = rhyme_key(dict, a);
  if (!ka) return false;
  const auto kb = rhyme_key(dict, b);
  return kb && *ka == *kb;
}

}  // namespace prosodex
