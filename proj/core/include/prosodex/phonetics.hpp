#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace prosodex {

/// The 39 ARPAbet phones of the CMU Pronouncing Dictionary.
enum class Arpabet : std::uint8_t {
  AA, AE, AH, AO, AW, AY, B, CH, D, DH, EH, ER, EY, F, G, HH, IH, IY, JH, K,
  L, M, N, NG, OW, OY, P, R, S, SH, T, TH, UH, UW, V, W, Y, Z, ZH,
};

inline constexpr std::size_t kArpabetCount = 39;

std::string_view symbol_name(Arpabet symbol) noexcept;
std::optional<Arpabet> parse_symbol(std::string_view name) noexcept;

/// AA AE AH AO AW AY EH ER EY IH IY OW OY UH UW.
bool is_vowel(Arpabet symbol) noexcept;

struct Phone {
  Arpabet symbol = Arpabet::AA;
  /// 0, 1 or 2 on vowels; -1 on consonants.
  std::int8_t stress = -1;

  bool is_vowel() const noexcept { return prosodex::is_vowel(symbol); }
  std::string to_string() const;

  friend bool operator==(const Phone&, const Phone&) = default;
};

/// Parses "AE1", "T". Vowels must carry a stress digit, consonants must not.
std::optional<Phone> parse_phone(std::string_view text) noexcept;

using Pronunciation = std::vector<Phone>;

std::string to_string(std::span<const Phone> phones);

/// Word -> pronunciation variants, in file order. Immutable after parsing.
class PronDict {
 public:
  using Entries = std::map<std::string, std::vector<Pronunciation>, std::less<>>;

  PronDict() = default;
  PronDict(Entries entries, std::size_t duplicates)
      : entries_(std::move(entries)), duplicates_(duplicates) {}

  /// Case-insensitive lookup; nullptr when absent.
  const std::vector<Pronunciation>* variants(std::string_view word) const;
  /// First variant, or nullptr.
  const Pronunciation* first(std::string_view word) const;

  const Entries& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// Number of entries that were overwritten by a later duplicate line.
  std::size_t duplicate_count() const noexcept { return duplicates_; }

 private:
  Entries entries_;
  std::size_t duplicates_ = 0;
};

/// Reads the CMU dictionary text format:
///
///     ;;; comment
///     CAT  K AE1 T
///     READ  R EH1 D
///     READ(1)  R IY1 D
///
/// Throws ParseError on malformed phones or when no entries were read.
PronDict parse_cmudict(std::istream& in);
PronDict parse_cmudict(std::string_view text);
PronDict load_cmudict(const std::filesystem::path& path);

/// Writes entries back in the same format (uppercase, two-space separator).
std::string format_cmudict(const PronDict& dict);

/// First pronunciation of the lowercased token, if listed.
std::optional<Pronunciation> phones_for(const PronDict& dict, std::string_view token);

/// Suffix beginning at the last vowel with stress 1 or 2; falling back to the
/// last vowel of any stress, then to the whole pronunciation.
struct RhymingPart {
  std::vector<Phone> phones;

  /// Stress-stripped phone names joined by spaces, e.g. "AE T".
  std::string key() const;
};

RhymingPart rhyming_part(std::span<const Phone> pronunciation);

/// Stress-insensitive rhyming-part key of the word's first variant.
std::optional<std::string> rhyme_key(const PronDict& dict, std::string_view word);

/// True iff both words are listed and their rhyme keys are equal.
bool rhymes(const PronDict& dict, std::string_view a, std::string_view b);

std::string to_lower_ascii(std::string_view text);

}  // namespace prosodex
