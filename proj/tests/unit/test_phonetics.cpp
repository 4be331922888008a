#include <doctest.h>

#include <set>
#include <sstream>

#include "generators.hpp"
#include "prosodex/error.hpp"
#include "prosodex/phonetics.hpp"

using namespace prosodex;
using prosodex::testing::fixture_lexicon;
using prosodex::testing::read_file;

namespace {

Pronunciation pron(std::string_view text) {
  Pronunciation out;
  std::istringstream in{std::string(text)};
  std::string p;
  while (in >> p) out.push_back(*parse_phone(p));
  return out;
}

}  // namespace

TEST_SUITE("phonetics") {
  TEST_CASE("arpabet has 39 phones and 15 vowels") {
    int vowels = 0;
    for (std::size_t i = 0; i < kArpabetCount; ++i) {
      const auto s = static_cast<Arpabet>(i);
      CHECK(parse_symbol(symbol_name(s)) == s);
      vowels += is_vowel(s);
    }
    CHECK(vowels == 15);
    CHECK_FALSE(parse_symbol("AX"));
  }

  TEST_CASE("phone parsing enforces stress on vowels only") {
    CHECK(parse_phone("AE1") == Phone{Arpabet::AE, 1});
    CHECK(parse_phone("T") == Phone{Arpabet::T, -1});
    CHECK_FALSE(parse_phone("AE"));
    CHECK_FALSE(parse_phone("T1"));
    CHECK_FALSE(parse_phone("AE3"));
    CHECK_FALSE(parse_phone("ae1"));
  }

  TEST_CASE("entries from the fixture") {
    const auto& d = fixture_lexicon();
    REQUIRE(d.variants("cat"));
    CHECK(*d.variants("cat") == std::vector<Pronunciation>{pron("K AE1 T")});
    const auto* read = d.variants("read");
    REQUIRE(read);
    REQUIRE(read->size() == 2);
    CHECK((*read)[0] == pron("R EH1 D"));
    CHECK((*read)[1] == pron("R IY1 D"));
    CHECK(d.size() >= 300);
  }

  TEST_CASE("variants are grouped in numeric order") {
    const auto d = parse_cmudict("X(2)  IY1\nX  AA1\nX(10)  EH1\nX(1)  AE1\n");
    const auto* v = d.variants("x");
    REQUIRE(v);
    REQUIRE(v->size() == 4);
    CHECK((*v)[0] == pron("AA1"));
    CHECK((*v)[1] == pron("AE1"));
    CHECK((*v)[2] == pron("IY1"));
    CHECK((*v)[3] == pron("EH1"));
  }

  TEST_CASE("duplicates keep the last line and are counted") {
    const auto d = parse_cmudict("DOG  D AO1 G\nDOG  D AA1 G\n");
    CHECK(*d.first("dog") == pron("D AA1 G"));
    CHECK(d.duplicate_count() == 1);
  }

  TEST_CASE("parse errors carry the line number") {
    try {
      parse_cmudict(";;; header\nCAT  K AE1 T\nDOG  D QQ1 G\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_cmudict(";;; comment\n"), ParseError);
    CHECK_THROWS_AS(parse_cmudict(""), ParseError);
    CHECK_THROWS_AS(parse_cmudict("CAT\n"), ParseError);
    CHECK_THROWS_AS(load_cmudict("/nonexistent/lexicon.dict"), ConfigError);
  }

  TEST_CASE("fixture round-trips through the writer") {
    const auto& d = fixture_lexicon();
    const auto again = parse_cmudict(format_cmudict(d));
    CHECK(again.entries() == d.entries());

    std::set<std::string> original;
    std::istringstream in(read_file(PROSODEX_FIXTURE_LEXICON));
    for (std::string line; std::getline(in, line);) {
      if (line.empty() || line.starts_with(";;;")) continue;
      original.insert(line);
    }
    std::set<std::string> written;
    std::istringstream out(format_cmudict(d));
    for (std::string line; std::getline(out, line);) written.insert(line);
    CHECK(original == written);
  }

  TEST_CASE("phones_for") {
    const auto& d = fixture_lexicon();
    CHECK(phones_for(d, "Cat") == pron("K AE1 T"));
    CHECK_FALSE(phones_for(d, "."));
    CHECK_FALSE(phones_for(d, "zzxqy"));
  }

  TEST_CASE("rhyming part") {
    auto suffix = [](std::string_view p) { return rhyming_part(pron(p)).phones; };
    CHECK(suffix("K AE1 T") == pron("AE1 T"));
    CHECK(suffix("AO1 R AH0 N JH") == pron("AO1 R AH0 N JH"));
    CHECK(suffix("HH M") == pron("HH M"));
    CHECK(suffix("DH AH0") == pron("AH0"));
    CHECK(suffix("Y EH1 S T ER0 D EY2") == pron("EY2"));
    CHECK(rhyming_part(pron("K AE1 T")).key() == "AE T");
  }

  TEST_CASE("rhyming part is always a suffix") {
    for (const auto& [word, variants] : fixture_lexicon().entries()) {
      for (const auto& v : variants) {
        const auto part = rhyming_part(v).phones;
        REQUIRE(part.size() <= v.size());
        CHECK(std::equal(part.begin(), part.end(), v.end() - static_cast<std::ptrdiff_t>(part.size())));
      }
    }
  }

  TEST_CASE("rhymes") {
    const auto& d = fixture_lexicon();
    CHECK(rhymes(d, "cat", "hat"));
    CHECK(rhymes(d, "CAT", "Hat"));
    CHECK_FALSE(rhymes(d, "cat", "dog"));
    CHECK_FALSE(rhymes(d, "cat", "zzxqy"));
    CHECK_FALSE(rhymes(d, "zzxqy", "zzxqy"));
    CHECK(rhymes(d, "cat", "cat"));
  }
}
