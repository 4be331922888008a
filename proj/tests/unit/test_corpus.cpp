#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "generators.hpp"
#include "prosodex/corpus.hpp"
#include "prosodex/error.hpp"
#include "prosodex/timeline.hpp"

using namespace prosodex;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("prosodex_unit_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void put(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

std::vector<std::size_t> punct_indices(const std::vector<Token>& tokens) {
  std::vector<std::size_t> out;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::punctuation || t.kind == TokenKind::line_break) out.push_back(t.index);
  }
  return out;
}

std::vector<std::string> sorted_surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(std::string(to_string(t.kind)) + ":" + t.surface);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("line break collapse") {
    CHECK(load_document("a\n\n\nb", "d", Label::poetry).text == "a\nb");
    CHECK(load_document("a\nb", "d", Label::poetry).text == "a\nb");
    CHECK(load_document("x\n\ny\n\n\nz", "d", Label::prose).text == "x\ny\nz");
    CHECK(load_document("a \n \nb", "d", Label::prose).text == "a \n \nb");
  }

  TEST_CASE("load is idempotent") {
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
      const auto text = "w" + prosodex::testing::random_text(rng, prosodex::testing::fixture_lexicon(), 40);
      const auto once = load_document(text, "d", Label::poetry);
      CHECK(load_document(once.text, "d", Label::poetry) == once);
    }
  }

  TEST_CASE("load errors") {
    CHECK_THROWS_AS(load_document("", "d", Label::poetry), EmptyDocument);
    CHECK_THROWS_AS(load_document("\n\n \t", "d", Label::poetry), EmptyDocument);
    CHECK_THROWS_AS(load_document("bad \xFF byte", "d", Label::poetry), DomainError);
  }

  TEST_CASE("labels") {
    CHECK(parse_label("poetry") == Label::poetry);
    CHECK(parse_label("prose") == Label::prose);
    CHECK_THROWS_AS(parse_label("verse"), ConfigError);
    CHECK(class_index(Label::poetry) == 0);
    CHECK(class_label(1) == Label::prose);
  }

  TEST_CASE("detokenize reproduces plain text") {
    CHECK(detokenize(tokenize("a b. c d.")) == "a b. c d.");
    CHECK(detokenize(tokenize("Hi, there!\nNew line; ok")) == "Hi, there!\nNew line; ok");
    const auto odd = detokenize(tokenize("a - -b"));
    CHECK(tokenize(odd).size() == tokenize("a - -b").size());
  }

  TEST_CASE("shuffle keeps punctuation positions and the token multiset") {
    const auto doc = load_document("a b. c d.", "d", Label::prose);
    const auto before = tokenize(doc.text);
    const auto out = shuffle_document(doc, 3);
    const auto after = tokenize(out.text);
    CHECK(punct_indices(after) == std::vector<std::size_t>{2, 5});
    CHECK(sorted_surfaces(after) == sorted_surfaces(before));
  }

  TEST_CASE("shuffle without words is the identity") {
    const auto doc = load_document("...", "d", Label::prose);
    CHECK(shuffle_document(doc, 9).text == "...");
  }

  TEST_CASE("shuffle determinism") {
    const auto doc = load_document("one two three four five six seven eight nine ten.", "d", Label::prose);
    CHECK(shuffle_document(doc, 1) == shuffle_document(doc, 1));
    bool any_differs = false;
    for (std::uint64_t s = 2; s < 10; ++s) any_differs |= shuffle_document(doc, s).text != shuffle_document(doc, 1).text;
    CHECK(any_differs);
  }

  TEST_CASE("repeated shuffles preserve structure") {
    Rng rng(12);
    for (int trial = 0; trial < 40; ++trial) {
      const auto text = "start" + prosodex::testing::random_text(rng, prosodex::testing::fixture_lexicon(), 50);
      const auto doc = load_document(text, "d", Label::poetry);
      const auto t0 = tokenize(doc.text);
      const auto twice = shuffle_document(shuffle_document(doc, rng.next()), rng.next());
      const auto t2 = tokenize(twice.text);
      CHECK(punct_indices(t2) == punct_indices(t0));
      CHECK(sorted_surfaces(t2) == sorted_surfaces(t0));
      CHECK(twice.id == doc.id);
      CHECK(twice.label == doc.label);
    }
  }

  TEST_CASE("directory layout") {
    const auto dir = scratch("layout");
    put(dir / "poetry" / "b.txt", "roses are red.\n\n\nviolets blue.");
    put(dir / "poetry" / "a.txt", "one line.");
    put(dir / "prose" / "x.txt", "Some prose here.");
    put(dir / "prose" / "notes.md", "ignored");
    const auto c = load_corpus(dir);
    REQUIRE(c.size() == 3);
    CHECK(c.documents[0].id == "poetry/a");
    CHECK(c.documents[1].id == "poetry/b");
    CHECK(c.documents[1].text == "roses are red.\nviolets blue.");
    CHECK(c.documents[2].label == Label::prose);
    CHECK(c.count(Label::poetry) == 2);
    fs::remove_all(dir);
  }

  TEST_CASE("write then load round trip through a manifest") {
    const auto dir = scratch("roundtrip");
    Corpus c;
    c.documents.push_back(load_document("a poem.", "poetry/001", Label::poetry));
    c.documents.push_back(load_document("some prose.", "prose/001", Label::prose));
    write_corpus(c, dir);
    CHECK(fs::exists(dir / "manifest.json"));
    auto back = load_corpus(dir);
    for (auto& d : back.documents) d.source_path.reset();
    CHECK(back == c);
    fs::remove_all(dir);
  }

  TEST_CASE("corpus errors") {
    CHECK_THROWS_AS(load_corpus("/nonexistent/corpus"), ConfigError);
    const auto empty = scratch("empty");
    CHECK_THROWS_AS(load_corpus(empty), ConfigError);
    const auto dup = scratch("dup");
    put(dup / "a.txt", "x.");
    put(dup / "manifest.json",
        R"([{"id":"a","label":"poetry","path":"a.txt"},{"id":"a","label":"prose","path":"a.txt"}])");
    CHECK_THROWS_AS(load_corpus(dup), ConfigError);
    fs::remove_all(empty);
    fs::remove_all(dup);
  }
}
