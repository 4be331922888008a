#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "generators.hpp"
#include "prosodex/config.hpp"
#include "prosodex/error.hpp"

using namespace prosodex;

TEST_SUITE("config") {
  TEST_CASE("toml subset") {
    const auto t = parse_toml(R"(
# comment
top = 1
[a]
s = "x # not a comment"   # trailing
f = 2.5
e = 1e-6
b = true
arr = [1, 2,
       3]
"quoted.key" = "q\"uote"
[b]
nested = [["x"], []]
)");
    CHECK(t.at("top").integer == 1);
    CHECK(t.at("a.s").text == "x # not a comment");
    CHECK(t.at("a.f").floating == 2.5);
    CHECK(t.at("a.e").floating == 1e-6);
    CHECK(t.at("a.b").boolean);
    CHECK(t.at("a.arr").items.size() == 3);
    CHECK(t.at("a.quoted.key").text == "q\"uote");
    CHECK(t.at("b.nested").items[0].items[0].text == "x");
  }

  TEST_CASE("toml errors name the line") {
    try {
      parse_toml("a = 1\nb = \n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_toml("a = 1\na = 2\n"), ParseError);
    CHECK_THROWS_AS(parse_toml("a = \"open\n"), ParseError);
    CHECK_THROWS_AS(parse_toml("a = 1 2\n"), ParseError);
  }

  TEST_CASE("defaults match the reference settings") {
    const Config c;
    CHECK(c.grid() == standard_grid());
    CHECK(c.rhythm_punct.symbols == RhythmPunctSet::standard().symbols);
    CHECK(c.durations.punctuation == DurationTable::standard().punctuation);
    CHECK(c.nmi_bins == 10);
    CHECK(c.nf_min == 3);
    CHECK(c.nf_max == 50);
    CHECK(c.tau == 0.5);
    REQUIRE(c.classifiers.size() == 5);
    CHECK(c.classifiers[1].rf_max_depth == 2);
    CHECK(c.classifiers[2].knn_k == 5);
    CHECK(c.classifiers[4].mlp_hidden == 40);
    CHECK(c.classifiers[4].mlp_max_iterations == 10000);
  }

  TEST_CASE("shipped file equals the defaults") {
    const Config file = load_config(PROSODEX_DEFAULT_CONFIG);
    const Config def;
    CHECK(file.grid() == def.grid());
    CHECK(file.rhythm_punct.symbols == def.rhythm_punct.symbols);
    CHECK(file.durations.punctuation == def.durations.punctuation);
    CHECK(file.durations.gap == def.durations.gap);
    CHECK(file.nmi_bins == def.nmi_bins);
    CHECK(file.nf_min == def.nf_min);
    CHECK(file.nf_max == def.nf_max);
    CHECK(file.tau == def.tau);
    CHECK(file.seed == def.seed);
    REQUIRE(file.classifiers.size() == def.classifiers.size());
    for (std::size_t i = 0; i < def.classifiers.size(); ++i) {
      const auto& a = file.classifiers[i];
      const auto& b = def.classifiers[i];
      CHECK(a.kind == b.kind);
      CHECK(a.seed == b.seed);
      CHECK(a.lda_ridge == b.lda_ridge);
      CHECK(a.rf_trees == b.rf_trees);
      CHECK(a.rf_max_depth == b.rf_max_depth);
      CHECK(a.knn_k == b.knn_k);
      CHECK(a.svm_lambda == b.svm_lambda);
      CHECK(a.svm_iterations == b.svm_iterations);
      CHECK(a.mlp_hidden == b.mlp_hidden);
      CHECK(a.mlp_max_iterations == b.mlp_max_iterations);
      CHECK(a.mlp_learning_rate == b.mlp_learning_rate);
      CHECK(a.mlp_tolerance == b.mlp_tolerance);
    }
    CHECK(file.layout.iterations == def.layout.iterations);
    CHECK(std::filesystem::exists(file.lexicon_path));
  }

  TEST_CASE("overrides and validation") {
    Config c;
    apply_config(c, parse_toml("[windowing]\nl0 = [3]\ndelta = [0.3]\n[durations]\n\",\" = 7\n"), "/base");
    CHECK(c.grid() == std::vector<WindowingParams>{{3, 0.3}});
    CHECK(c.durations.of_punctuation(",") == 7);

    apply_config(c, parse_toml("[paths]\nlexicon = \"lex.dict\"\n"), "/base");
    CHECK(c.lexicon_path == std::filesystem::path("/base/lex.dict"));

    Config d;
    CHECK_THROWS_AS(apply_config(d, parse_toml("[learning]\nknn = 3\n"), ""), ConfigError);
    CHECK_THROWS_AS(apply_config(d, parse_toml("[learning]\nknn_k = \"five\"\n"), ""), ConfigError);
    CHECK_THROWS_AS(apply_config(d, parse_toml("[durations]\n\".\" = 0\n"), ""), ConfigError);
    CHECK_THROWS_AS(apply_config(d, parse_toml("[learning]\nnf_min = 9\nnf_max = 3\n"), ""), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/prosodex.toml"), ConfigError);
  }
}
