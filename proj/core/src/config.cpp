#include "prosodex/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "prosodex/error.hpp"

namespace prosodex {
namespace {

class TomlReader {
 public:
  TomlReader(std::string_view text, int line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }

  std::string key() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '"') return quoted();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) break;
      ++pos_;
    }
    if (pos_ == start) fail("expected a key");
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  ConfigValue value() {
    skip_space();
    if (pos_ >= text_.size()) fail("missing value");
    ConfigValue v;
    const char c = text_[pos_];
    if (c == '"') {
      v.kind = ConfigValue::Kind::string;
      v.text = quoted();
    } else if (c == '[') {
      ++pos_;
      v.kind = ConfigValue::Kind::array;
      for (;;) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ']') {
          ++pos_;
          break;
        }
        v.items.push_back(value());
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
        } else if (pos_ >= text_.size() || text_[pos_] != ']') {
          fail("expected ',' or ']' in array");
        }
      }
    } else if (text_.substr(pos_).starts_with("true")) {
      pos_ += 4;
      v.kind = ConfigValue::Kind::boolean;
      v.boolean = true;
    } else if (text_.substr(pos_).starts_with("false")) {
      pos_ += 5;
      v.kind = ConfigValue::Kind::boolean;
    } else {
      number(v);
    }
    return v;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("config: " + what, line_ + line_offset());
  }

 private:
  int line_offset() const {
    int n = 0;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) n += text_[i] == '\n';
    return n;
  }

  std::string quoted() {
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      char c = text_[pos_++];
      if (c == '\n') fail("unterminated string");
      if (c == '\\') {
        if (pos_ >= text_.size()) fail("unterminated escape");
        const char e = text_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(std::string("unknown escape \\") + e);
        }
      }
      out.push_back(c);
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  void number(ConfigValue& v) {
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.' || c == 'e' ||
            c == 'E' || c == '_'))
        break;
      ++pos_;
    }
    std::string token;
    for (char c : text_.substr(start, pos_ - start)) {
      if (c != '_') token.push_back(c);
    }
    if (token.empty()) fail("unrecognized value");
    if (token.front() == '+') token.erase(0, 1);
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (token.find_first_of(".eE") == std::string::npos) {
      v.kind = ConfigValue::Kind::integer;
      auto [p, ec] = std::from_chars(first, last, v.integer);
      if (ec != std::errc() || p != last) fail("bad integer '" + token + "'");
    } else {
      v.kind = ConfigValue::Kind::floating;
      auto [p, ec] = std::from_chars(first, last, v.floating);
      if (ec != std::errc() || p != last) fail("bad number '" + token + "'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
};

std::string_view kind_name(ConfigValue::Kind k) {
  switch (k) {
    case ConfigValue::Kind::string: return "string";
    case ConfigValue::Kind::integer: return "integer";
    case ConfigValue::Kind::floating: return "number";
    case ConfigValue::Kind::boolean: return "boolean";
    case ConfigValue::Kind::array: return "array";
  }
  return "value";
}

[[noreturn]] void type_error(const std::string& key, std::string_view want, const ConfigValue& got) {
  throw ConfigError("config key '" + key + "' must be " + std::string(want) + ", got " +
                    std::string(kind_name(got.kind)));
}

std::int64_t as_int(const std::string& key, const ConfigValue& v) {
  if (v.kind != ConfigValue::Kind::integer) type_error(key, "an integer", v);
  return v.integer;
}

int as_int32(const std::string& key, const ConfigValue& v) {
  const auto i = as_int(key, v);
  if (i < INT32_MIN || i > INT32_MAX) throw ConfigError("config key '" + key + "' out of range");
  return static_cast<int>(i);
}

std::uint64_t as_seed(const std::string& key, const ConfigValue& v) {
  const auto i = as_int(key, v);
  if (i < 0) throw ConfigError("config key '" + key + "' must be non-negative");
  return static_cast<std::uint64_t>(i);
}

double as_double(const std::string& key, const ConfigValue& v) {
  if (v.kind == ConfigValue::Kind::integer) return static_cast<double>(v.integer);
  if (v.kind != ConfigValue::Kind::floating) type_error(key, "a number", v);
  return v.floating;
}

bool as_bool(const std::string& key, const ConfigValue& v) {
  if (v.kind != ConfigValue::Kind::boolean) type_error(key, "a boolean", v);
  return v.boolean;
}

const std::string& as_string(const std::string& key, const ConfigValue& v) {
  if (v.kind != ConfigValue::Kind::string) type_error(key, "a string", v);
  return v.text;
}

const std::vector<ConfigValue>& as_array(const std::string& key, const ConfigValue& v) {
  if (v.kind != ConfigValue::Kind::array) type_error(key, "an array", v);
  return v.items;
}

std::vector<std::string> as_strings(const std::string& key, const ConfigValue& v) {
  std::vector<std::string> out;
  for (const auto& item : as_array(key, v)) out.push_back(as_string(key, item));
  return out;
}

std::filesystem::path as_path(const std::string& key, const ConfigValue& v, const std::filesystem::path& base) {
  std::filesystem::path p = as_string(key, v);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

double probability(const std::string& key, const ConfigValue& v) {
  const double p = as_double(key, v);
  if (p < 0.0 || p > 1.0) throw ConfigError("config key '" + key + "' must lie in [0, 1]");
  return p;
}

}  // namespace

std::map<std::string, ConfigValue> parse_toml(std::string_view text) {
  std::map<std::string, ConfigValue> out;
  std::string section;
  int line_no = 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    // A statement runs to the end of line, or further while brackets are open.
    std::size_t end = pos;
    int depth = 0;
    bool in_string = false;
    bool in_comment = false;
    for (; end < text.size(); ++end) {
      const char c = text[end];
      if (in_comment) {
        if (c == '\n') in_comment = false; else continue;
      }
      if (in_string) {
        if (c == '\\') ++end;
        else if (c == '"') in_string = false;
        continue;
      }
      if (c == '"') in_string = true;
      else if (c == '#') in_comment = true;
      else if (c == '[') ++depth;
      else if (c == ']') --depth;
      if (c == '\n' && depth <= 0 && !in_comment) break;
    }
    const std::string_view stmt = text.substr(pos, end - pos);
    TomlReader reader(stmt, line_no);
    for (char c : stmt) line_no += c == '\n';
    pos = end < text.size() ? end + 1 : end;
    ++line_no;
    if (reader.done()) continue;

    std::size_t first = stmt.find_first_not_of(" \t\r");
    if (stmt[first] == '[') {
      TomlReader header(stmt.substr(first + 1), line_no - 1);
      section = header.key();
      header.expect(']');
      if (!header.done()) header.fail("trailing characters after section header");
      continue;
    }
    const std::string key = reader.key();
    reader.expect('=');
    ConfigValue v = reader.value();
    if (!reader.done()) reader.fail("trailing characters after value");
    const std::string full = section.empty() ? key : section + "." + key;
    if (out.contains(full)) reader.fail("duplicate key '" + full + "'");
    out.emplace(full, std::move(v));
  }
  return out;
}

Config::Config() {
  for (auto kind : kAllClassifiers) classifiers.push_back(ClassifierConfig::defaults(kind));
}

std::vector<WindowingParams> Config::grid() const {
  std::vector<WindowingParams> out;
  for (int l0 : grid_l0) {
    for (double d : grid_delta) out.push_back({l0, d});
  }
  return out;
}

void apply_config(Config& c, const std::map<std::string, ConfigValue>& table, const std::filesystem::path& base) {
  using Setter = std::function<void(const std::string&, const ConfigValue&)>;
  auto each_classifier = [&c](auto&& fn) {
    for (auto& cc : c.classifiers) fn(cc);
  };
  auto& s = c.synth;
  const std::map<std::string, Setter> setters = {
      {"paths.lexicon", [&](auto& k, auto& v) { c.lexicon_path = as_path(k, v, base); }},
      {"paths.corpus_dir", [&](auto& k, auto& v) { c.corpus_dir = as_path(k, v, base); }},
      {"run.seed", [&](auto& k, auto& v) { c.seed = as_seed(k, v); }},
      {"run.jobs", [&](auto& k, auto& v) { c.jobs = as_int32(k, v); }},
      {"timeline.rhythm_punct",
       [&](auto& k, auto& v) {
         c.rhythm_punct.symbols.clear();
         for (auto& sym : as_strings(k, v)) c.rhythm_punct.symbols.insert(sym);
       }},
      {"windowing.l0",
       [&](auto& k, auto& v) {
         c.grid_l0.clear();
         for (auto& item : as_array(k, v)) c.grid_l0.push_back(as_int32(k, item));
       }},
      {"windowing.delta",
       [&](auto& k, auto& v) {
         c.grid_delta.clear();
         for (auto& item : as_array(k, v)) c.grid_delta.push_back(as_double(k, item));
       }},
      {"learning.nmi_bins", [&](auto& k, auto& v) { c.nmi_bins = as_int32(k, v); }},
      {"learning.nf_min", [&](auto& k, auto& v) { c.nf_min = as_int32(k, v); }},
      {"learning.nf_max", [&](auto& k, auto& v) { c.nf_max = as_int32(k, v); }},
      {"learning.classifiers",
       [&](auto& k, auto& v) {
         std::vector<ClassifierConfig> keep;
         for (auto& name : as_strings(k, v)) {
           const auto kind = parse_classifier(name);
           auto cc = c.classifiers.front();
           cc.kind = kind;
           keep.push_back(cc);
         }
         c.classifiers = std::move(keep);
       }},
      {"learning.seed", [&](auto& k, auto& v) { each_classifier([&](auto& cc) { cc.seed = as_seed(k, v); }); }},
      {"learning.lda_ridge", [&](auto& k, auto& v) { each_classifier([&](auto& cc) { cc.lda_ridge = as_double(k, v); }); }},
      {"learning.rf_trees", [&](auto& k, auto& v) { each_classifier([&](auto& cc) { cc.rf_trees = as_int32(k, v); }); }},
      {"learning.rf_max_depth", [&](auto& k, auto& v) { each_classifier([&](auto& cc) { cc.rf_max_depth = as_int32(k, v); }); }},
      {"learning.knn_k", [&](auto& k, auto& v) { each_classifier([&](auto& cc) { cc.knn_k = as_int32(k, v); }); }},
      {"learning.svm_lambda", [&](auto& k, auto& v) { each_classifier([&](auto& cc) { cc.svm_lambda = as_double(k, v); }); }},
      {"learning.svm_iterations", [&](auto& k, auto& v) { each_classifier([&](auto& cc) { cc.svm_iterations = static_cast<long>(as_int(k, v)); }); }},
      {"learning.mlp_hidden", [&](auto& k, auto& v) { each_classifier([&](auto& cc) { cc.mlp_hidden = as_int32(k, v); }); }},
      {"learning.mlp_max_iterations", [&](auto& k, auto& v) { each_classifier([&](auto& cc) { cc.mlp_max_iterations = as_int32(k, v); }); }},
      {"learning.mlp_learning_rate", [&](auto& k, auto& v) { each_classifier([&](auto& cc) { cc.mlp_learning_rate = as_double(k, v); }); }},
      {"learning.mlp_tolerance", [&](auto& k, auto& v) { each_classifier([&](auto& cc) { cc.mlp_tolerance = as_double(k, v); }); }},
      {"graph.tau", [&](auto& k, auto& v) { c.tau = as_double(k, v); }},
      {"graph.top_k", [&](auto& k, auto& v) { c.top_k = v.kind == ConfigValue::Kind::integer ? std::to_string(v.integer) : as_string(k, v); }},
      {"graph.iterations", [&](auto& k, auto& v) { c.layout.iterations = as_int32(k, v); }},
      {"graph.width", [&](auto& k, auto& v) { c.layout.width = as_double(k, v); }},
      {"graph.height", [&](auto& k, auto& v) { c.layout.height = as_double(k, v); }},
      {"graph.weighted", [&](auto& k, auto& v) { c.layout.weighted = as_bool(k, v); }},
      {"synth.per_class", [&](auto& k, auto& v) { c.synth_per_class = as_int32(k, v); }},
      {"synth.seed", [&](auto& k, auto& v) { c.synth_seed = as_seed(k, v); }},
      {"synth.phones_min", [&](auto& k, auto& v) { s.phones_min = as_int32(k, v); }},
      {"synth.phones_max", [&](auto& k, auto& v) { s.phones_max = as_int32(k, v); }},
      {"synth.min_lexicon_words", [&](auto& k, auto& v) { s.min_lexicon_words = as_int32(k, v); }},
      {"synth.min_rhyme_classes", [&](auto& k, auto& v) { s.min_rhyme_classes = as_int32(k, v); }},
      {"synth.family_min_size", [&](auto& k, auto& v) { s.family_min_size = as_int32(k, v); }},
      {"synth.max_attempts", [&](auto& k, auto& v) { s.max_attempts = as_int32(k, v); }},
      {"synth.poetry_phones_target_min", [&](auto& k, auto& v) { s.poetry_phones_target_min = as_int32(k, v); }},
      {"synth.poetry_phones_target_max", [&](auto& k, auto& v) { s.poetry_phones_target_max = as_int32(k, v); }},
      {"synth.poetry_line_words_min", [&](auto& k, auto& v) { s.poetry_line_words_min = as_int32(k, v); }},
      {"synth.poetry_line_words_max", [&](auto& k, auto& v) { s.poetry_line_words_max = as_int32(k, v); }},
      {"synth.poetry_punct_every_min", [&](auto& k, auto& v) { s.poetry_punct_every_min = as_int32(k, v); }},
      {"synth.poetry_punct_every_max", [&](auto& k, auto& v) { s.poetry_punct_every_max = as_int32(k, v); }},
      {"synth.poetry_comma_prob", [&](auto& k, auto& v) { s.poetry_comma_prob = probability(k, v); }},
      {"synth.poetry_refrain_prob", [&](auto& k, auto& v) { s.poetry_refrain_prob = probability(k, v); }},
      {"synth.poetry_internal_rhyme_prob", [&](auto& k, auto& v) { s.poetry_internal_rhyme_prob = probability(k, v); }},
      {"synth.poetry_schemes", [&](auto& k, auto& v) { s.poetry_schemes = as_strings(k, v); }},
      {"synth.poetry_punct", [&](auto& k, auto& v) { s.poetry_punct = as_strings(k, v); }},
      {"synth.poetry_min_repeated_classes", [&](auto& k, auto& v) { s.poetry_min_repeated_classes = as_int32(k, v); }},
      {"synth.prose_phones_target_min", [&](auto& k, auto& v) { s.prose_phones_target_min = as_int32(k, v); }},
      {"synth.prose_phones_target_max", [&](auto& k, auto& v) { s.prose_phones_target_max = as_int32(k, v); }},
      {"synth.prose_sentence_words_min", [&](auto& k, auto& v) { s.prose_sentence_words_min = as_int32(k, v); }},
      {"synth.prose_sentence_words_max", [&](auto& k, auto& v) { s.prose_sentence_words_max = as_int32(k, v); }},
      {"synth.prose_paragraph_sentences_min", [&](auto& k, auto& v) { s.prose_paragraph_sentences_min = as_int32(k, v); }},
      {"synth.prose_paragraph_sentences_max", [&](auto& k, auto& v) { s.prose_paragraph_sentences_max = as_int32(k, v); }},
      {"synth.prose_comma_prob", [&](auto& k, auto& v) { s.prose_comma_prob = probability(k, v); }},
      {"synth.prose_rhyme_repeat_prob", [&](auto& k, auto& v) { s.prose_rhyme_repeat_prob = probability(k, v); }},
      {"synth.prose_punct", [&](auto& k, auto& v) { s.prose_punct = as_strings(k, v); }},
  };

  for (const auto& [key, value] : table) {
    if (key.starts_with("durations.")) {
      const std::string name = key.substr(10);
      const int units = as_int32(key, value);
      if (name == "line_break") c.durations.line_break = units;
      else if (name == "unknown_word") c.durations.unknown_word = units;
      else if (name == "gap") c.durations.gap = units;
      else if (name == "other_punctuation") c.durations.other_punctuation = units;
      else c.durations.punctuation[name] = units;
      continue;
    }
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(key, value);
  }

  c.durations.validate();
  if (c.grid_l0.empty() || c.grid_delta.empty()) throw ConfigError("windowing grid must not be empty");
  for (int l0 : c.grid_l0) {
    if (l0 < 1) throw ConfigError("windowing.l0 entries must be positive");
  }
  for (double d : c.grid_delta) {
    if (!(d >= 0.0)) throw ConfigError("windowing.delta entries must be non-negative");
  }
  if (c.nmi_bins < 2) throw ConfigError("learning.nmi_bins must be at least 2");
  if (c.nf_min < 1 || c.nf_max < c.nf_min) throw ConfigError("learning.nf_min..nf_max is not a valid range");
  if (c.classifiers.empty()) throw ConfigError("learning.classifiers must not be empty");
  if (c.jobs < 1) throw ConfigError("run.jobs must be positive");
  if (c.tau < -1.0 || c.tau > 1.0) throw ConfigError("graph.tau must lie in [-1, 1]");
  if (c.synth_per_class < 1) throw ConfigError("synth.per_class must be positive");
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  Config config;
  try {
    apply_config(config, parse_toml(buf.str()), path.parent_path());
  } catch (const ParseError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return config;
}

}  // namespace prosodex
