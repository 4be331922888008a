#include "prosodex/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "prosodex/error.hpp"
#include "prosodex/rng.hpp"
#include "prosodex/utf8.hpp"

namespace prosodex {

namespace fs = std::filesystem;

std::string_view to_string(Label label) noexcept {
  switch (label) {
    case Label::poetry: return "poetry";
    case Label::prose: return "prose";
    case Label::unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

Label parse_label(std::string_view text) {
  if (text == "poetry") return Label::poetry;
  if (text == "prose") return Label::prose;
  if (text == "unlabeled") return Label::unlabeled;
  throw ConfigError("unknown label '" + std::string(text) + "'");
}

int class_index(Label label) {
  switch (label) {
    case Label::poetry: return 0;
    case Label::prose: return 1;
    case Label::unlabeled: break;
  }
  throw ConfigError("unlabeled document cannot be used for classification");
}

Label class_label(int index) {
  if (index == 0) return Label::poetry;
  if (index == 1) return Label::prose;
  throw ConfigError("class index out of range: " + std::to_string(index));
}

std::size_t Corpus::count(Label label) const {
  return static_cast<std::size_t>(std::count_if(
      documents.begin(), documents.end(), [&](const Document& d) { return d.label == label; }));
}

std::string collapse_line_breaks(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '\n' && !out.empty() && out.back() == '\n') continue;
    out.push_back(c);
  }
  return out;
}

Document load_document(std::string_view raw_text, std::string id, Label label) {
  if (!utf8::is_valid(raw_text)) throw DomainError("document '" + id + "' is not valid UTF-8");
  std::string text = collapse_line_breaks(raw_text);
  const bool blank = std::all_of(text.begin(), text.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  });
  if (blank) throw EmptyDocument("document '" + id + "' is empty");
  return Document{std::move(id), label, std::move(text), std::nullopt};
}

std::string detokenize(std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    if (i > 0) {
      const Token& prev = tokens[i - 1];
      bool space = false;
      switch (tok.kind) {
        case TokenKind::line_break:
          space = prev.kind == TokenKind::line_break;
          break;
        case TokenKind::punctuation:
          space = prev.kind == TokenKind::punctuation && !prev.surface.empty() &&
                  prev.surface.back() == '-' && tok.surface.front() == '-';
          break;
        case TokenKind::word:
        case TokenKind::number:
          space = prev.kind != TokenKind::line_break;
          break;
      }
      if (space) out.push_back(' ');
    }
    out += tok.surface;
  }
  return out;
}

Document shuffle_document(const Document& doc, std::uint64_t seed) {
  auto tokens = tokenize(doc.text);
  std::vector<std::size_t> slots;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::word || t.kind == TokenKind::number) slots.push_back(t.index);
  }
  if (slots.empty()) return doc;

  std::vector<std::string> surfaces;
  std::vector<TokenKind> kinds;
  for (auto s : slots) {
    surfaces.push_back(tokens[s].surface);
    kinds.push_back(tokens[s].kind);
  }
  Rng rng(seed);
  for (std::size_t i = slots.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(surfaces[i - 1], surfaces[j]);
    std::swap(kinds[i - 1], kinds[j]);
  }
  for (std::size_t k = 0; k < slots.size(); ++k) {
    tokens[slots[k]].surface = std::move(surfaces[k]);
    tokens[slots[k]].kind = kinds[k];
  }
  Document out = doc;
  out.text = detokenize(tokens);
  return out;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Corpus load_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ConfigError("corpus directory '" + dir.string() + "' does not exist");
  Corpus corpus;
  const fs::path manifest = dir / "manifest.json";
  if (fs::exists(manifest)) {
    nlohmann::json entries;
    try {
      entries = nlohmann::json::parse(read_file(manifest));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("manifest '" + manifest.string() + "': " + e.what(), 0);
    }
    if (!entries.is_array()) throw ParseError("manifest '" + manifest.string() + "' must be an array", 0);
    for (const auto& e : entries) {
      const auto id = e.at("id").get<std::string>();
      const auto label = parse_label(e.at("label").get<std::string>());
      const auto rel = e.at("path").get<std::string>();
      auto doc = load_document(read_file(dir / rel), id, label);
      doc.source_path = (dir / rel).string();
      corpus.documents.push_back(std::move(doc));
    }
  } else {
    for (Label label : {Label::poetry, Label::prose}) {
      const fs::path sub = dir / std::string(to_string(label));
      if (!fs::is_directory(sub)) continue;
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(sub)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        auto doc = load_document(read_file(f), std::string(to_string(label)) + "/" + f.stem().string(), label);
        doc.source_path = f.string();
        corpus.documents.push_back(std::move(doc));
      }
    }
  }
  std::set<std::string> ids;
  for (const auto& d : corpus.documents) {
    if (!ids.insert(d.id).second) throw ConfigError("duplicate document id '" + d.id + "'");
  }
  if (corpus.empty()) throw ConfigError("corpus directory '" + dir.string() + "' holds no documents");
  return corpus;
}

void write_corpus(const Corpus& corpus, const fs::path& dir) {
  nlohmann::ordered_json manifest = nlohmann::ordered_json::array();
  for (const auto& doc : corpus.documents) {
    const std::string rel = doc.id + ".txt";
    const fs::path path = dir / rel;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << doc.text;
    manifest.push_back({{"id", doc.id}, {"label", to_string(doc.label)}, {"path", rel}});
  }
  fs::create_directories(dir);
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  out << manifest.dump(2) << '\n';
}

}  // namespace prosodex
