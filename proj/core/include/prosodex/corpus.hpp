#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prosodex/label.hpp"
#include "prosodex/timeline.hpp"

namespace prosodex {

struct Document {
  std::string id;
  Label label = Label::unlabeled;
  /// Preprocessed: never holds two consecutive line breaks.
  std::string text;
  std::optional<std::string> source_path;

  friend bool operator==(const Document&, const Document&) = default;
};

struct Corpus {
  std::vector<Document> documents;

  std::size_t size() const noexcept { return documents.size(); }
  bool empty() const noexcept { return documents.empty(); }
  std::size_t count(Label label) const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

/// Replaces every run of two or more '\n' with a single '\n'.
std::string collapse_line_breaks(std::string_view text);

/// Validates UTF-8 (DomainError), collapses line-break runs and rejects
/// blank results (EmptyDocument).
Document load_document(std::string_view raw_text, std::string id, Label label);

/// Inverse of tokenize for generated text: punctuation attaches to the
/// preceding token, other tokens are separated by one space and line breaks
/// are emitted verbatim. Separators are added where gluing would change the
/// tokenization ("-" "-" or two line breaks in a row).
std::string detokenize(std::span<const Token> tokens);

/// Null-model document: punctuation and line breaks keep their token
/// positions, the remaining tokens are permuted by a seeded Fisher-Yates
/// shuffle.
Document shuffle_document(const Document& doc, std::uint64_t seed);

/// Loads `dir/manifest.json` ([{id, label, path}]) when present, otherwise
/// `dir/poetry/*.txt` and `dir/prose/*.txt` in filename order with ids
/// "<label>/<stem>". Throws ConfigError when the directory is missing.
Corpus load_corpus(const std::filesystem::path& dir);

/// Writes `<dir>/<id>.txt` per document plus manifest.json.
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);

}  // namespace prosodex
