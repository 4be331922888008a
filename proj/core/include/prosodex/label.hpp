#pragma once

#include <string_view>

namespace prosodex {

enum class Label { poetry, prose, unlabeled };

std::string_view to_string(Label label) noexcept;

/// Accepts "poetry", "prose", "unlabeled" (case-sensitive). Throws ConfigError.
Label parse_label(std::string_view text);

/// Class index used by the learners: poetry = 0, prose = 1.
int class_index(Label label);
Label class_label(int index);

}  // namespace prosodex
