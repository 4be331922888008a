#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace prosodex::utf8 {

inline constexpr char32_t kInvalid = 0xFFFFFFFF;

bool is_valid(std::string_view text);

/// Decode one code point starting at `pos`; advances `pos`. Returns
/// kInvalid (and advances one byte) on a malformed sequence.
char32_t decode(std::string_view text, std::size_t& pos);

void append(std::string& out, char32_t cp);

std::size_t length(std::string_view text);

}  // namespace prosodex::utf8
