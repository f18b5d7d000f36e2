#pragma once

#include <cstdint>
#include <string>
#include <string_view>

// Minimal UTF-8 helpers shared by the tokenizer, the lexicon and the n-gram
// scanner. Letter classification and lowercase mapping for non-ASCII code
// points come from the C library's C.UTF-8 tables.
namespace affectlens::unicode {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point starting at text[pos] and advances pos. Invalid
// sequences yield kReplacement and advance by one byte.
char32_t decode(std::string_view text, std::size_t& pos) noexcept;

void append_utf8(std::string& out, char32_t cp);

bool is_valid_utf8(std::string_view text) noexcept;

bool is_letter(char32_t cp) noexcept;
char32_t to_lower(char32_t cp) noexcept;

// Typographic apostrophes that the tokenizer normalizes to '\''.
constexpr bool is_apostrophe(char32_t cp) noexcept {
  return cp == U'\'' || cp == U'’' || cp == U'ʼ';
}

constexpr bool is_space(char32_t cp) noexcept {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == U'\f' || cp == U'\v' || cp == U' ' || cp == U' ' ||
         cp == U' ' || cp == U'　';
}

// Lowercases every code point. ASCII-only input takes a fast path.
std::string fold_case(std::string_view text);

bool is_folded(std::string_view text) noexcept;

}  // namespace affectlens::unicode
