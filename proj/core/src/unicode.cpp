#include "affectlens/unicode.hpp"

#include <clocale>
#include <cwctype>
#include <locale.h>
#include <wctype.h>

namespace affectlens::unicode {

namespace {

// glibc ships C.UTF-8 tables; fall back to ASCII-only behaviour if the
// locale cannot be created.
locale_t utf8_locale() noexcept {
  static const locale_t loc = [] {
    locale_t l = newlocale(LC_CTYPE_MASK, "C.UTF-8", static_cast<locale_t>(nullptr));
    if (l == static_cast<locale_t>(nullptr)) {
      l = newlocale(LC_CTYPE_MASK, "C.utf8", static_cast<locale_t>(nullptr));
    }
    return l;
  }();
  return loc;
}

constexpr bool is_ascii_letter(char32_t cp) noexcept {
  return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
}

}  // namespace

char32_t decode(std::string_view text, std::size_t& pos) noexcept {
  const auto* s = reinterpret_cast<const unsigned char*>(text.data());
  const std::size_t n = text.size();
  const unsigned char b0 = s[pos];
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
    min = 0x10000;
  } else {
    ++pos;
    return kReplacement;
  }
  if (pos + len > n) {
    ++pos;
    return kReplacement;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char b = s[pos + i];
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kReplacement;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kReplacement;
  }
  pos += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_valid_utf8(std::string_view text) noexcept {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t before = pos;
    const char32_t cp = decode(text, pos);
    // A literal U+FFFD in the input is three bytes long; a decode failure
    // always advances by exactly one.
    if (cp == kReplacement && pos - before == 1) return false;
  }
  return true;
}

bool is_letter(char32_t cp) noexcept {
  if (cp < 0x80) return is_ascii_letter(cp);
  const locale_t loc = utf8_locale();
  if (loc == static_cast<locale_t>(nullptr)) return false;
  return iswalpha_l(static_cast<wint_t>(cp), loc) != 0;
}

char32_t to_lower(char32_t cp) noexcept {
  if (cp < 0x80) {
    return (cp >= U'A' && cp <= U'Z') ? cp - U'A' + U'a' : cp;
  }
  const locale_t loc = utf8_locale();
  if (loc == static_cast<locale_t>(nullptr)) return cp;
  return static_cast<char32_t>(towlower_l(static_cast<wint_t>(cp), loc));
}

std::string fold_case(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool ascii = true;
  for (char ch : text) {
    if (static_cast<unsigned char>(ch) >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) {
    for (char ch : text) {
      out.push_back((ch >= 'A' && ch <= 'Z') ? static_cast<char>(ch - 'A' + 'a') : ch);
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    append_utf8(out, to_lower(decode(text, pos)));
  }
  return out;
}

bool is_folded(std::string_view text) noexcept {
  for (char ch : text) {
    if (ch >= 'A' && ch <= 'Z') return false;
    if (static_cast<unsigned char>(ch) >= 0x80) {
      return fold_case(text) == text;
    }
  }
  return true;
}

}  // namespace affectlens::unicode
