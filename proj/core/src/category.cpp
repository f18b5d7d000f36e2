#include "affectlens/category.hpp"

#include <string>

#include "affectlens/error.hpp"

namespace affectlens {

namespace {

constexpr std::array<std::string_view, kCategoryCount> kLabels = {
    "anger", "anticipation", "disgust", "fear",     "joy",
    "sadness", "surprise",   "trust",   "negative", "positive",
};

bool iequals(std::string_view a, std::string_view b) noexcept {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char x = a[i];
    if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
    if (x != b[i]) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kUsage: return "usage";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kEncoding: return "encoding";
    case ErrorCode::kUndefined: return "undefined";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kFingerprintMismatch: return "fingerprint_mismatch";
    case ErrorCode::kConflict: return "conflict";
  }
  return "unknown";
}

std::string_view to_string(AffectCategory c) noexcept { return kLabels[index_of(c)]; }

std::optional<AffectCategory> parse_category(std::string_view label) noexcept {
  label = trim(label);
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    if (iequals(label, kLabels[i])) return static_cast<AffectCategory>(i);
  }
  return std::nullopt;
}

AffectCategory require_category(std::string_view label) {
  if (auto c = parse_category(label)) return *c;
  throw Error(ErrorCode::kUsage, "unknown affect category '" + std::string(label) + "'");
}

std::vector<AffectCategory> parse_category_list(std::string_view csv) {
  std::vector<AffectCategory> out;
  while (!csv.empty()) {
    auto comma = csv.find(',');
    auto item = trim(csv.substr(0, comma));
    if (!item.empty()) out.push_back(require_category(item));
    if (comma == std::string_view::npos) break;
    csv.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<AffectCategory> CategorySet::members() const {
  std::vector<AffectCategory> out;
  for (auto c : kAllCategories) {
    if (contains(c)) out.push_back(c);
  }
  return out;
}

}  // namespace affectlens
