#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace affectlens {

// The eight basic emotions followed by the two polarities. The numeric order
// is the canonical column order used in every output table.
enum class AffectCategory : std::uint8_t {
  kAnger = 0,
  kAnticipation,
  kDisgust,
  kFear,
  kJoy,
  kSadness,
  kSurprise,
  kTrust,
  kNegative,
  kPositive,
};

inline constexpr std::size_t kCategoryCount = 10;
inline constexpr std::size_t kEmotionCount = 8;

inline constexpr std::array<AffectCategory, kCategoryCount> kAllCategories = {
    AffectCategory::kAnger,    AffectCategory::kAnticipation,
    AffectCategory::kDisgust,  AffectCategory::kFear,
    AffectCategory::kJoy,      AffectCategory::kSadness,
    AffectCategory::kSurprise, AffectCategory::kTrust,
    AffectCategory::kNegative, AffectCategory::kPositive,
};

inline constexpr std::array<AffectCategory, kEmotionCount> kEmotions = {
    AffectCategory::kAnger,   AffectCategory::kAnticipation,
    AffectCategory::kDisgust, AffectCategory::kFear,
    AffectCategory::kJoy,     AffectCategory::kSadness,
    AffectCategory::kSurprise, AffectCategory::kTrust,
};

inline constexpr std::array<AffectCategory, 2> kPolarities = {
    AffectCategory::kNegative, AffectCategory::kPositive};

constexpr std::size_t index_of(AffectCategory c) noexcept {
  return static_cast<std::size_t>(c);
}

constexpr bool is_emotion(AffectCategory c) noexcept {
  return index_of(c) < kEmotionCount;
}

constexpr bool is_polarity(AffectCategory c) noexcept { return !is_emotion(c); }

std::string_view to_string(AffectCategory c) noexcept;

// Accepts the lowercase labels ("anger", ..., "positive"); case-insensitive.
std::optional<AffectCategory> parse_category(std::string_view label) noexcept;

// Same as parse_category but throws Error(kUsage) on an unknown label.
AffectCategory require_category(std::string_view label);

// Parses a comma separated list such as "joy,trust,fear". An empty string
// yields an empty vector.
std::vector<AffectCategory> parse_category_list(std::string_view csv);

// A set of affect categories packed into 10 bits.
class CategorySet {
 public:
  constexpr CategorySet() noexcept = default;
  constexpr CategorySet(std::initializer_list<AffectCategory> cats) noexcept {
    for (auto c : cats) insert(c);
  }

  static constexpr CategorySet from_bits(std::uint16_t bits) noexcept {
    CategorySet s;
    s.bits_ = bits & kMask;
    return s;
  }

  constexpr void insert(AffectCategory c) noexcept {
    bits_ |= static_cast<std::uint16_t>(1u << index_of(c));
  }
  constexpr void erase(AffectCategory c) noexcept {
    bits_ &= static_cast<std::uint16_t>(~(1u << index_of(c)));
  }
  constexpr bool contains(AffectCategory c) const noexcept {
    return (bits_ >> index_of(c)) & 1u;
  }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  constexpr bool has_emotion() const noexcept { return (bits_ & kEmotionMask) != 0; }
  constexpr bool has_polarity() const noexcept { return (bits_ & ~kEmotionMask & kMask) != 0; }
  constexpr std::uint16_t bits() const noexcept { return bits_; }

  constexpr bool is_subset_of(CategorySet other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }

  constexpr CategorySet& operator|=(CategorySet other) noexcept {
    bits_ |= other.bits_;
    return *this;
  }
  friend constexpr CategorySet operator|(CategorySet a, CategorySet b) noexcept {
    return a |= b;
  }
  friend constexpr bool operator==(CategorySet, CategorySet) noexcept = default;

  // Members in canonical order.
  std::vector<AffectCategory> members() const;

 private:
  static constexpr std::uint16_t kMask = (1u << kCategoryCount) - 1;
  static constexpr std::uint16_t kEmotionMask = (1u << kEmotionCount) - 1;
  std::uint16_t bits_ = 0;
};

// Fixed-size table indexed by category.
template <typename T>
class PerCategory {
 public:
  T& operator[](AffectCategory c) noexcept { return values_[index_of(c)]; }
  const T& operator[](AffectCategory c) const noexcept { return values_[index_of(c)]; }

  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const PerCategory&, const PerCategory&) = default;

 private:
  std::array<T, kCategoryCount> values_{};
};

}  // namespace affectlens
