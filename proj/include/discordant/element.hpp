#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>

namespace discordant {

inline constexpr std::size_t kMaxElementDim = 8;

/// Semigroup element encoded as a short tuple of signed 64-bit integers.
///
/// Fixed capacity keeps elements trivially copyable so that windows with
/// tens of millions of members can be enumerated without allocation.
class Element {
 public:
  Element() = default;
  Element(std::initializer_list<std::int64_t> coords);
  explicit Element(std::span<const std::int64_t> coords);

  static Element scalar(std::int64_t v) { return Element{v}; }

  std::size_t dim() const { return dim_; }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  std::span<const std::int64_t> coords() const { return {coords_.data(), dim_}; }

  void push_back(std::int64_t v);

  friend bool operator==(const Element& a, const Element& b) {
    if (a.dim_ != b.dim_) return false;
    for (std::size_t i = 0; i < a.dim_; ++i)
      if (a.coords_[i] != b.coords_[i]) return false;
    return true;
  }
  friend bool operator<(const Element& a, const Element& b);

  std::string to_string() const;

 private:
  std::array<std::int64_t, kMaxElementDim> coords_{};
  std::size_t dim_ = 0;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

}  // namespace discordant
