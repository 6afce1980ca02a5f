#include "discordant/element.hpp"

#include <algorithm>

#include "discordant/errors.hpp"

namespace discordant {

Element::Element(std::initializer_list<std::int64_t> coords)
    : Element(std::span<const std::int64_t>(coords.begin(), coords.size())) {}

Element::Element(std::span<const std::int64_t> coords) {
  if (coords.size() > kMaxElementDim)
    throw ArgumentError("element dimension exceeds " + std::to_string(kMaxElementDim));
  std::copy(coords.begin(), coords.end(), coords_.begin());
  dim_ = coords.size();
}

void Element::push_back(std::int64_t v) {
  if (dim_ == kMaxElementDim)
    throw ArgumentError("element dimension exceeds " + std::to_string(kMaxElementDim));
  coords_[dim_++] = v;
}

bool operator<(const Element& a, const Element& b) {
  return std::lexicographical_compare(a.coords().begin(), a.coords().end(),
                                      b.coords().begin(), b.coords().end());
}

std::string Element::to_string() const {
  if (dim_ == 1) return std::to_string(coords_[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i) s += ",";
    s += std::to_string(coords_[i]);
  }
  return s + ")";
}

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ e.dim();
  for (auto c : e.coords()) {
    h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace discordant
