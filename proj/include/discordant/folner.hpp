#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "discordant/element.hpp"

namespace discordant {

enum class ContextKind { NatAdd, IntAdd, IntVecAdd, Heisenberg, FreeWords };

/// A countable cancellative semigroup with an integer-tuple element codec.
///
/// NatAdd is the additive monoid {0, 1, 2, ...}; its Følner windows are
/// {1..n}. Heisenberg elements are triples (a, b, c) multiplied as
/// (a1 + a2, b1 + b2, a1*b2 + c1 + c2). FreeWords elements are words over
/// {0..alphabet-1} stored letter by letter, multiplied by concatenation.
class GroupContext {
 public:
  static GroupContext naturals();
  static GroupContext integers();
  static GroupContext lattice(int d);
  static GroupContext heisenberg();
  static GroupContext free_words(int alphabet);

  ContextKind kind() const { return kind_; }
  /// Coordinate count of every element (0 for FreeWords, whose length varies).
  int dim() const { return dim_; }
  int alphabet() const { return alphabet_; }
  std::string name() const;

  bool is_abelian() const { return kind_ != ContextKind::Heisenberg && kind_ != ContextKind::FreeWords; }
  bool has_folner_windows() const { return kind_ != ContextKind::FreeWords; }

  /// Validates and returns the element with these coordinates.
  Element encode(std::span<const std::int64_t> coords) const;
  Element encode(std::initializer_list<std::int64_t> coords) const {
    return encode(std::span<const std::int64_t>(coords.begin(), coords.size()));
  }
  bool is_element(const Element& x) const;

  /// The semigroup operation. Throws ArgumentError on int64 overflow.
  Element op(const Element& g, const Element& h) const;
  Element identity() const;

  friend bool operator==(const GroupContext&, const GroupContext&) = default;

 private:
  GroupContext(ContextKind k, int dim, int alphabet) : kind_(k), dim_(dim), alphabet_(alphabet) {}
  ContextKind kind_;
  int dim_;
  int alphabet_;
};

/// Per-coordinate inclusive ranges describing a box of encoded elements.
struct WindowBox {
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;

  std::int64_t size() const;
  bool contains(const Element& x) const;
};

struct FolnerWindow {
  std::int64_t index = 0;
  std::vector<Element> elements;
};

WindowBox window_box(const GroupContext& ctx, std::int64_t n);

/// Closed-form |Φ_n|.
std::int64_t window_size(const GroupContext& ctx, std::int64_t n);

/// Materialised window, enumerated in lexicographic coordinate order.
FolnerWindow folner_window(const GroupContext& ctx, std::int64_t n);

/// Visits every element of the box in lexicographic order.
void for_each_in_box(const WindowBox& box, const std::function<void(const Element&)>& visit);

/// |Φ_n Δ gΦ_n| / |Φ_n| with gΦ_n = {g·x : x ∈ Φ_n}.
double folner_defect(const GroupContext& ctx, const Element& g, std::int64_t n);

/// Membership predicate for a subset of a semigroup. `contains` must be
/// pure: it is called concurrently from density workers.
struct SetOracle {
  std::function<bool(const Element&)> contains;
  std::string label;
  std::optional<double> known_density;
};

SetOracle whole_set(std::string label = "G");
SetOracle empty_set(std::string label = "empty");
SetOracle complement(const SetOracle& a);
SetOracle set_union(const SetOracle& a, const SetOracle& b);
SetOracle set_intersection(const SetOracle& a, const SetOracle& b);
/// Integers divisible by m (shifted by residue), density 1/m.
SetOracle residue_class(std::int64_t modulus, std::int64_t residue = 0);

/// g⁻¹A = {x : g·x ∈ A}.
SetOracle shift_oracle(const SetOracle& a, const GroupContext& ctx, const Element& g);

struct DensityReport {
  std::vector<std::pair<std::int64_t, double>> ratios;
  std::vector<std::int64_t> counts;
  std::vector<std::int64_t> window_sizes;
  /// Max / min over the last ceil(k/2) ratios of the k requested windows.
  double upper_estimate = 0.0;
  double lower_estimate = 0.0;
};

/// Exact |A ∩ Φ_n| for one window. Work is split over `threads` workers by
/// the first coordinate and merged in order.
std::int64_t count_in_window(const SetOracle& a, const GroupContext& ctx, std::int64_t n,
                             unsigned threads = 0);

DensityReport density_report(const SetOracle& a, const GroupContext& ctx,
                             std::span<const std::int64_t> n_range, unsigned threads = 0);

/// Thread count used when callers pass 0: DISCORDANT_THREADS or hardware concurrency.
unsigned default_thread_count();

}  // namespace discordant
