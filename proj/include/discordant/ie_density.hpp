#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "discordant/folner.hpp"

namespace discordant {

/// A family (E_n) of subsets of a semigroup, each with a known density,
/// whose complement ℱ = G \ ⋃ E_n is under study.
///
/// Congruence families additionally record the modulus of each member so
/// that the "E_I = ∅ for infinite I" property can be checked exactly.
struct IEFamily {
  std::vector<SetOracle> members;
  GroupContext context = GroupContext::integers();
  /// For congruence families: member n is moduli[n]·ℤ (or the product box).
  std::vector<std::int64_t> moduli;

  /// Members m·ℤ for each modulus, density 1/m.
  static IEFamily congruences(std::span<const std::int64_t> moduli);

  std::size_t size() const { return members.size(); }
  double density_sum() const;
  /// ℱ = G \ ⋃ E_n, with knownDensity ∏(1 - d_n).
  SetOracle complement_oracle() const;
  /// E_I = ⋂_{i ∈ I} E_i.
  SetOracle intersection(std::span<const std::size_t> indices) const;

  enum class EmptinessEvidence { Verified, Assumed };
  /// Property (b): verified for congruence families with pairwise coprime
  /// moduli (the lcm of infinitely many grows without bound), assumed otherwise.
  EmptinessEvidence infinite_intersections_empty() const;
};

struct PartialProductTrace {
  std::vector<double> prefix_products;
  /// Upper bound on |lim ∏ - last prefix product|.
  double tail_bound = 0.0;

  double last() const { return prefix_products.empty() ? 1.0 : prefix_products.back(); }
};

/// Running products ∏_{i<=m}(1 - d_i). `tail_sum_bound` bounds Σ d_i over
/// the terms not supplied.
PartialProductTrace ie_partial_products(std::span<const double> densities, double tail_sum_bound = 0.0);

struct IndependenceReport {
  std::vector<std::size_t> indices;
  double window_ratio = 0.0;   // |E_I ∩ Φ_n| / |Φ_n|
  double product = 0.0;        // ∏ d(E_i)
  double difference = 0.0;     // window_ratio - product
  bool flagged = false;        // |difference| > tolerance
};

IndependenceReport ie_check_independence(const IEFamily& family, std::span<const std::size_t> indices,
                                         std::int64_t window_index, double tolerance = 1e-3,
                                         unsigned threads = 0);

struct OvercountReport {
  int k = 0;
  std::size_t truncation = 0;
  double window_average = 0.0;  // A_Φn(Σ_{|I|=k, I⊆[m]} 1_{E_I})
  double expected = 0.0;        // Σ_{|I|=k, I⊆[m]} ∏ d(E_i)
  double difference = 0.0;
  /// Bound on the contribution of index sets reaching past the truncation,
  /// computed from the densities of the supplied members beyond it.
  double tail_bound = 0.0;
};

OvercountReport ie_check_bounded_overcount(const IEFamily& family, int k, std::int64_t window_index,
                                           std::size_t truncation);

/// Σ_{i=0}^{terms-1} (-1)^i C(k, i), summed term by term.
std::int64_t truncated_alternating_sum(int k, int terms);

struct TruncationCheck {
  bool holds = true;
  std::int64_t samples = 0;
  std::optional<std::int64_t> first_violation;
};

/// Pointwise 1_ℱ(r) >= Σ_{i=0}^{2n-1} (-1)^i Σ_{|I|=i} 1_{E_I}(r) over r in [lo, hi].
TruncationCheck indicator_truncation_check(const IEFamily& family, int n, std::int64_t lo, std::int64_t hi);

/// Members D_n × E_n over the product of the two contexts, densities d_n e_n.
/// Both contexts must be ℤ or ℤ^d.
IEFamily product_family(const IEFamily& g_family, const IEFamily& h_family);

}  // namespace discordant
