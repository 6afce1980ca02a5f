#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "discordant/folner.hpp"
#include "discordant/numtheory.hpp"

namespace discordant {

/// Finite prefix of an increasing, pairwise coprime sequence of integers >= 2.
class BSequence {
 public:
  BSequence() = default;
  /// Throws ArgumentError unless terms are increasing, >= 2 and pairwise coprime.
  explicit BSequence(std::vector<std::int64_t> terms);

  /// p^k for every prime p with p^k <= limit.
  static BSequence prime_powers(int k, std::int64_t limit);
  /// The first `count` squares of primes.
  static BSequence first_prime_squares(std::size_t count);

  std::span<const std::int64_t> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::int64_t operator[](std::size_t i) const { return terms_[i]; }

  double reciprocal_sum() const { return reciprocal_sum_; }
  /// ∏ (1 - 1/b_n) over the supplied terms.
  double free_density() const;

 private:
  struct Trusted {};
  BSequence(std::vector<std::int64_t> terms, Trusted);

  std::vector<std::int64_t> terms_;
  double reciprocal_sum_ = 0.0;
};

enum class StrausVariant {
  /// A = ℕ \ ⋃ (a_n ℕ + n - 1); requires Σ 1/a_n < 1.
  SingleResidue,
  /// A = ℕ \ ⋃ (a_n ℕ + {0, ..., n-1}); requires Σ n/a_n < 1.
  Block,
};

struct StrausParams {
  std::vector<std::int64_t> a;
  StrausVariant variant = StrausVariant::SingleResidue;

  /// a_n = first * ratio^(n-1) for n = 1..count.
  static StrausParams geometric(std::int64_t first, std::int64_t ratio, std::size_t count,
                                StrausVariant variant = StrausVariant::SingleResidue);
};

/// Straus-type discordant set over ℕ. knownDensity is unset; the
/// guaranteed lower bound 1 - Σ 1/a_n is exposed separately.
SetOracle straus_set(const StrausParams& p);
double straus_density_lower_bound(const StrausParams& p);

/// ℬ-free integers: k with no b_n | k. knownDensity = ∏(1 - 1/b_n).
SetOracle bfree_oracle(const BSequence& b);
/// Squarefree integers via the prime squares up to `limit`; exact for |k| <= limit.
SetOracle squarefree_oracle(std::int64_t limit = 1'000'000'000'000);

/// Integers k with e_{b_n}(k) ≠ u_n for every n.
SetOracle bufree_oracle(const BSequence& b, std::span<const int> u);

/// Vectors v ∈ ℤ^d for which no row n has b_{n,i} | v_i for every coordinate i.
/// rows[i] is the sequence (b_{n,i})_n for coordinate i.
SetOracle coprime_tuple_oracle(std::span<const BSequence> rows);

/// Heisenberg triples (a, b, c) not all divisible by any b_n.
SetOracle heisenberg_bfree_oracle(const BSequence& b);

}  // namespace discordant
