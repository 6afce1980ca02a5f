#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "discordant/constructions.hpp"

namespace discordant {

/// An element [[a, b], [c, d]] of SL₂(ℤ). The determinant is checked on construction.
class Mat2 {
 public:
  Mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
  static Mat2 identity() { return {1, 0, 0, 1}; }

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t d() const { return d_; }
  std::int64_t max_abs_entry() const;

  Mat2 operator*(const Mat2& o) const;
  friend bool operator==(const Mat2&, const Mat2&) = default;
  friend auto operator<=>(const Mat2&, const Mat2&) = default;

 private:
  std::int64_t a_, b_, c_, d_;
};

struct Mat2Hash {
  std::size_t operator()(const Mat2& m) const noexcept;
};

/// A 2x2 matrix over ℤ/mℤ with entries in [0, m) and determinant 1 mod m.
struct ModMat2 {
  std::int64_t a, b, c, d;
  std::int64_t modulus;

  /// Reduces the entries; throws ArgumentError if the determinant is not 1 mod m.
  static ModMat2 reduce(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t m);
  static ModMat2 of(const Mat2& s, std::int64_t m) { return reduce(s.a(), s.b(), s.c(), s.d(), m); }
  friend bool operator==(const ModMat2&, const ModMat2&) = default;
};

/// F_n = {M ∈ SL₂(ℤ) : |a|, |b|, |c|, |d| <= n}.
struct Sl2Ball {
  std::int64_t n = 0;
  std::vector<Mat2> members;  // sorted
};

inline constexpr std::int64_t kMaxBallRadius = 200;

/// Solves each coprime top row (a, b) for the bottom rows (c0 + ta, d0 + tb)
/// inside the bound. Throws BudgetError for n > kMaxBallRadius.
Sl2Ball enumerate_ball(std::int64_t n, unsigned threads = 0);

/// Filters all (2n+1)^4 entry tuples. Only for small n (<= 12).
Sl2Ball brute_force_ball(std::int64_t n);

struct BallBoundReport {
  std::int64_t n = 0;
  std::int64_t ball_size = 0;
  double lower_bound = 0.0;  // (12/π²) n²
  bool holds = false;
};

BallBoundReport ball_lower_bound_check(std::int64_t n);

/// M ≡ I mod k. Throws ArgumentError for k < 2.
bool gamma_membership(const Mat2& m, std::int64_t k);

struct GammaCountReport {
  std::int64_t k = 0;
  std::int64_t n = 0;
  std::int64_t count = 0;  // |Γ(k) ∩ F_n|
  double bound = 0.0;      // (96/k²) n²
  bool holds = false;
};

/// Throws ArgumentError unless 2 <= k <= n.
GammaCountReport gamma_count_bound_check(std::int64_t k, std::int64_t n);

/// Ball sizes and Γ(k) counts for every n in [n_lo, n_hi] from one enumeration of F_{n_hi}.
struct BallTableRow {
  std::int64_t n = 0;
  std::int64_t ball_size = 0;
  double lower_bound = 0.0;
  std::vector<std::int64_t> gamma_counts;  // per k, 0 where k > n
  std::vector<double> gamma_bounds;
};

struct BallTable {
  std::vector<std::int64_t> ks;
  std::vector<BallTableRow> rows;
  /// Least n in the table from which |F_n| >= (12/π²) n² holds through n_hi.
  std::optional<std::int64_t> lower_bound_onset;
  bool gamma_bounds_hold = true;
};

BallTable ball_table(std::int64_t n_lo, std::int64_t n_hi, std::span<const std::int64_t> ks, unsigned threads = 0);

struct CongruenceDensityRow {
  std::int64_t n = 0;
  std::int64_t count = 0;  // |A ∩ F_n|
  std::int64_t ball_size = 0;
  double ratio = 0.0;
};

struct CongruenceDensityReport {
  std::vector<CongruenceDensityRow> rows;
  double lower_bound = 1.0;  // 1 - Σ 8π²/b²
};

/// A = SL₂(ℤ) \ ⋃ Γ(b_m).
CongruenceDensityReport congruence_complement_density(const BSequence& b, std::span<const std::int64_t> n_range,
                                                      unsigned threads = 0);

/// S ∈ SL₂(ℤ) with S ≡ T mod m and S ≡ I mod n. Throws ArgumentError for
/// non-coprime moduli or a mismatched T, ConstructionError if the result
/// fails verification or does not fit in 64 bits.
Mat2 crt_split(const ModMat2& t, std::int64_t n);

}  // namespace discordant
