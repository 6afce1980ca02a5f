#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "discordant/folner.hpp"

namespace discordant {

/// A point of the circle 𝕋 = [0,1) stored as a 64-bit binary fraction,
/// together with a bound on how far the stored value is from the real
/// number it approximates. Rotations by multiples are exact modulo 2^64,
/// so the only error is |n| times the approximation error.
class CircleAngle {
 public:
  /// (√5 - 1)/2, error < 2^-64.
  static CircleAngle golden();
  /// √2 - 1, error < 2^-64.
  static CircleAngle sqrt2_fraction();
  /// frac(p/q) rounded down, error < 2^-64.
  static CircleAngle from_rational(std::int64_t p, std::int64_t q);
  /// A raw 64-bit fraction with an explicit error bound in units of 2^-64.
  static CircleAngle from_fixed(std::uint64_t fraction, double error_ulps);
  /// A double in [0,1); exact for the double itself (error 0 relative to it).
  static CircleAngle from_double(double x);

  std::uint64_t fraction() const { return fraction_; }
  /// Absolute approximation error, in circle units.
  double error() const { return error_ulps_ * 0x1p-64; }
  double to_double() const { return static_cast<double>(fraction_) * 0x1p-64; }

 private:
  CircleAngle(std::uint64_t f, double e) : fraction_(f), error_ulps_(e) {}
  std::uint64_t fraction_;
  double error_ulps_;
};

/// A finite union of half-open arcs [lo, hi) of the circle. Construction
/// merges overlapping or touching arcs; hi = 1 denotes the full top.
class ArcSet {
 public:
  ArcSet() = default;
  /// Each pair is [lo, hi) with 0 <= lo < hi <= 1.
  explicit ArcSet(std::vector<std::pair<double, double>> arcs);

  static ArcSet full() { return ArcSet({{0.0, 1.0}}); }

  const std::vector<std::pair<double, double>>& arcs() const { return arcs_; }
  double measure() const;
  bool contains(double x) const;
  /// Distance from x to the nearest arc endpoint (circle metric).
  double distance_to_boundary(double x) const;

 private:
  std::vector<std::pair<double, double>> arcs_;
};

struct RotationSpec {
  CircleAngle alpha = CircleAngle::golden();
  ArcSet target;
  double base_point = 0.0;
};

enum class Visit { Inside, Outside, Boundary };

/// Largest position error tolerated before a probe is rejected.
inline constexpr double kMaxRotationError = 0x1p-32;
/// Required accuracy of the rotation angle.
inline constexpr double kMaxAngleError = 0x1p-60;

/// R_E(x) = {n ∈ ℤ : x + nα ∈ E}.
class RotationVisits {
 public:
  /// Throws PrecisionError if the angle error is >= 2^-60.
  explicit RotationVisits(RotationSpec spec);

  /// Boundary: the point lies within the accumulated error of an endpoint.
  /// Throws PrecisionError once |n| exceeds the precision budget.
  Visit classify(std::int64_t n) const;
  /// Conservative membership: boundary probes count as outside.
  bool contains(std::int64_t n) const { return classify(n) == Visit::Inside; }
  std::int64_t max_probe() const { return max_probe_; }
  /// Position x + nα as a double (for diagnostics).
  double position(std::int64_t n) const;

  /// Number of boundary-classified probes in {-n..n} (ℤ) or {1..n} (ℕ).
  std::int64_t boundary_count(const GroupContext& ctx, std::int64_t n) const;

  SetOracle oracle() const;
  const RotationSpec& spec() const { return spec_; }

 private:
  RotationSpec spec_;
  std::uint64_t base_fixed_;
  std::int64_t max_probe_;
};

struct FatCantorSpec {
  double target_measure = 0.5;
  int depth = 1;
  /// Open intervals removed so far, in removal order.
  std::vector<std::pair<double, double>> removed;
  /// Closed intervals that survive at `depth`, ordered left to right.
  std::vector<std::pair<double, double>> surviving;

  double remaining_measure() const;
  double max_surviving_length() const;
  /// The surviving intervals as half-open arcs (endpoints have measure zero).
  ArcSet as_arcs() const;
};

/// Symmetric middle-interval removal on [0,1): stage k removes a total of
/// (1-c)/2^k split equally over the 2^(k-1) surviving intervals, so the
/// limit set is nowhere dense with measure exactly c.
FatCantorSpec fat_cantor(double c, int depth);

struct ARSetSpec {
  double t = 0.2;
  CircleAngle alpha = CircleAngle::golden();
  /// R'_{B_n} = R_{B_n} \ [-M_n, M_n] with M_n = ceil(cutoff_base * cutoff_growth^n).
  double cutoff_base = 16.0;
  double cutoff_growth = 4.0;
};

/// A = ℤ \ ⋃ R'_{B_n} with B_n = ⋃_{|k|<=n} (kα - r_n, kα + r_n),
/// r_n = t / ((2n+1) 2^(n+1)).
class ARSet {
 public:
  explicit ARSet(ARSetSpec spec);

  double radius(int n) const;
  std::int64_t cutoff(int n) const;
  /// Number of stages n whose cutoff M_n is below |m|.
  int active_stages(std::int64_t m) const;

  bool contains(std::int64_t m) const;
  /// Whether m ∈ R_{B_n} (ignoring the cutoff); boundary cases count as inside.
  bool in_stage(std::int64_t m, int n) const;

  /// m in [lo, hi] with ‖mα‖ < r_k, |m + k| > M_|k| and m + k ∈ A.
  /// Empty for a correct construction.
  std::vector<std::int64_t> anti_recurrence_violations(std::int64_t k, std::int64_t lo, std::int64_t hi) const;

  std::int64_t boundary_hits() const { return *boundary_hits_; }
  SetOracle oracle() const;
  const ARSetSpec& spec() const { return spec_; }

 private:
  ARSetSpec spec_;
  std::vector<std::int64_t> cutoffs_;
  std::shared_ptr<std::int64_t> boundary_hits_;
};

/// μ(⋃_{n=0}^{stages} B_n) for the given t, by sorting and sweeping arcs.
double ar_union_measure(double t, const CircleAngle& alpha, int stages);

struct ARTuning {
  double t;
  double measured_union;  // μ(⋃_{n<=stages} B_n)
  double tail_bound;      // t / 2^(stages-1)
  int stages;
  int iterations;
};

/// Bisection for t with μ(⋃ B_n) = 1 - target_c within `precision`.
ARTuning tune_ar_density(double target_c, const CircleAngle& alpha, double precision, int stages = 40,
                         int max_iterations = 200);

}  // namespace discordant
