#include "discordant/rotation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "discordant/errors.hpp"

namespace discordant {

namespace {

constexpr double kDoubleRounding = 0x1p-53;

std::uint64_t to_fixed(double x) {
  // x in [0,1); ldexp is exact for doubles, truncation drops nothing below 2^-64.
  return static_cast<std::uint64_t>(std::ldexp(x, 64));
}

double fixed_to_double(std::uint64_t v) { return static_cast<double>(v) * 0x1p-64; }

// ‖v‖: distance from the fixed-point value to the nearest integer.
double circle_norm(std::uint64_t v) {
  const std::uint64_t other = static_cast<std::uint64_t>(0) - v;
  return fixed_to_double(std::min(v, other));
}

std::uint64_t rotate(std::uint64_t base, std::int64_t n, std::uint64_t step) {
  return base + static_cast<std::uint64_t>(n) * step;
}

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

double merged_measure(std::vector<std::pair<double, double>> arcs) {
  std::sort(arcs.begin(), arcs.end());
  double total = 0.0, cur_lo = 0.0, cur_hi = -1.0;
  for (const auto& [lo, hi] : arcs) {
    if (lo > cur_hi) {
      if (cur_hi > cur_lo) total += cur_hi - cur_lo;
      cur_lo = lo;
      cur_hi = hi;
    } else {
      cur_hi = std::max(cur_hi, hi);
    }
  }
  if (cur_hi > cur_lo) total += cur_hi - cur_lo;
  return total;
}

}  // namespace

CircleAngle CircleAngle::golden() { return {0x9E3779B97F4A7C15ULL, 1.0}; }
CircleAngle CircleAngle::sqrt2_fraction() { return {0x6A09E667F3BCC908ULL, 1.0}; }

CircleAngle CircleAngle::from_rational(std::int64_t p, std::int64_t q) {
  if (q <= 0) throw ArgumentError("rational angle needs a positive denominator");
  const std::int64_t r = ((p % q) + q) % q;
  const unsigned __int128 scaled = (static_cast<unsigned __int128>(r) << 64) / static_cast<unsigned __int128>(q);
  return {static_cast<std::uint64_t>(scaled), 1.0};
}

CircleAngle CircleAngle::from_fixed(std::uint64_t fraction, double error_ulps) {
  if (!(error_ulps >= 0.0)) throw ArgumentError("angle error must be non-negative");
  return {fraction, error_ulps};
}

CircleAngle CircleAngle::from_double(double x) {
  if (!(x >= 0.0 && x < 1.0)) throw ArgumentError("angle must lie in [0,1)");
  return {to_fixed(x), 0.0};
}

ArcSet::ArcSet(std::vector<std::pair<double, double>> arcs) {
  for (const auto& [lo, hi] : arcs)
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0))
      throw ArgumentError("arc [" + std::to_string(lo) + "," + std::to_string(hi) + ") is not inside [0,1)");
  std::sort(arcs.begin(), arcs.end());
  for (const auto& a : arcs) {
    if (!arcs_.empty() && a.first <= arcs_.back().second)
      arcs_.back().second = std::max(arcs_.back().second, a.second);
    else
      arcs_.push_back(a);
  }
}

double ArcSet::measure() const {
  double m = 0.0;
  for (const auto& [lo, hi] : arcs_) m += hi - lo;
  return m;
}

bool ArcSet::contains(double x) const {
  auto it = std::upper_bound(arcs_.begin(), arcs_.end(), x,
                             [](double v, const std::pair<double, double>& a) { return v < a.first; });
  if (it == arcs_.begin()) return false;
  --it;
  return x >= it->first && x < it->second;
}

double ArcSet::distance_to_boundary(double x) const {
  if (arcs_.empty()) return std::numeric_limits<double>::infinity();
  const bool wraps = arcs_.front().first == 0.0 && arcs_.back().second == 1.0;
  if (wraps && arcs_.size() == 1) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](double p) {
    double d = std::abs(x - p);
    d = std::min(d, 1.0 - d);
    best = std::min(best, d);
  };
  // Arcs are sorted and disjoint, so only neighbours of x matter.
  auto it = std::upper_bound(arcs_.begin(), arcs_.end(), x,
                             [](double v, const std::pair<double, double>& a) { return v < a.first; });
  auto visit = [&](std::size_t i) {
    const auto& [lo, hi] = arcs_[i];
    if (!(wraps && lo == 0.0)) consider(lo);
    if (!(wraps && hi == 1.0)) consider(hi);
  };
  const std::size_t idx = static_cast<std::size_t>(it - arcs_.begin());
  if (idx > 0) visit(idx - 1);
  if (idx < arcs_.size()) visit(idx);
  visit(0);
  visit(arcs_.size() - 1);
  return best;
}

RotationVisits::RotationVisits(RotationSpec spec) : spec_(std::move(spec)) {
  if (!(spec_.alpha.error() < kMaxAngleError))
    throw PrecisionError("rotation angle error " + std::to_string(spec_.alpha.error()) + " is not below 2^-60");
  if (!(spec_.base_point >= 0.0 && spec_.base_point < 1.0)) throw ArgumentError("base point must lie in [0,1)");
  base_fixed_ = to_fixed(spec_.base_point);
  const double err = spec_.alpha.error();
  const double budget = err > 0.0 ? kMaxRotationError / err : 0x1p62;
  max_probe_ = static_cast<std::int64_t>(std::min(budget, 0x1p62));
}

double RotationVisits::position(std::int64_t n) const {
  return fixed_to_double(rotate(base_fixed_, n, spec_.alpha.fraction()));
}

Visit RotationVisits::classify(std::int64_t n) const {
  if (abs64(n) > max_probe_)
    throw PrecisionError("probe " + std::to_string(n) + " exceeds the rotation precision budget " +
                         std::to_string(max_probe_));
  const double x = position(n);
  const double err = static_cast<double>(abs64(n)) * spec_.alpha.error() + kDoubleRounding;
  if (spec_.target.distance_to_boundary(x) <= err) return Visit::Boundary;
  return spec_.target.contains(x) ? Visit::Inside : Visit::Outside;
}

std::int64_t RotationVisits::boundary_count(const GroupContext& ctx, std::int64_t n) const {
  const WindowBox box = window_box(ctx, n);
  if (box.ranges.size() != 1) throw ConfigurationError("rotation visits live in N or Z");
  std::int64_t c = 0;
  for (std::int64_t m = box.ranges[0].first; m <= box.ranges[0].second; ++m)
    if (classify(m) == Visit::Boundary) ++c;
  return c;
}

SetOracle RotationVisits::oracle() const {
  auto self = std::make_shared<const RotationVisits>(*this);
  return {[self](const Element& e) { return self->contains(e[0]); }, "rotation-visits",
          spec_.target.measure()};
}

double FatCantorSpec::remaining_measure() const {
  double m = 0.0;
  for (const auto& [lo, hi] : surviving) m += hi - lo;
  return m;
}

double FatCantorSpec::max_surviving_length() const {
  double m = 0.0;
  for (const auto& [lo, hi] : surviving) m = std::max(m, hi - lo);
  return m;
}

ArcSet FatCantorSpec::as_arcs() const { return ArcSet(surviving); }

FatCantorSpec fat_cantor(double c, int depth) {
  if (!(c > 0.0 && c < 1.0)) throw ArgumentError("fat Cantor measure must lie in (0,1)");
  if (depth < 1 || depth > 26) throw ArgumentError("fat Cantor depth must lie in [1,26]");
  FatCantorSpec spec;
  spec.target_measure = c;
  spec.depth = depth;
  std::vector<std::pair<double, double>> cur{{0.0, 1.0}};
  for (int k = 1; k <= depth; ++k) {
    // (1-c)/2^k over 2^(k-1) intervals.
    const double gap = std::ldexp(1.0 - c, -(2 * k - 1));
    std::vector<std::pair<double, double>> next;
    next.reserve(cur.size() * 2);
    for (const auto& [lo, hi] : cur) {
      const double mid = 0.5 * (lo + hi);
      const double a = mid - 0.5 * gap, b = mid + 0.5 * gap;
      spec.removed.emplace_back(a, b);
      next.emplace_back(lo, a);
      next.emplace_back(b, hi);
    }
    cur = std::move(next);
  }
  spec.surviving = std::move(cur);
  return spec;
}

ARSet::ARSet(ARSetSpec spec) : spec_(std::move(spec)), boundary_hits_(std::make_shared<std::int64_t>(0)) {
  if (!(spec_.t > 0.0 && spec_.t < 1.0)) throw ArgumentError("AR parameter t must lie in (0,1)");
  if (!(spec_.cutoff_base >= 1.0 && spec_.cutoff_growth > 1.0))
    throw ArgumentError("AR cutoffs need base >= 1 and growth > 1");
  if (!(spec_.alpha.error() < kMaxAngleError))
    throw PrecisionError("rotation angle error is not below 2^-60");
  for (int n = 0;; ++n) {
    const double m = std::ceil(spec_.cutoff_base * std::pow(spec_.cutoff_growth, n));
    if (m > 0x1p62) break;
    // M_n >= n keeps the trivial hit k = m out of R'_{B_n}.
    cutoffs_.push_back(std::max(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n)));
  }
}

double ARSet::radius(int n) const {
  return spec_.t / (static_cast<double>(2 * n + 1) * std::ldexp(1.0, n + 1));
}

std::int64_t ARSet::cutoff(int n) const {
  if (n < 0 || n >= static_cast<int>(cutoffs_.size())) return std::numeric_limits<std::int64_t>::max();
  return cutoffs_[static_cast<std::size_t>(n)];
}

int ARSet::active_stages(std::int64_t m) const {
  const std::int64_t am = abs64(m);
  int n = 0;
  while (n < static_cast<int>(cutoffs_.size()) && cutoffs_[static_cast<std::size_t>(n)] < am) ++n;
  return n;
}

bool ARSet::in_stage(std::int64_t m, int n) const {
  const double r = radius(n);
  const std::uint64_t step = spec_.alpha.fraction();
  for (std::int64_t k = -n; k <= n; ++k) {
    const std::int64_t j = m - k;
    const double drift = static_cast<double>(abs64(j)) * spec_.alpha.error();
    if (drift > kMaxRotationError)
      throw PrecisionError("AR probe " + std::to_string(m) + " exceeds the rotation precision budget");
    const double d = circle_norm(static_cast<std::uint64_t>(j) * step);
    const double err = drift + kDoubleRounding;
    if (d < r - err) return true;
    if (d <= r + err) {
      // Within the error band of an endpoint: classify as removed.
      __atomic_add_fetch(boundary_hits_.get(), 1, __ATOMIC_RELAXED);
      return true;
    }
  }
  return false;
}

bool ARSet::contains(std::int64_t m) const {
  const int active = active_stages(m);
  for (int n = 0; n < active; ++n)
    if (in_stage(m, n)) return false;
  return true;
}

std::vector<std::int64_t> ARSet::anti_recurrence_violations(std::int64_t k, std::int64_t lo,
                                                            std::int64_t hi) const {
  const int kk = static_cast<int>(abs64(k));
  const double r = radius(kk);
  const std::int64_t cut = cutoff(kk);
  std::vector<std::int64_t> bad;
  for (std::int64_t m = lo; m <= hi; ++m) {
    const double err = static_cast<double>(abs64(m)) * spec_.alpha.error() + kDoubleRounding;
    // (mα - r/2, mα + r/2) meets (-r/2, r/2) iff ‖mα‖ < r.
    if (!(circle_norm(static_cast<std::uint64_t>(m) * spec_.alpha.fraction()) < r - err)) continue;
    if (abs64(m + k) <= cut) continue;
    if (contains(m + k)) bad.push_back(m);
  }
  return bad;
}

SetOracle ARSet::oracle() const {
  auto self = std::make_shared<const ARSet>(*this);
  return {[self](const Element& e) { return self->contains(e[0]); }, "ar-set", std::nullopt};
}

double ar_union_measure(double t, const CircleAngle& alpha, int stages) {
  std::vector<std::pair<double, double>> arcs;
  arcs.reserve(static_cast<std::size_t>((stages + 1) * (stages + 1) * 2));
  for (int n = 0; n <= stages; ++n) {
    const double r = t / (static_cast<double>(2 * n + 1) * std::ldexp(1.0, n + 1));
    for (std::int64_t k = -n; k <= n; ++k) {
      const double c = fixed_to_double(static_cast<std::uint64_t>(k) * alpha.fraction());
      const double lo = c - r, hi = c + r;
      if (2 * r >= 1.0) return 1.0;
      if (lo < 0.0) {
        arcs.emplace_back(lo + 1.0, 1.0);
        arcs.emplace_back(0.0, hi);
      } else if (hi > 1.0) {
        arcs.emplace_back(lo, 1.0);
        arcs.emplace_back(0.0, hi - 1.0);
      } else {
        arcs.emplace_back(lo, hi);
      }
    }
  }
  return merged_measure(std::move(arcs));
}

ARTuning tune_ar_density(double target_c, const CircleAngle& alpha, double precision, int stages,
                         int max_iterations) {
  if (!(target_c > 0.0 && target_c < 1.0)) throw ArgumentError("target density must lie in (0,1)");
  if (!(precision > 0.0)) throw ArgumentError("precision must be positive");
  const double goal = 1.0 - target_c;
  double lo = 0.0, hi = 1.0;
  for (int it = 1; it <= max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = ar_union_measure(mid, alpha, stages);
    if (std::abs(f - goal) <= precision)
      return {mid, f, mid / std::ldexp(1.0, stages - 1), stages, it};
    (f < goal ? lo : hi) = mid;
  }
  throw NumericError("tune_ar_density did not reach precision " + std::to_string(precision) + " in " +
                     std::to_string(max_iterations) + " iterations");
}

}  // namespace discordant
