#include "discordant/sl2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

#include "discordant/errors.hpp"
#include "discordant/folner.hpp"
#include "discordant/numtheory.hpp"

namespace discordant {

namespace {

using boost::multiprecision::cpp_int;

std::int64_t floor_div(std::int64_t p, std::int64_t q) {
  std::int64_t r = p / q;
  if ((p % q != 0) && ((p < 0) != (q < 0))) --r;
  return r;
}

std::int64_t ceil_div(std::int64_t p, std::int64_t q) { return -floor_div(-p, q); }

// t-range with |v0 + t*s| <= n.
std::pair<std::int64_t, std::int64_t> bounded_range(std::int64_t v0, std::int64_t s, std::int64_t n) {
  using R = std::pair<std::int64_t, std::int64_t>;
  if (s == 0) return std::abs(v0) <= n ? R{INT64_MIN / 4, INT64_MAX / 4} : R{1, 0};
  if (s > 0) return {ceil_div(-n - v0, s), floor_div(n - v0, s)};
  return {ceil_div(n - v0, s), floor_div(-n - v0, s)};
}

void rows_for_top(std::int64_t a, std::int64_t n, std::vector<Mat2>& out) {
  for (std::int64_t b = -n; b <= n; ++b) {
    const auto [g, x, y] = extended_gcd(a, b);
    if (g != 1) continue;
    // a*x + b*y = 1, so (c0, d0) = (-y, x) and (c, d) = (c0 + t a, d0 + t b).
    const std::int64_t c0 = -y, d0 = x;
    const auto [lo1, hi1] = bounded_range(c0, a, n);
    const auto [lo2, hi2] = bounded_range(d0, b, n);
    const std::int64_t lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
    for (std::int64_t t = lo; t <= hi; ++t) out.emplace_back(a, b, c0 + t * a, d0 + t * b);
  }
}

std::int64_t to_int64(const cpp_int& v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ConstructionError("crt_split entry exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

cpp_int mod_pos(const cpp_int& v, const cpp_int& m) {
  cpp_int r = v % m;
  return r < 0 ? r + m : r;
}

// Extended gcd over arbitrary precision: returns (g, u, v) with a*u + b*v = g.
std::tuple<cpp_int, cpp_int, cpp_int> big_gcd(cpp_int a, cpp_int b) {
  cpp_int u0 = 1, v0 = 0, u1 = 0, v1 = 1;
  while (b != 0) {
    const cpp_int q = a / b;
    cpp_int r = a - q * b;
    a = b;
    b = r;
    r = u0 - q * u1;
    u0 = u1;
    u1 = r;
    r = v0 - q * v1;
    v0 = v1;
    v1 = r;
  }
  if (a < 0) return {cpp_int(-a), cpp_int(-u0), cpp_int(-v0)};
  return {a, u0, v0};
}

double gamma_bound(std::int64_t k, std::int64_t n) {
  return 96.0 / static_cast<double>(k * k) * static_cast<double>(n * n);
}

double ball_bound(std::int64_t n) { return 12.0 / (std::numbers::pi * std::numbers::pi) * static_cast<double>(n * n); }

}  // namespace

Mat2::Mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) : a_(a), b_(b), c_(c), d_(d) {
  const __int128 det = static_cast<__int128>(a) * d - static_cast<__int128>(b) * c;
  if (det != 1) throw ArgumentError("matrix determinant is not 1");
}

std::int64_t Mat2::max_abs_entry() const {
  return std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
}

Mat2 Mat2::operator*(const Mat2& o) const {
  auto mul = [](std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) {
    std::int64_t x, y, z;
    if (__builtin_mul_overflow(p, q, &x) || __builtin_mul_overflow(r, s, &y) || __builtin_add_overflow(x, y, &z))
      throw ArgumentError("SL2 product overflows int64");
    return z;
  };
  return {mul(a_, o.a_, b_, o.c_), mul(a_, o.b_, b_, o.d_), mul(c_, o.a_, d_, o.c_), mul(c_, o.b_, d_, o.d_)};
}

std::size_t Mat2Hash::operator()(const Mat2& m) const noexcept {
  std::size_t h = 0;
  for (auto v : {m.a(), m.b(), m.c(), m.d()})
    h = h * 0x100000001b3ULL ^ std::hash<std::int64_t>{}(v);
  return h;
}

ModMat2 ModMat2::reduce(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t m) {
  if (m < 2) throw ArgumentError("modulus must be >= 2");
  ModMat2 r{mod_floor(a, m), mod_floor(b, m), mod_floor(c, m), mod_floor(d, m), m};
  const __int128 det = static_cast<__int128>(r.a) * r.d - static_cast<__int128>(r.b) * r.c;
  if (static_cast<std::int64_t>(((det % m) + m) % m) != 1 % m)
    throw ArgumentError("matrix determinant is not 1 mod " + std::to_string(m));
  return r;
}

Sl2Ball enumerate_ball(std::int64_t n, unsigned threads) {
  if (n < 1) throw ArgumentError("ball radius must be >= 1");
  if (n > kMaxBallRadius)
    throw BudgetError("ball radius " + std::to_string(n) + " exceeds the budget " + std::to_string(kMaxBallRadius));
  if (threads == 0) threads = default_thread_count();
  const std::int64_t width = 2 * n + 1;
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, width));
  std::vector<std::vector<Mat2>> parts(threads);
  auto work = [&](unsigned t) {
    for (std::int64_t a = -n + static_cast<std::int64_t>(t); a <= n; a += threads) rows_for_top(a, n, parts[t]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  Sl2Ball ball;
  ball.n = n;
  for (auto& p : parts) ball.members.insert(ball.members.end(), p.begin(), p.end());
  std::sort(ball.members.begin(), ball.members.end());
  return ball;
}

Sl2Ball brute_force_ball(std::int64_t n) {
  if (n < 1 || n > 12) throw ArgumentError("brute force ball radius must be in [1, 12]");
  Sl2Ball ball;
  ball.n = n;
  for (std::int64_t a = -n; a <= n; ++a)
    for (std::int64_t b = -n; b <= n; ++b)
      for (std::int64_t c = -n; c <= n; ++c)
        for (std::int64_t d = -n; d <= n; ++d)
          if (a * d - b * c == 1) ball.members.emplace_back(a, b, c, d);
  std::sort(ball.members.begin(), ball.members.end());
  return ball;
}

BallBoundReport ball_lower_bound_check(std::int64_t n) {
  BallBoundReport r;
  r.n = n;
  r.ball_size = static_cast<std::int64_t>(enumerate_ball(n).members.size());
  r.lower_bound = ball_bound(n);
  r.holds = static_cast<double>(r.ball_size) >= r.lower_bound;
  return r;
}

bool gamma_membership(const Mat2& m, std::int64_t k) {
  if (k < 2) throw ArgumentError("congruence level must be >= 2");
  return mod_floor(m.a(), k) == 1 && mod_floor(m.d(), k) == 1 && mod_floor(m.b(), k) == 0 &&
         mod_floor(m.c(), k) == 0;
}

GammaCountReport gamma_count_bound_check(std::int64_t k, std::int64_t n) {
  if (k < 2) throw ArgumentError("congruence level must be >= 2");
  if (n < k) throw ArgumentError("the Γ(k) count bound needs n >= k");
  GammaCountReport r;
  r.k = k;
  r.n = n;
  for (const auto& m : enumerate_ball(n).members)
    if (gamma_membership(m, k)) ++r.count;
  r.bound = gamma_bound(k, n);
  r.holds = static_cast<double>(r.count) <= r.bound;
  return r;
}

BallTable ball_table(std::int64_t n_lo, std::int64_t n_hi, std::span<const std::int64_t> ks, unsigned threads) {
  if (n_lo < 1 || n_hi < n_lo) throw ArgumentError("invalid ball table range");
  for (auto k : ks)
    if (k < 2) throw ArgumentError("congruence level must be >= 2");
  const Sl2Ball ball = enumerate_ball(n_hi, threads);
  const auto width = static_cast<std::size_t>(n_hi + 1);
  std::vector<std::int64_t> by_radius(width, 0);
  std::vector<std::vector<std::int64_t>> gamma_by_radius(ks.size(), std::vector<std::int64_t>(width, 0));
  for (const auto& m : ball.members) {
    const auto r = static_cast<std::size_t>(m.max_abs_entry());
    ++by_radius[r];
    for (std::size_t i = 0; i < ks.size(); ++i)
      if (gamma_membership(m, ks[i])) ++gamma_by_radius[i][r];
  }
  BallTable table;
  table.ks.assign(ks.begin(), ks.end());
  std::int64_t size = 0;
  std::vector<std::int64_t> gamma(ks.size(), 0);
  for (std::int64_t n = 0; n <= n_hi; ++n) {
    size += by_radius[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < ks.size(); ++i) gamma[i] += gamma_by_radius[i][static_cast<std::size_t>(n)];
    if (n < n_lo) continue;
    BallTableRow row;
    row.n = n;
    row.ball_size = size;
    row.lower_bound = ball_bound(n);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const bool applies = ks[i] <= n;
      row.gamma_counts.push_back(applies ? gamma[i] : 0);
      row.gamma_bounds.push_back(applies ? gamma_bound(ks[i], n) : 0.0);
      if (applies && static_cast<double>(gamma[i]) > row.gamma_bounds.back()) table.gamma_bounds_hold = false;
    }
    table.rows.push_back(std::move(row));
  }
  for (auto it = table.rows.rbegin(); it != table.rows.rend(); ++it) {
    if (static_cast<double>(it->ball_size) < it->lower_bound) break;
    table.lower_bound_onset = it->n;
  }
  return table;
}

CongruenceDensityReport congruence_complement_density(const BSequence& b, std::span<const std::int64_t> n_range,
                                                      unsigned threads) {
  CongruenceDensityReport rep;
  for (auto bn : b.terms()) rep.lower_bound -= 8.0 * std::numbers::pi * std::numbers::pi / static_cast<double>(bn * bn);
  if (n_range.empty()) return rep;
  const std::int64_t n_max = *std::max_element(n_range.begin(), n_range.end());
  const Sl2Ball ball = enumerate_ball(n_max, threads);
  for (auto n : n_range) {
    CongruenceDensityRow row;
    row.n = n;
    for (const auto& m : ball.members) {
      if (m.max_abs_entry() > n) continue;
      ++row.ball_size;
      bool in_gamma = false;
      for (auto bn : b.terms()) in_gamma = in_gamma || gamma_membership(m, bn);
      if (!in_gamma) ++row.count;
    }
    row.ratio = static_cast<double>(row.count) / static_cast<double>(row.ball_size);
    rep.rows.push_back(row);
  }
  return rep;
}

Mat2 crt_split(const ModMat2& t, std::int64_t n) {
  const std::int64_t m = t.modulus;
  if (n < 2) throw ArgumentError("modulus n must be >= 2");
  if (std::gcd(m, n) != 1) throw ArgumentError("crt_split moduli must be coprime");
  ModMat2::reduce(t.a, t.b, t.c, t.d, m);

  const auto [g, x, y] = extended_gcd(m, n);  // m x + n y = 1
  (void)g;
  const cpp_int M = m, N = n, MN = M * N;
  const cpp_int mx = M * x, ny = N * y;
  cpp_int a1 = mx + t.a * ny;
  const cpp_int b1 = t.b * ny;
  const cpp_int c1 = t.c * ny;
  const cpp_int d1 = mx + t.d * ny;
  if (a1 == 0) a1 = MN;

  // q: product of the primes dividing a' but not b'.
  cpp_int q = 1, rest = abs(a1);
  for (cpp_int p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    if (b1 % p != 0) q *= p;
  }
  if (rest > 1 && b1 % rest != 0) q *= rest;

  const cpp_int b2 = b1 + MN * q;
  const auto [gg, u, v] = big_gcd(a1, b2);
  if (gg != 1) throw ConstructionError("crt_split top row is not coprime");
  const cpp_int det = a1 * d1 - b2 * c1;
  if (mod_pos(det, MN) != 1 % MN) throw ConstructionError("crt_split blend determinant is not 1 mod mn");
  const cpp_int s = (det - 1) / MN;
  const cpp_int c2 = c1 + MN * s * v;
  const cpp_int d2 = d1 - MN * s * u;

  const Mat2 out(to_int64(a1), to_int64(b2), to_int64(c2), to_int64(d2));
  if (!(ModMat2::of(out, m) == ModMat2::reduce(t.a, t.b, t.c, t.d, m)) || !gamma_membership(out, n))
    throw ConstructionError("crt_split result failed verification");
  return out;
}

}  // namespace discordant
