#include "discordant/numtheory.hpp"

#include <numeric>
#include <string>

#include "discordant/errors.hpp"

namespace discordant {

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (std::int64_t q = p * p; q <= limit; q += p) composite[q] = true;
  }
  return primes;
}

BezoutTriple extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

bool pairwise_coprime(std::span<const std::int64_t> values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (std::gcd(values[i], values[j]) != 1) return false;
  return true;
}

CrtSolution solve_crt(std::span<const std::int64_t> residues, std::span<const std::int64_t> moduli) {
  if (residues.size() != moduli.size()) throw ArgumentError("residue and modulus counts differ");
  for (auto m : moduli)
    if (m < 1) throw ArgumentError("CRT moduli must be positive");
  if (!pairwise_coprime(moduli)) throw ArgumentError("CRT moduli are not pairwise coprime");
  __int128 x = 0, n = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const std::int64_t m = moduli[i];
    const std::int64_t r = mod_floor(residues[i], m);
    // x + n*t ≡ r (mod m)  ⇒  t ≡ (r - x) * n⁻¹ (mod m)
    const std::int64_t n_mod = static_cast<std::int64_t>(n % m);
    const auto [g, inv, unused] = extended_gcd(n_mod, m);
    (void)g;
    (void)unused;
    const std::int64_t diff = mod_floor(static_cast<std::int64_t>((static_cast<__int128>(r) - x % m) % m), m);
    const std::int64_t t = static_cast<std::int64_t>((static_cast<__int128>(diff) * mod_floor(inv, m)) % m);
    x += n * t;
    n *= m;
    if (n > INT64_MAX) throw ArgumentError("CRT modulus product overflows int64");
    x %= n;
  }
  return {static_cast<std::int64_t>(x), static_cast<std::int64_t>(n)};
}

Valuation exponent_valuation(std::int64_t b, std::int64_t k) {
  if (b < 2) throw ArgumentError("exponent_valuation needs b >= 2, got " + std::to_string(b));
  if (k == 0) return Valuation::infinite();
  int m = 0;
  while (k % b == 0) {
    k /= b;
    ++m;
  }
  return Valuation::finite(m);
}

}  // namespace discordant
