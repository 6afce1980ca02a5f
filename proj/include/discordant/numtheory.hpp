#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace discordant {

/// Primes p <= limit by the sieve of Eratosthenes.
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

/// Solution of a*x + b*y = g with g = gcd(a, b) >= 0.
struct BezoutTriple {
  std::int64_t g, x, y;
};
BezoutTriple extended_gcd(std::int64_t a, std::int64_t b);

/// Least non-negative representative of v mod m (m >= 1).
inline std::int64_t mod_floor(std::int64_t v, std::int64_t m) {
  const std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

/// Least non-negative x with x ≡ residues[i] (mod moduli[i]) for all i.
/// Moduli must be pairwise coprime; the product must fit in int64.
struct CrtSolution {
  std::int64_t x;
  std::int64_t modulus;
};
CrtSolution solve_crt(std::span<const std::int64_t> residues, std::span<const std::int64_t> moduli);

bool pairwise_coprime(std::span<const std::int64_t> values);

/// e_b(k): the largest m with b^m | k. Infinite for k = 0.
class Valuation {
 public:
  static Valuation infinite() { return Valuation(); }
  static Valuation finite(int m) { return Valuation(m); }

  bool is_infinite() const { return !value_.has_value(); }
  int value() const { return *value_; }
  bool equals(int m) const { return value_ && *value_ == m; }

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  Valuation() = default;
  explicit Valuation(int m) : value_(m) {}
  std::optional<int> value_;
};

Valuation exponent_valuation(std::int64_t b, std::int64_t k);

}  // namespace discordant
