#include "discordant/constructions.hpp"

#include <cmath>
#include <memory>
#include <numeric>
#include <string>

#include "discordant/errors.hpp"

namespace discordant {

namespace {

std::string join(std::span<const std::int64_t> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size() && i < 6; ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  if (v.size() > 6) s += ",...(" + std::to_string(v.size()) + " terms)";
  return s;
}

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

// b^e, or nullopt once the power exceeds int64.
std::optional<std::int64_t> checked_pow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i)
    if (__builtin_mul_overflow(r, b, &r)) return std::nullopt;
  return r;
}

}  // namespace

BSequence::BSequence(std::vector<std::int64_t> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i] < 2) throw ArgumentError("B-sequence terms must be >= 2");
    if (i > 0 && terms_[i] <= terms_[i - 1]) throw ArgumentError("B-sequence terms must be increasing");
  }
  if (!pairwise_coprime(terms_)) throw ArgumentError("B-sequence terms must be pairwise coprime: " + join(terms_));
  for (auto b : terms_) reciprocal_sum_ += 1.0 / static_cast<double>(b);
}

BSequence::BSequence(std::vector<std::int64_t> terms, Trusted) : terms_(std::move(terms)) {
  for (auto b : terms_) reciprocal_sum_ += 1.0 / static_cast<double>(b);
}

BSequence BSequence::prime_powers(int k, std::int64_t limit) {
  if (k < 1) throw ArgumentError("prime power exponent must be >= 1");
  // p^k <= limit needs p <= limit^(1/k).
  auto root = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(limit), 1.0 / k))) + 1;
  std::vector<std::int64_t> terms;
  for (auto p : primes_up_to(root)) {
    auto pk = checked_pow(p, k);
    if (pk && *pk <= limit) terms.push_back(*pk);
  }
  return BSequence(std::move(terms), Trusted{});
}

BSequence BSequence::first_prime_squares(std::size_t count) {
  std::int64_t limit = 16;
  std::vector<std::int64_t> primes;
  while ((primes = primes_up_to(limit)).size() < count) limit *= 2;
  std::vector<std::int64_t> terms;
  for (std::size_t i = 0; i < count; ++i) terms.push_back(primes[i] * primes[i]);
  return BSequence(std::move(terms), Trusted{});
}

double BSequence::free_density() const {
  double d = 1.0;
  for (auto b : terms_) d *= 1.0 - 1.0 / static_cast<double>(b);
  return d;
}

StrausParams StrausParams::geometric(std::int64_t first, std::int64_t ratio, std::size_t count,
                                     StrausVariant variant) {
  StrausParams p;
  p.variant = variant;
  std::int64_t a = first;
  for (std::size_t i = 0; i < count; ++i) {
    p.a.push_back(a);
    if (i + 1 < count && __builtin_mul_overflow(a, ratio, &a))
      throw ArgumentError("geometric Straus sequence overflows int64");
  }
  return p;
}

double straus_density_lower_bound(const StrausParams& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    const double weight = p.variant == StrausVariant::Block ? static_cast<double>(i + 1) : 1.0;
    s += weight / static_cast<double>(p.a[i]);
  }
  return 1.0 - s;
}

SetOracle straus_set(const StrausParams& p) {
  double partial = 0.0;
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    if (p.a[i] < 2) throw ConstructionError("Straus moduli must be >= 2");
    if (i > 0 && p.a[i] <= p.a[i - 1]) throw ConstructionError("Straus moduli must be increasing");
    const double weight = p.variant == StrausVariant::Block ? static_cast<double>(i + 1) : 1.0;
    partial += weight / static_cast<double>(p.a[i]);
    if (partial >= 1.0)
      throw ConstructionError(p.variant == StrausVariant::Block ? "Straus block variant needs sum n/a_n < 1"
                                                                : "Straus set needs sum 1/a_n < 1");
  }
  auto a = std::make_shared<const std::vector<std::int64_t>>(p.a);
  std::string label = "straus(" + join(p.a) + ")";
  if (p.variant == StrausVariant::SingleResidue) {
    return {[a](const Element& e) {
              const std::int64_t x = e[0];
              if (x < 1) return false;
              for (std::size_t i = 0; i < a->size(); ++i) {
                const std::int64_t shift = static_cast<std::int64_t>(i);  // n - 1
                const std::int64_t an = (*a)[i];
                if (an + shift > x) break;
                if ((x - shift) % an == 0) return false;
              }
              return true;
            },
            label, std::nullopt};
  }
  return {[a](const Element& e) {
            const std::int64_t x = e[0];
            if (x < 1) return false;
            for (std::size_t i = 0; i < a->size(); ++i) {
              const std::int64_t an = (*a)[i];
              if (an > x) break;
              if (x % an <= static_cast<std::int64_t>(i)) return false;
            }
            return true;
          },
          "block-" + label, std::nullopt};
}

SetOracle bfree_oracle(const BSequence& b) {
  auto terms = std::make_shared<const std::vector<std::int64_t>>(b.terms().begin(), b.terms().end());
  const bool nonempty = !b.empty();
  return {[terms, nonempty](const Element& e) {
            const std::int64_t k = e[0];
            if (k == 0) return !nonempty;
            const std::int64_t ak = abs64(k);
            for (auto bn : *terms) {
              if (bn > ak) break;
              if (ak % bn == 0) return false;
            }
            return true;
          },
          "bfree(" + join(b.terms()) + ")", b.free_density()};
}

SetOracle squarefree_oracle(std::int64_t limit) {
  SetOracle o = bfree_oracle(BSequence::prime_powers(2, limit));
  o.label = "squarefree";
  return o;
}

SetOracle bufree_oracle(const BSequence& b, std::span<const int> u) {
  if (u.size() != b.size())
    throw ArgumentError("exponent pattern length " + std::to_string(u.size()) + " differs from B length " +
                        std::to_string(b.size()));
  struct Term {
    std::int64_t base;
    int exponent;
    std::int64_t power;  // b^u, or INT64_MAX when it overflows
  };
  auto terms = std::make_shared<std::vector<Term>>();
  double density = 1.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < 1) throw ArgumentError("exponent pattern entries must be positive");
    const auto pw = checked_pow(b[i], u[i]);
    terms->push_back({b[i], u[i], pw.value_or(INT64_MAX)});
    const double bd = static_cast<double>(b[i]);
    density *= 1.0 - (bd - 1.0) / std::pow(bd, u[i] + 1);
  }
  return {[terms](const Element& e) {
            const std::int64_t k = e[0];
            if (k == 0) return true;  // e_b(0) = ∞ never equals a finite u_n
            const std::int64_t ak = abs64(k);
            for (const auto& t : *terms) {
              if (t.power > ak) continue;  // b^u ∤ k, so e_b(k) < u
              if (exponent_valuation(t.base, ak).equals(t.exponent)) return false;
            }
            return true;
          },
          "bufree", density};
}

SetOracle coprime_tuple_oracle(std::span<const BSequence> rows) {
  const std::size_t d = rows.size();
  if (d < 2) throw ArgumentError("coprime tuple oracle needs d >= 2 coordinate sequences");
  if (d > kMaxElementDim) throw ArgumentError("too many coordinates");
  const std::size_t len = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != len) throw ArgumentError("coprime tuple rows must have equal length");
  // Stored row-major: entry [n*d + i] is b_{n,i}.
  auto table = std::make_shared<std::vector<std::int64_t>>(len * d);
  double density = 1.0;
  for (std::size_t n = 0; n < len; ++n) {
    double prod = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      (*table)[n * d + i] = rows[i][n];
      prod *= static_cast<double>(rows[i][n]);
    }
    density *= 1.0 - 1.0 / prod;
  }
  return {[table, d, len](const Element& v) {
            // Each coordinate sequence increases, so once some b_{n,i} exceeds a
            // nonzero |v_i| no later row can divide v_i either.
            const std::int64_t* row = table->data();
            for (std::size_t n = 0; n < len; ++n, row += d) {
              for (std::size_t i = 0; i < d; ++i)
                if (v[i] != 0 && row[i] > abs64(v[i])) return true;
              bool all = true;
              for (std::size_t i = 0; i < d; ++i) {
                if (v[i] % row[i] != 0) {
                  all = false;
                  break;
                }
              }
              if (all) return false;
            }
            return true;
          },
          "coprime-tuples(d=" + std::to_string(d) + ")", density};
}

SetOracle heisenberg_bfree_oracle(const BSequence& b) {
  auto terms = std::make_shared<const std::vector<std::int64_t>>(b.terms().begin(), b.terms().end());
  double density = 1.0;
  for (auto bn : b.terms()) density *= 1.0 - 1.0 / std::pow(static_cast<double>(bn), 3);
  return {[terms](const Element& x) {
            for (auto bn : *terms) {
              bool all = true;
              for (std::size_t i = 0; i < 3; ++i) {
                if (x[i] != 0 && bn > abs64(x[i])) return true;
                if (x[i] % bn != 0) {
                  all = false;
                  break;
                }
              }
              if (all) return false;
            }
            return true;
          },
          "H3-bfree(" + join(b.terms()) + ")", density};
}

}  // namespace discordant
