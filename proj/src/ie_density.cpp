#include "discordant/ie_density.hpp"

#include <cmath>
#include <memory>
#include <numeric>

#include "discordant/errors.hpp"
#include "discordant/numtheory.hpp"

namespace discordant {

namespace {

double binomial(std::int64_t n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / i;
  return r;
}

// e_k(d_1..d_m), the k-th elementary symmetric polynomial.
double elementary_symmetric(std::span<const double> d, int k) {
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (double x : d)
    for (int j = k; j >= 1; --j) e[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j - 1)] * x;
  return e[static_cast<std::size_t>(k)];
}

std::vector<double> member_densities(const IEFamily& f) {
  std::vector<double> d;
  for (const auto& m : f.members) {
    if (!m.known_density) throw ArgumentError("family member " + m.label + " has no known density");
    d.push_back(*m.known_density);
  }
  return d;
}

}  // namespace

IEFamily IEFamily::congruences(std::span<const std::int64_t> moduli) {
  IEFamily f;
  for (auto m : moduli) {
    if (m < 2) throw ArgumentError("congruence family moduli must be >= 2");
    f.members.push_back(residue_class(m, 0));
    f.moduli.push_back(m);
  }
  return f;
}

double IEFamily::density_sum() const {
  double s = 0.0;
  for (double d : member_densities(*this)) s += d;
  return s;
}

SetOracle IEFamily::complement_oracle() const {
  auto ms = std::make_shared<std::vector<SetOracle>>(members);
  double d = 1.0;
  for (double x : member_densities(*this)) d *= 1.0 - x;
  return {[ms](const Element& x) {
            for (const auto& m : *ms)
              if (m.contains(x)) return false;
            return true;
          },
          "free-of-family", d};
}

SetOracle IEFamily::intersection(std::span<const std::size_t> indices) const {
  auto ms = std::make_shared<std::vector<SetOracle>>();
  std::string label = "E{";
  for (auto i : indices) {
    if (i >= members.size()) throw ArgumentError("index set exceeds the supplied family");
    ms->push_back(members[i]);
    label += std::to_string(i + 1) + (ms->size() < indices.size() ? "," : "");
  }
  return {[ms](const Element& x) {
            for (const auto& m : *ms)
              if (!m.contains(x)) return false;
            return true;
          },
          label + "}", std::nullopt};
}

IEFamily::EmptinessEvidence IEFamily::infinite_intersections_empty() const {
  if (!moduli.empty() && moduli.size() == members.size() && pairwise_coprime(moduli))
    return EmptinessEvidence::Verified;
  return EmptinessEvidence::Assumed;
}

PartialProductTrace ie_partial_products(std::span<const double> densities, double tail_sum_bound) {
  if (tail_sum_bound < 0.0) throw ArgumentError("tail bound must be non-negative");
  PartialProductTrace trace;
  double p = 1.0;
  for (double d : densities) {
    if (!(d >= 0.0 && d < 1.0)) throw ArgumentError("densities must lie in [0,1)");
    p *= 1.0 - d;
    trace.prefix_products.push_back(p);
  }
  // P_m - P_∞ = P_m (1 - ∏_{i>m}(1 - d_i)) <= Σ_{i>m} d_i.
  trace.tail_bound = tail_sum_bound;
  return trace;
}

IndependenceReport ie_check_independence(const IEFamily& family, std::span<const std::size_t> indices,
                                         std::int64_t window_index, double tolerance, unsigned threads) {
  IndependenceReport rep;
  rep.indices.assign(indices.begin(), indices.end());
  const auto d = member_densities(family);
  rep.product = 1.0;
  for (auto i : indices) {
    if (i >= d.size()) throw ArgumentError("index set exceeds the supplied family");
    rep.product *= d[i];
  }
  const SetOracle ei = family.intersection(indices);
  const std::int64_t count = count_in_window(ei, family.context, window_index, threads);
  rep.window_ratio = static_cast<double>(count) / static_cast<double>(window_size(family.context, window_index));
  rep.difference = rep.window_ratio - rep.product;
  rep.flagged = std::abs(rep.difference) > tolerance;
  return rep;
}

OvercountReport ie_check_bounded_overcount(const IEFamily& family, int k, std::int64_t window_index,
                                           std::size_t truncation) {
  if (k < 1) throw ArgumentError("k must be positive");
  if (truncation > family.size()) throw ArgumentError("truncation exceeds the family size");
  OvercountReport rep;
  rep.k = k;
  rep.truncation = truncation;
  const auto d = member_densities(family);
  const std::span<const double> head(d.data(), truncation);
  rep.expected = elementary_symmetric(head, k);

  // Σ_{|I|=k, I⊆[m]} 1_{E_I}(x) = C(#{i <= m : x ∈ E_i}, k).
  double total = 0.0;
  for_each_in_box(window_box(family.context, window_index), [&](const Element& x) {
    std::int64_t c = 0;
    for (std::size_t i = 0; i < truncation; ++i)
      if (family.members[i].contains(x)) ++c;
    total += binomial(c, k);
  });
  rep.window_average = total / static_cast<double>(window_size(family.context, window_index));
  rep.difference = rep.window_average - rep.expected;

  double beyond = 0.0;
  for (std::size_t i = truncation; i < d.size(); ++i) beyond += d[i];
  rep.tail_bound = beyond * elementary_symmetric(d, k - 1);
  return rep;
}

std::int64_t truncated_alternating_sum(int k, int terms) {
  std::int64_t s = 0;
  for (int i = 0; i < terms; ++i) {
    const auto c = static_cast<std::int64_t>(std::llround(binomial(k, i)));
    s += (i % 2 == 0) ? c : -c;
  }
  return s;
}

TruncationCheck indicator_truncation_check(const IEFamily& family, int n, std::int64_t lo, std::int64_t hi) {
  if (n < 1) throw ArgumentError("truncation order must be positive");
  if (hi < lo) throw ArgumentError("empty sample range");
  if (family.context.dim() != 1) throw ConfigurationError("indicator truncation check samples integers");
  TruncationCheck out;
  for (std::int64_t r = lo; r <= hi; ++r) {
    const Element x{r};
    int k = 0;
    for (const auto& m : family.members)
      if (m.contains(x)) ++k;
    const std::int64_t lhs = k == 0 ? 1 : 0;
    const std::int64_t rhs = truncated_alternating_sum(k, 2 * n);
    ++out.samples;
    if (lhs < rhs) {
      out.holds = false;
      if (!out.first_violation) out.first_violation = r;
    }
  }
  return out;
}

IEFamily product_family(const IEFamily& g_family, const IEFamily& h_family) {
  auto additive = [](const GroupContext& c) {
    return c.kind() == ContextKind::IntAdd || c.kind() == ContextKind::IntVecAdd;
  };
  if (!additive(g_family.context) || !additive(h_family.context))
    throw ConfigurationError("product families are built over Z^d contexts");
  if (g_family.size() != h_family.size()) throw ArgumentError("product families need equal lengths");
  const int dg = g_family.context.dim(), dh = h_family.context.dim();
  IEFamily out;
  out.context = GroupContext::lattice(dg + dh);
  const auto d1 = member_densities(g_family);
  const auto d2 = member_densities(h_family);
  for (std::size_t n = 0; n < g_family.size(); ++n) {
    auto f = g_family.members[n].contains;
    auto g = h_family.members[n].contains;
    out.members.push_back({[f, g, dg, dh](const Element& x) {
                             const auto c = x.coords();
                             return f(Element(c.subspan(0, static_cast<std::size_t>(dg)))) &&
                                    g(Element(c.subspan(static_cast<std::size_t>(dg), static_cast<std::size_t>(dh))));
                           },
                           g_family.members[n].label + "x" + h_family.members[n].label, d1[n] * d2[n]});
  }
  return out;
}

}  // namespace discordant
