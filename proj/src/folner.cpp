#include "discordant/folner.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include "discordant/errors.hpp"

namespace discordant {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArgumentError("semigroup operation overflows int64");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArgumentError("semigroup operation overflows int64");
  return r;
}

void for_each_in_ranges(const std::vector<std::pair<std::int64_t, std::int64_t>>& ranges,
                        const std::function<void(const Element&)>& visit) {
  const std::size_t d = ranges.size();
  for (const auto& [lo, hi] : ranges)
    if (lo > hi) return;
  Element x;
  for (const auto& r : ranges) x.push_back(r.first);
  if (d == 0) {
    visit(x);
    return;
  }
  while (true) {
    visit(x);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (x[i] < ranges[i].second) {
        ++x[i];
        break;
      }
      x[i] = ranges[i].first;
      if (i == 0) return;
    }
  }
}

}  // namespace

GroupContext GroupContext::naturals() { return {ContextKind::NatAdd, 1, 0}; }
GroupContext GroupContext::integers() { return {ContextKind::IntAdd, 1, 0}; }
GroupContext GroupContext::lattice(int d) {
  if (d < 1 || d > static_cast<int>(kMaxElementDim))
    throw ConfigurationError("lattice dimension must be in [1, " + std::to_string(kMaxElementDim) + "]");
  return {ContextKind::IntVecAdd, d, 0};
}
GroupContext GroupContext::heisenberg() { return {ContextKind::Heisenberg, 3, 0}; }
GroupContext GroupContext::free_words(int alphabet) {
  if (alphabet < 1) throw ConfigurationError("free semigroup needs a nonempty alphabet");
  return {ContextKind::FreeWords, 0, alphabet};
}

std::string GroupContext::name() const {
  switch (kind_) {
    case ContextKind::NatAdd: return "N";
    case ContextKind::IntAdd: return "Z";
    case ContextKind::IntVecAdd: return "Z" + std::to_string(dim_);
    case ContextKind::Heisenberg: return "H3";
    case ContextKind::FreeWords: return "Free" + std::to_string(alphabet_);
  }
  return "?";
}

bool GroupContext::is_element(const Element& x) const {
  switch (kind_) {
    case ContextKind::NatAdd: return x.dim() == 1 && x[0] >= 0;
    case ContextKind::FreeWords:
      for (auto c : x.coords())
        if (c < 0 || c >= alphabet_) return false;
      return true;
    default: return static_cast<int>(x.dim()) == dim_;
  }
}

Element GroupContext::encode(std::span<const std::int64_t> coords) const {
  Element x(coords);
  if (!is_element(x)) throw ArgumentError("tuple " + x.to_string() + " is not an element of " + name());
  return x;
}

Element GroupContext::op(const Element& g, const Element& h) const {
  switch (kind_) {
    case ContextKind::NatAdd:
    case ContextKind::IntAdd:
    case ContextKind::IntVecAdd: {
      Element r = g;
      for (std::size_t i = 0; i < g.dim(); ++i) r[i] = checked_add(g[i], h[i]);
      return r;
    }
    case ContextKind::Heisenberg:
      return Element{checked_add(g[0], h[0]), checked_add(g[1], h[1]),
                     checked_add(checked_mul(g[0], h[1]), checked_add(g[2], h[2]))};
    case ContextKind::FreeWords: {
      Element r = g;
      for (auto c : h.coords()) r.push_back(c);
      return r;
    }
  }
  throw ConfigurationError("unknown context");
}

Element GroupContext::identity() const {
  if (kind_ == ContextKind::FreeWords) return Element{};
  Element e;
  for (int i = 0; i < dim_; ++i) e.push_back(0);
  return e;
}

std::int64_t WindowBox::size() const {
  std::int64_t s = 1;
  for (const auto& [lo, hi] : ranges) s *= (hi >= lo ? hi - lo + 1 : 0);
  return s;
}

bool WindowBox::contains(const Element& x) const {
  if (x.dim() != ranges.size()) return false;
  for (std::size_t i = 0; i < ranges.size(); ++i)
    if (x[i] < ranges[i].first || x[i] > ranges[i].second) return false;
  return true;
}

WindowBox window_box(const GroupContext& ctx, std::int64_t n) {
  if (n < 1) throw ArgumentError("window index must be >= 1");
  WindowBox box;
  switch (ctx.kind()) {
    case ContextKind::NatAdd: box.ranges = {{1, n}}; break;
    case ContextKind::IntAdd: box.ranges = {{-n, n}}; break;
    case ContextKind::IntVecAdd: box.ranges.assign(ctx.dim(), {-n, n}); break;
    case ContextKind::Heisenberg: box.ranges = {{-n, n}, {-n, n}, {-n * n, n * n}}; break;
    case ContextKind::FreeWords:
      throw ConfigurationError("no built-in Følner sequence for " + ctx.name());
  }
  return box;
}

std::int64_t window_size(const GroupContext& ctx, std::int64_t n) {
  switch (ctx.kind()) {
    case ContextKind::NatAdd: return n;
    case ContextKind::IntAdd: return 2 * n + 1;
    case ContextKind::IntVecAdd: {
      std::int64_t s = 1;
      for (int i = 0; i < ctx.dim(); ++i) s *= 2 * n + 1;
      return s;
    }
    case ContextKind::Heisenberg: return (2 * n + 1) * (2 * n + 1) * (2 * n * n + 1);
    case ContextKind::FreeWords: break;
  }
  throw ConfigurationError("no built-in Følner sequence for " + ctx.name());
}

FolnerWindow folner_window(const GroupContext& ctx, std::int64_t n) {
  FolnerWindow w;
  w.index = n;
  const WindowBox box = window_box(ctx, n);
  w.elements.reserve(static_cast<std::size_t>(box.size()));
  for_each_in_box(box, [&](const Element& x) { w.elements.push_back(x); });
  return w;
}

void for_each_in_box(const WindowBox& box, const std::function<void(const Element&)>& visit) {
  for_each_in_ranges(box.ranges, visit);
}

double folner_defect(const GroupContext& ctx, const Element& g, std::int64_t n) {
  if (!ctx.is_element(g)) throw ArgumentError("shift " + g.to_string() + " is not an element of " + ctx.name());
  const WindowBox box = window_box(ctx, n);
  std::int64_t inside = 0;
  for_each_in_box(box, [&](const Element& x) {
    if (box.contains(ctx.op(g, x))) ++inside;
  });
  // |gΦ| = |Φ| by cancellativity, so |Φ Δ gΦ| = 2(|Φ| - |Φ ∩ gΦ|).
  const std::int64_t size = box.size();
  return 2.0 * static_cast<double>(size - inside) / static_cast<double>(size);
}

SetOracle whole_set(std::string label) {
  return {[](const Element&) { return true; }, std::move(label), 1.0};
}

SetOracle empty_set(std::string label) {
  return {[](const Element&) { return false; }, std::move(label), 0.0};
}

SetOracle complement(const SetOracle& a) {
  std::optional<double> d;
  if (a.known_density) d = 1.0 - *a.known_density;
  return {[f = a.contains](const Element& x) { return !f(x); }, "complement(" + a.label + ")", d};
}

SetOracle set_union(const SetOracle& a, const SetOracle& b) {
  return {[f = a.contains, g = b.contains](const Element& x) { return f(x) || g(x); },
          a.label + "|" + b.label, std::nullopt};
}

SetOracle set_intersection(const SetOracle& a, const SetOracle& b) {
  return {[f = a.contains, g = b.contains](const Element& x) { return f(x) && g(x); },
          a.label + "&" + b.label, std::nullopt};
}

SetOracle residue_class(std::int64_t modulus, std::int64_t residue) {
  if (modulus < 1) throw ArgumentError("modulus must be positive");
  const std::int64_t r = ((residue % modulus) + modulus) % modulus;
  return {[modulus, r](const Element& x) { return ((x[0] % modulus) + modulus) % modulus == r; },
          std::to_string(modulus) + "Z+" + std::to_string(r), 1.0 / static_cast<double>(modulus)};
}

SetOracle shift_oracle(const SetOracle& a, const GroupContext& ctx, const Element& g) {
  if (!ctx.is_element(g)) throw ArgumentError("shift " + g.to_string() + " is not an element of " + ctx.name());
  return {[f = a.contains, ctx, g](const Element& x) { return f(ctx.op(g, x)); },
          "shift(" + a.label + "," + g.to_string() + ")", a.known_density};
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("DISCORDANT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::int64_t count_in_window(const SetOracle& a, const GroupContext& ctx, std::int64_t n,
                             unsigned threads) {
  const WindowBox box = window_box(ctx, n);
  if (threads == 0) threads = default_thread_count();
  const auto [lo, hi] = box.ranges.front();
  const std::int64_t span = hi - lo + 1;
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, span));
  std::vector<std::int64_t> partial(threads, 0);

  auto work = [&](unsigned t) {
    WindowBox part = box;
    part.ranges.front() = {lo + span * t / threads, lo + span * (t + 1) / threads - 1};
    std::int64_t c = 0;
    if (part.ranges.size() == 1) {
      for (std::int64_t v = part.ranges[0].first; v <= part.ranges[0].second; ++v)
        if (a.contains(Element{v})) ++c;
    } else {
      for_each_in_box(part, [&](const Element& x) {
        if (a.contains(x)) ++c;
      });
    }
    partial[t] = c;
  };

  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  std::int64_t total = 0;
  for (auto c : partial) total += c;
  return total;
}

DensityReport density_report(const SetOracle& a, const GroupContext& ctx,
                             std::span<const std::int64_t> n_range, unsigned threads) {
  if (n_range.empty()) throw ArgumentError("density_report needs at least one window index");
  for (std::size_t i = 1; i < n_range.size(); ++i)
    if (n_range[i] <= n_range[i - 1]) throw ArgumentError("window indices must be strictly increasing");
  DensityReport rep;
  for (auto n : n_range) {
    const std::int64_t count = count_in_window(a, ctx, n, threads);
    const std::int64_t size = window_size(ctx, n);
    rep.counts.push_back(count);
    rep.window_sizes.push_back(size);
    rep.ratios.emplace_back(n, static_cast<double>(count) / static_cast<double>(size));
  }
  const std::size_t k = rep.ratios.size();
  const std::size_t tail = (k + 1) / 2;
  rep.upper_estimate = 0.0;
  rep.lower_estimate = 1.0;
  for (std::size_t i = k - tail; i < k; ++i) {
    rep.upper_estimate = std::max(rep.upper_estimate, rep.ratios[i].second);
    rep.lower_estimate = std::min(rep.lower_estimate, rep.ratios[i].second);
  }
  return rep;
}

}  // namespace discordant
