#include "discordant/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <thread>

#include "discordant/detectors.hpp"
#include "discordant/errors.hpp"

namespace discordant {

namespace {

bool one_dimensional(const GroupContext& ctx) {
  return ctx.kind() == ContextKind::NatAdd || ctx.kind() == ContextKind::IntAdd;
}

void require_one_dimensional(const GroupContext& ctx, const char* what) {
  if (!one_dimensional(ctx)) throw ConfigurationError(std::string(what) + " supports N and Z, not " + ctx.name());
}

std::pair<std::int64_t, std::int64_t> interval_of(const GroupContext& ctx, std::int64_t n) {
  const WindowBox box = window_box(ctx, n);
  return box.ranges.front();
}

// i-th element of the one-dimensional scan order.
std::int64_t scan_at(const GroupContext& ctx, std::int64_t i) {
  if (ctx.kind() == ContextKind::NatAdd) return i;
  return (i % 2 == 1) ? (i + 1) / 2 : -(i / 2);
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<std::int64_t> scalar_offsets(const std::vector<Element>& k) {
  std::vector<std::int64_t> out;
  for (const auto& e : k) {
    if (e.dim() != 1) throw ArgumentError("word shapes must be one-dimensional");
    out.push_back(e[0]);
  }
  return out;
}

bool is_interval(std::vector<std::int64_t> k) {
  std::sort(k.begin(), k.end());
  for (std::size_t i = 1; i < k.size(); ++i)
    if (k[i] != k[i - 1] + 1) return false;
  return true;
}

struct Runs {
  std::int64_t lo = 0;
  std::vector<char> bits;
  std::vector<std::pair<std::int64_t, std::int64_t>> runs;  // (start, length)
  std::int64_t longest = 0, longest_half = 0, members = 0;
};

Runs scan_runs(const SetOracle& u, std::int64_t lo, std::int64_t hi) {
  Runs r;
  r.lo = lo;
  r.bits.resize(static_cast<std::size_t>(hi - lo + 1));
  const std::int64_t mid = lo + (hi - lo + 1) / 2 - 1;
  std::int64_t start = lo, len = 0;
  for (std::int64_t x = lo; x <= hi; ++x) {
    const bool in = u.contains(Element{x});
    r.bits[static_cast<std::size_t>(x - lo)] = in;
    if (in) {
      ++r.members;
      if (len == 0) start = x;
      ++len;
      r.longest = std::max(r.longest, len);
      if (x <= mid) r.longest_half = std::max(r.longest_half, len);
    }
    if ((!in || x == hi) && len > 0) {
      r.runs.emplace_back(start, len);
      len = 0;
    }
  }
  return r;
}

}  // namespace

CylinderPattern CylinderPattern::make(std::vector<Element> l1, std::vector<Element> l2) {
  for (const auto& x : l1)
    if (std::find(l2.begin(), l2.end(), x) != l2.end())
      throw ArgumentError("cylinder pattern sets share " + x.to_string());
  return {std::move(l1), std::move(l2)};
}

std::vector<CylinderPattern> interval_pattern_catalog(int length) {
  if (length < 0 || length > 12) throw ArgumentError("catalog length must be in [0, 12]");
  std::int64_t total = 1;
  for (int i = 0; i < length; ++i) total *= 3;
  std::vector<CylinderPattern> out;
  out.reserve(static_cast<std::size_t>(total));
  for (std::int64_t code = 0; code < total; ++code) {
    CylinderPattern p;
    std::int64_t c = code;
    for (int i = 0; i < length; ++i, c /= 3) {
      if (c % 3 == 1) p.l1.push_back(Element{i});
      if (c % 3 == 2) p.l2.push_back(Element{i});
    }
    out.push_back(std::move(p));
  }
  return out;
}

WordPattern WordPattern::make(std::vector<Element> k, std::vector<bool> omega) {
  if (k.size() != omega.size()) throw ArgumentError("ω must assign a bit to every element of K");
  if (k.empty()) throw ArgumentError("word shape must be nonempty");
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = i + 1; j < k.size(); ++j)
      if (k[i] == k[j]) throw ArgumentError("word shape has a repeated element");
  return {std::move(k), std::move(omega)};
}

WordPattern WordPattern::from_string(const std::string& bits) {
  std::vector<Element> k;
  std::vector<bool> omega;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw ArgumentError("word must be a string of 0 and 1");
    k.push_back(Element{static_cast<std::int64_t>(i)});
    omega.push_back(bits[i] == '1');
  }
  return make(std::move(k), std::move(omega));
}

std::string WordPattern::to_string() const {
  std::string s;
  for (bool b : omega) s += b ? '1' : '0';
  return s;
}

bool PackingFamily::valid() const {
  std::set<std::int64_t> used;
  for (auto y : packing)
    for (auto h : k) {
      const std::int64_t x = h + y;
      if (x < lo || x > hi) return false;
      if (!used.insert(x).second) return false;
    }
  return true;
}

BinaryConfig shift_config(const BinaryConfig& alpha, const GroupContext& ctx, const Element& g) {
  if (!ctx.is_element(g)) throw ArgumentError(g.to_string() + " is not in " + ctx.name());
  return {[f = alpha.eval, ctx, g](const Element& x) { return f(ctx.op(x, g)); },
          g.to_string() + "." + alpha.label};
}

bool cylinder_match(const BinaryConfig& alpha, const GroupContext& ctx, const CylinderPattern& p, const Element& g) {
  for (const auto& l : p.l1)
    if (!alpha.eval(ctx.op(l, g))) return false;
  for (const auto& l : p.l2)
    if (alpha.eval(ctx.op(l, g))) return false;
  return true;
}

void for_each_scan(const GroupContext& ctx, std::int64_t count, const std::function<bool(const Element&)>& visit) {
  if (one_dimensional(ctx)) {
    for (std::int64_t i = 0; i < count; ++i)
      if (visit(Element{scan_at(ctx, i)})) return;
    return;
  }
  if (ctx.kind() != ContextKind::IntVecAdd) throw ConfigurationError("scan order is defined for N, Z and Z^d");
  const int d = ctx.dim();
  std::int64_t seen = 0;
  bool stop = false;
  Element x;
  for (int i = 0; i < d; ++i) x.push_back(0);
  std::function<void(int, std::int64_t, bool)> rec = [&](int i, std::int64_t r, bool on_shell) {
    const auto idx = static_cast<std::size_t>(i);
    auto step = [&](std::int64_t v) {
      x[idx] = v;
      if (i + 1 < d) {
        rec(i + 1, r, on_shell || std::abs(v) == r);
      } else if (seen < count) {
        ++seen;
        stop = visit(x);
      }
      if (seen >= count) stop = true;
    };
    if (i + 1 == d && !on_shell) {
      step(-r);
      if (!stop && r != 0) step(r);
      return;
    }
    for (std::int64_t v = -r; v <= r && !stop; ++v) step(v);
  };
  for (std::int64_t r = 0; !stop && seen < count; ++r) rec(0, r, false);
}

DisjunctivityReport disjunctivity_scan(const BinaryConfig& alpha, const GroupContext& ctx,
                                       std::span<const CylinderPattern> catalog, std::int64_t search_bound,
                                       unsigned threads) {
  DisjunctivityReport rep;
  rep.search_bound = search_bound;
  rep.witnesses.resize(catalog.size());
  if (threads == 0) threads = default_thread_count();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(catalog.size(), 1))));
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < catalog.size(); i += threads)
      for_each_scan(ctx, search_bound, [&](const Element& g) {
        if (!cylinder_match(alpha, ctx, catalog[i], g)) return false;
        rep.witnesses[i] = g;
        return true;
      });
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (const auto& w : rep.witnesses)
    if (w) ++rep.found;
  return rep;
}

std::int64_t DisjunctiveConfig::offset_of(int side, std::uint64_t word) const {
  for (const auto& b : placements)
    if (b.side == side) {
      if (word >= static_cast<std::uint64_t>(b.cubes)) throw ArgumentError("word does not fit the cube side");
      return b.offset + static_cast<std::int64_t>(word) * side;
    }
  throw ArgumentError("side " + std::to_string(side) + " is beyond the placement horizon");
}

CylinderPattern DisjunctiveConfig::pattern_of(int side, std::uint64_t word) const {
  int cells = 1;
  for (int i = 0; i < dim; ++i) cells *= side;
  CylinderPattern p;
  for (int idx = 0; idx < cells; ++idx) {
    Element x;
    int rem = idx, stride = cells;
    for (int i = 0; i < dim; ++i) {
      stride /= side;
      x.push_back(rem / stride);
      rem %= stride;
    }
    const bool bit = (word >> (cells - 1 - idx)) & 1U;
    (bit ? p.l1 : p.l2).push_back(x);
  }
  return p;
}

DisjunctiveConfig disjunctive_generator(const GroupContext& ctx, int max_side) {
  if (!one_dimensional(ctx) && ctx.kind() != ContextKind::IntVecAdd)
    throw ConfigurationError("disjunctive generator supports N, Z and Z^d, not " + ctx.name());
  const int d = ctx.dim();
  auto blocks = std::make_shared<std::vector<PlacementBlock>>();
  std::int64_t offset = 0;
  for (int s = 1; max_side == 0 || s <= max_side; ++s) {
    std::int64_t cells = 1;
    for (int i = 0; i < d; ++i) cells *= s;
    if (cells > 56) break;
    const std::int64_t cubes = std::int64_t{1} << cells;
    if (cubes > ((std::int64_t{1} << 60) - offset) / s) break;
    blocks->push_back({s, offset, cubes});
    offset += cubes * s;
  }
  if (max_side != 0 && static_cast<int>(blocks->size()) < max_side)
    throw ArgumentError("placement horizon exceeds the 2^60 offset budget");

  DisjunctiveConfig out;
  out.dim = d;
  out.placements = *blocks;
  out.config.label = "disjunctive";
  out.config.eval = [blocks, d](const Element& x) {
    const std::int64_t x0 = x[0];
    if (x0 < 0) return false;
    auto it = std::upper_bound(blocks->begin(), blocks->end(), x0,
                               [](std::int64_t v, const PlacementBlock& b) { return v < b.offset; });
    if (it == blocks->begin()) return false;
    const PlacementBlock& b = *std::prev(it);
    const std::int64_t local = x0 - b.offset;
    const std::int64_t cube = local / b.side;
    if (cube >= b.cubes) return false;
    std::int64_t idx = local % b.side;
    for (int i = 1; i < d; ++i) {
      const std::int64_t c = x[static_cast<std::size_t>(i)];
      if (c < 0 || c >= b.side) return false;
      idx = idx * b.side + c;
    }
    std::int64_t cells = 1;
    for (int i = 0; i < d; ++i) cells *= b.side;
    return ((static_cast<std::uint64_t>(cube) >> (cells - 1 - idx)) & 1U) != 0;
  };
  return out;
}

PackingFamily phase_packing(const GroupContext& ctx, const WordPattern& w, std::int64_t window_index,
                            std::int64_t phase) {
  require_one_dimensional(ctx, "packings");
  const auto [lo, hi] = interval_of(ctx, window_index);
  PackingFamily p;
  p.k = scalar_offsets(w.k);
  p.lo = lo;
  p.hi = hi;
  const auto [kmin_it, kmax_it] = std::minmax_element(p.k.begin(), p.k.end());
  const std::int64_t kmin = *kmin_it, kmax = *kmax_it;
  if (is_interval(p.k)) {
    const auto len = static_cast<std::int64_t>(p.k.size());
    for (std::int64_t y = lo - kmin + phase; y + kmax <= hi; y += len) p.packing.push_back(y);
    return p;
  }
  std::vector<char> used(static_cast<std::size_t>(hi - lo + 1), 0);
  for (std::int64_t y = lo - kmin; y + kmax <= hi; ++y) {
    bool free = true;
    for (auto h : p.k) free = free && !used[static_cast<std::size_t>(y + h - lo)];
    if (!free) continue;
    for (auto h : p.k) used[static_cast<std::size_t>(y + h - lo)] = 1;
    p.packing.push_back(y);
  }
  return p;
}

WordFrequency word_frequency(const BinaryConfig& alpha, const GroupContext& ctx, const WordPattern& w,
                             std::int64_t window_index) {
  require_one_dimensional(ctx, "word_frequency");
  const auto [lo, hi] = interval_of(ctx, window_index);
  const std::vector<std::int64_t> k = scalar_offsets(w.k);
  const auto len = static_cast<std::int64_t>(k.size());
  WordFrequency out;
  out.trivial_upper_bound = (hi - lo + 1) / len;
  auto matches = [&](std::int64_t y) {
    for (std::size_t i = 0; i < k.size(); ++i)
      if (alpha.eval(Element{k[i] + y}) != w.omega[i]) return false;
    return true;
  };
  if (is_interval(k)) {
    const std::int64_t kmin = *std::min_element(k.begin(), k.end());
    const std::int64_t max_size = (hi - lo + 1) / len;
    const std::int64_t spare = (hi - lo + 1) % len;
    out.greedy_size = max_size;
    for (std::int64_t phase = 0; phase <= std::min(spare, len - 1); ++phase) {
      PhasePacking pp;
      pp.phase = phase;
      for (std::int64_t y = lo - kmin + phase, i = 0; i < max_size; ++i, y += len) {
        ++pp.size;
        if (matches(y)) ++pp.matched;
      }
      out.phases.push_back(pp);
    }
  } else {
    const PackingFamily p = phase_packing(ctx, w, window_index, 0);
    PhasePacking pp;
    pp.size = static_cast<std::int64_t>(p.packing.size());
    for (auto y : p.packing)
      if (matches(y)) ++pp.matched;
    out.greedy_size = pp.size;
    out.phases.push_back(pp);
  }
  for (const auto& pp : out.phases) {
    if (pp.size == 0) continue;
    const double f = static_cast<double>(pp.matched) / static_cast<double>(pp.size);
    out.max_fraction = std::max(out.max_fraction.value_or(f), f);
    out.min_fraction = std::min(out.min_fraction.value_or(f), f);
  }
  return out;
}

std::vector<EnaEntry> ena_statistics(const BinaryConfig& alpha, const GroupContext& ctx,
                                     std::span<const WordPattern> catalog, std::span<const std::int64_t> windows) {
  std::vector<EnaEntry> out;
  for (const auto& w : catalog) {
    EnaEntry e;
    e.pattern = w;
    for (auto n : windows) {
      WordFrequency f = word_frequency(alpha, ctx, w, n);
      if (f.max_fraction) e.upper = std::max(e.upper, *f.max_fraction);
      if (f.min_fraction) e.lower = std::min(e.lower, *f.min_fraction);
      e.per_window.emplace_back(n, std::move(f));
    }
    out.push_back(std::move(e));
  }
  return out;
}

EnaConfig ena_generator(const GroupContext& ctx, std::int64_t sparsity, const WordPattern& omega, int blocks) {
  require_one_dimensional(ctx, "ena_generator");
  if (sparsity < 2) throw ArgumentError("sparsity factor must be >= 2");
  if (blocks < 1) throw ArgumentError("need at least one block");
  const std::vector<std::int64_t> k = scalar_offsets(omega.k);
  if (!is_interval(k) || *std::min_element(k.begin(), k.end()) != 0)
    throw ArgumentError("ena_generator tiles words on {0..L-1}");

  EnaConfig out;
  out.omega = omega;
  for (int b = 1; b <= blocks; ++b) {
    const double v = std::pow(static_cast<double>(sparsity), static_cast<double>(b) * b);
    if (v > 0x1p40) throw ArgumentError("window s^(k^2) exceeds 2^40 at block " + std::to_string(b));
    std::int64_t n = 1;
    for (int i = 0; i < b * b; ++i) n *= sparsity;
    out.windows.push_back(n);
    out.match_mode.push_back(b % 2 == 0);
  }
  auto windows = std::make_shared<std::vector<std::int64_t>>(out.windows);
  auto modes = std::make_shared<std::vector<bool>>(out.match_mode);
  auto bits = std::make_shared<std::vector<bool>>(omega.omega);
  const bool natural = ctx.kind() == ContextKind::NatAdd;
  out.config.label = "ena(" + omega.to_string() + ")";
  out.config.eval = [windows, modes, bits, natural](const Element& e) {
    const std::int64_t x = e[0];
    if (natural && x < 1) return false;
    const std::int64_t m = x < 0 ? -x : x;
    auto it = std::lower_bound(windows->begin(), windows->end(), m);
    if (it == windows->end()) return false;
    const auto blk = static_cast<std::size_t>(it - windows->begin());
    const std::int64_t inner = blk == 0 ? 0 : (*windows)[blk - 1];
    const auto len = static_cast<std::int64_t>(bits->size());
    // Tile upward from the lowest point of the block on each side.
    const std::int64_t start = x > 0 ? inner + 1 : -*it;
    const bool letter = (*bits)[static_cast<std::size_t>((x - start) % len)];
    return (*modes)[blk] ? letter : !letter;
  };
  return out;
}

bool ena_sparsity_holds(const GroupContext& ctx, std::span<const std::int64_t> windows) {
  std::int64_t prefix = 0;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto k = static_cast<std::int64_t>(i + 1);
    const std::int64_t size = window_size(ctx, windows[i]);
    if (static_cast<double>(prefix) * static_cast<double>(k) >= static_cast<double>(size)) return false;
    prefix += size;
  }
  return true;
}

NormalReport normal_statistics(const BinaryConfig& alpha, const GroupContext& ctx, std::span<const std::int64_t> k,
                               std::span<const std::int64_t> windows) {
  require_one_dimensional(ctx, "normal_statistics");
  if (k.empty() || k.size() > 16) throw ArgumentError("shape size must be in [1, 16]");
  const auto [kmin_it, kmax_it] = std::minmax_element(k.begin(), k.end());
  const std::int64_t kmin = *kmin_it, kmax = *kmax_it;
  NormalReport rep;
  rep.expected = std::ldexp(1.0, -static_cast<int>(k.size()));
  for (auto n : windows) {
    const auto [lo, hi] = interval_of(ctx, n);
    std::vector<char> bits(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t x = lo; x <= hi; ++x) bits[static_cast<std::size_t>(x - lo)] = alpha.eval(Element{x});
    std::vector<std::int64_t> counts(std::size_t{1} << k.size(), 0);
    for (std::int64_t g = lo - kmin; g + kmax <= hi; ++g) {
      std::size_t mask = 0;
      for (std::size_t i = 0; i < k.size(); ++i)
        if (bits[static_cast<std::size_t>(g + k[i] - lo)]) mask |= std::size_t{1} << i;
      ++counts[mask];
    }
    NormalWindow w;
    w.n = n;
    const double size = static_cast<double>(hi - lo + 1);
    for (auto c : counts) {
      w.frequencies.push_back(static_cast<double>(c) / size);
      w.max_deviation = std::max(w.max_deviation, std::abs(w.frequencies.back() - rep.expected));
    }
    rep.windows.push_back(std::move(w));
  }
  rep.flagged_non_normal = !rep.windows.empty() && rep.windows.back().max_deviation > kNormalFlagThreshold;
  return rep;
}

BinaryConfig pseudorandom_config(std::uint64_t seed) {
  return {[seed](const Element& x) {
            std::uint64_t z = seed;
            for (auto c : x.coords()) z = splitmix64(z ^ (static_cast<std::uint64_t>(c) * 0x9E3779B97F4A7C15ULL));
            return (z >> 63) != 0;
          },
          "pseudorandom"};
}

OrbitWitness orbit_window_membership(const BinaryConfig& beta, const BinaryConfig& alpha, const GroupContext& ctx,
                                     std::span<const Element> shape, std::int64_t search_bound,
                                     std::optional<std::span<const Element>> candidates) {
  OrbitWitness out;
  auto agrees = [&](const Element& g) {
    ++out.probes;
    for (const auto& x : shape)
      if (beta.eval(x) != alpha.eval(ctx.op(x, g))) return false;
    return true;
  };
  if (candidates) {
    for (const auto& g : *candidates) {
      if (out.probes >= search_bound) break;
      if (agrees(g)) {
        out.g = g;
        break;
      }
    }
    return out;
  }
  for_each_scan(ctx, search_bound, [&](const Element& g) {
    if (!agrees(g)) return false;
    out.g = g;
    return true;
  });
  return out;
}

ExtractionReport syndetic_extraction(const BinaryConfig& alpha, const GroupContext& ctx,
                                     std::span<const std::int64_t> window_lengths, int h_budget,
                                     std::int64_t search_bound) {
  require_one_dimensional(ctx, "syndetic_extraction");
  if (window_lengths.empty()) throw ArgumentError("need at least one window length");
  if (h_budget < 1) throw ArgumentError("H budget must be >= 1");
  std::vector<std::int64_t> lengths(window_lengths.begin(), window_lengths.end());
  std::sort(lengths.begin(), lengths.end());
  if (lengths.front() < 1) throw ArgumentError("window lengths must be positive");
  const std::int64_t m_max = lengths.back();
  const std::int64_t lo = ctx.kind() == ContextKind::NatAdd ? 1 : -(search_bound / 2);
  const std::int64_t hi = ctx.kind() == ContextKind::NatAdd ? search_bound : (search_bound + 1) / 2 - 1;

  ExtractionReport rep;
  rep.outcome = "non-ps-evidence";
  const SetOracle a = alpha.as_set();
  for (int h = 1; h <= h_budget; ++h) {
    const auto hs = initial_segment(h);
    const Runs runs = scan_runs(preimage_union(a, ctx, hs), lo, hi);
    rep.h = h;
    rep.coverage = static_cast<double>(runs.members) / static_cast<double>(hi - lo + 1);
    rep.max_run = runs.longest;
    const bool stalled = runs.longest == runs.longest_half && runs.longest < hi - lo + 1;
    if (stalled) continue;
    if (runs.longest < m_max) {
      rep.outcome = "inconclusive";
      continue;
    }

    std::vector<std::int64_t> cands;
    for (const auto& [start, len] : runs.runs)
      for (std::int64_t g = start; g + m_max <= start + len && g + m_max - 1 <= hi; ++g) cands.push_back(g);
    rep.candidates = static_cast<std::int64_t>(cands.size());
    auto bit = [&](std::int64_t x) { return alpha.eval(Element{x}); };
    for (auto m : lengths) {
      std::map<std::vector<bool>, std::vector<std::int64_t>> classes;
      for (auto g : cands) {
        std::vector<bool> key(static_cast<std::size_t>(m));
        for (std::int64_t i = 0; i < m; ++i) key[static_cast<std::size_t>(i)] = bit(g + i);
        classes[key].push_back(g);
      }
      const std::vector<std::int64_t>* best = nullptr;
      for (const auto& [key, gs] : classes)
        if (!best || gs.size() > best->size() || (gs.size() == best->size() && gs.front() < best->front()))
          best = &gs;
      cands = *best;
    }
    rep.offset = cands.front();
    rep.window.resize(static_cast<std::size_t>(m_max));
    for (std::int64_t i = 0; i < m_max; ++i) rep.window[static_cast<std::size_t>(i)] = bit(*rep.offset + i);
    std::int64_t last = -1;
    for (std::int64_t i = 0; i < m_max; ++i)
      if (rep.window[static_cast<std::size_t>(i)]) {
        rep.max_gap = std::max(rep.max_gap, i - last);
        last = i;
      }
    if (last < 0) {
      rep.max_gap = m_max + 1;
      rep.outcome = "inconclusive";
      continue;
    }
    rep.success = true;
    rep.outcome = "ps-evidence";
    return rep;
  }
  return rep;
}

BinaryConfig periodic_extension(const ExtractionReport& r) {
  if (!r.offset || r.window.empty()) throw ArgumentError("extraction produced no window");
  auto w = std::make_shared<std::vector<bool>>(r.window);
  const std::int64_t off = *r.offset;
  return {[w, off](const Element& x) {
            const auto m = static_cast<std::int64_t>(w->size());
            std::int64_t i = (x[0] - off) % m;
            if (i < 0) i += m;
            return static_cast<bool>((*w)[static_cast<std::size_t>(i)]);
          },
          "periodic-extension"};
}

std::string to_string(GapClass c) {
  switch (c) {
    case GapClass::Empty: return "empty";
    case GapClass::BoundedGap: return "bounded-gap";
    case GapClass::GrowingGap: return "growing-gap";
  }
  return "?";
}

std::vector<GapRow> minimal_orbit_gap_report(const BinaryConfig& alpha, const GroupContext& ctx,
                                             std::span<const CylinderPattern> catalog, std::int64_t n) {
  require_one_dimensional(ctx, "minimal_orbit_gap_report");
  if (n < 2) throw ArgumentError("gap report window must be >= 2");
  std::vector<GapRow> out;
  const std::int64_t half = n / 2;
  for (const auto& p : catalog) {
    GapRow row;
    std::int64_t last = -1;
    bool any_half = false;
    for (std::int64_t g = 0; g < n; ++g) {
      if (!cylinder_match(alpha, ctx, p, Element{g})) continue;
      ++row.occurrences;
      row.max_gap = std::max(row.max_gap, g - last);
      if (g < half) {
        row.max_gap_half = row.max_gap;
        any_half = true;
      }
      last = g;
    }
    if (row.occurrences == 0)
      row.cls = GapClass::Empty;
    else
      row.cls = any_half && row.max_gap_half == row.max_gap ? GapClass::BoundedGap : GapClass::GrowingGap;
    out.push_back(row);
  }
  return out;
}

}  // namespace discordant
