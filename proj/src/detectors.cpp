#include "discordant/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "json.hpp"

#include "discordant/errors.hpp"
#include "discordant/numtheory.hpp"

namespace discordant {

namespace {

struct Run {
  std::int64_t start = 0;
  std::int64_t length = 0;
};

// Longest run of members in [lo, hi]; also the longest run truncated at `mid`.
std::pair<Run, Run> longest_runs(const SetOracle& a, std::int64_t lo, std::int64_t hi, std::int64_t mid) {
  Run best, best_half, cur{lo, 0};
  for (std::int64_t x = lo; x <= hi; ++x) {
    if (a.contains(Element{x})) {
      if (cur.length == 0) cur.start = x;
      ++cur.length;
      if (cur.length > best.length) best = cur;
      if (x <= mid && cur.length > best_half.length) best_half = cur;
    } else {
      cur.length = 0;
    }
  }
  return {best, best_half};
}

// Largest side s of a cube translate {0..s-1}^d + g inside A ∩ box.
struct CubeHit {
  std::int64_t side = 0;
  Element corner;
};

CubeHit largest_cube(const SetOracle& a, int d, std::int64_t side, std::int64_t origin) {
  std::int64_t total = 1;
  for (int i = 0; i < d; ++i) total *= side;
  std::vector<std::int32_t> dp(static_cast<std::size_t>(total), 0);
  std::vector<std::int64_t> stride(static_cast<std::size_t>(d));
  stride[static_cast<std::size_t>(d - 1)] = 1;
  for (int i = d - 2; i >= 0; --i) stride[static_cast<std::size_t>(i)] = stride[static_cast<std::size_t>(i + 1)] * side;
  CubeHit best;
  std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0);
  for (std::int64_t flat = 0; flat < total; ++flat) {
    std::int64_t rem = flat;
    Element x;
    for (int i = 0; i < d; ++i) {
      idx[static_cast<std::size_t>(i)] = rem / stride[static_cast<std::size_t>(i)];
      rem %= stride[static_cast<std::size_t>(i)];
      x.push_back(origin + idx[static_cast<std::size_t>(i)]);
    }
    if (!a.contains(x)) continue;
    // Cube ending at x: 1 + min over the 2^d - 1 lower neighbours.
    std::int32_t m = INT32_MAX;
    for (int mask = 1; mask < (1 << d); ++mask) {
      std::int64_t off = 0;
      bool inside = true;
      for (int i = 0; i < d; ++i) {
        if (mask & (1 << i)) {
          if (idx[static_cast<std::size_t>(i)] == 0) {
            inside = false;
            break;
          }
          off += stride[static_cast<std::size_t>(i)];
        }
      }
      m = std::min(m, inside ? dp[static_cast<std::size_t>(flat - off)] : 0);
    }
    const std::int32_t v = m + 1;
    dp[static_cast<std::size_t>(flat)] = v;
    if (v > best.side) {
      best.side = v;
      best.corner = Element{};
      for (int i = 0; i < d; ++i) best.corner.push_back(x[static_cast<std::size_t>(i)] - v + 1);
    }
  }
  return best;
}

bool verify_cube(const SetOracle& a, const Element& corner, std::int64_t side) {
  WindowBox box;
  for (std::size_t i = 0; i < corner.dim(); ++i) box.ranges.emplace_back(corner[i], corner[i] + side - 1);
  bool ok = true;
  for_each_in_box(box, [&](const Element& x) { ok = ok && a.contains(x); });
  return ok;
}

std::pair<std::int64_t, std::int64_t> scan_region(const GroupContext& ctx, std::int64_t budget) {
  if (ctx.kind() == ContextKind::NatAdd) return {1, budget};
  return {-(budget / 2), (budget + 1) / 2 - 1};
}

}  // namespace

bool ThicknessProfile::stalled() const {
  return checkpoints.size() == 2 && checkpoints[0].second == checkpoints[1].second &&
         max_shape_index < max_probeable;
}

ThicknessProfile thickness_profile_in(const SetOracle& a, std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw ArgumentError("empty thickness scan region");
  ThicknessProfile p;
  p.search_bound = hi - lo + 1;
  p.max_probeable = p.search_bound;
  const std::int64_t mid = lo + p.search_bound / 2 - 1;
  const auto [best, half] = longest_runs(a, lo, hi, mid);
  p.max_shape_index = best.length;
  if (best.length > 0) {
    p.witness = Element{best.start};
    for (std::int64_t x = best.start; x < best.start + best.length; ++x)
      if (!a.contains(Element{x})) throw ConstructionError("thickness witness failed verification");
  }
  p.checkpoints = {{p.search_bound / 2, half.length}, {p.search_bound, best.length}};
  return p;
}

ThicknessProfile thickness_profile(const SetOracle& a, const GroupContext& ctx, std::int64_t search_bound) {
  if (search_bound < 1) throw ArgumentError("search bound must be >= 1");
  switch (ctx.kind()) {
    case ContextKind::NatAdd:
    case ContextKind::IntAdd: {
      const auto [lo, hi] = scan_region(ctx, search_bound);
      ThicknessProfile p = thickness_profile_in(a, lo, hi);
      p.search_bound = search_bound;
      return p;
    }
    case ContextKind::IntVecAdd: {
      const int d = ctx.dim();
      auto side_for = [d](std::int64_t budget) {
        auto s = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(budget), 1.0 / d) + 1e-9));
        return std::max<std::int64_t>(s, 1);
      };
      const std::int64_t side = side_for(search_bound);
      const std::int64_t half_side = side_for(search_bound / 2 > 0 ? search_bound / 2 : 1);
      const CubeHit full = largest_cube(a, d, side, -(side / 2));
      const CubeHit half = largest_cube(a, d, half_side, -(half_side / 2));
      ThicknessProfile p;
      p.search_bound = search_bound;
      p.max_probeable = side;
      p.max_shape_index = full.side;
      if (full.side > 0) {
        if (!verify_cube(a, full.corner, full.side)) throw ConstructionError("cube witness failed verification");
        p.witness = full.corner;
      }
      p.checkpoints = {{search_bound / 2, half.side}, {search_bound, full.side}};
      return p;
    }
    default:
      throw ConfigurationError("thickness profiles are implemented for N, Z and Z^d, not " + ctx.name());
  }
}

SetOracle preimage_union(const SetOracle& a, const GroupContext& ctx, std::span<const Element> h) {
  auto hs = std::make_shared<std::vector<Element>>(h.begin(), h.end());
  for (const auto& e : *hs)
    if (!ctx.is_element(e)) throw ArgumentError("H member " + e.to_string() + " is not in " + ctx.name());
  return {[f = a.contains, hs, ctx](const Element& x) {
            for (const auto& e : *hs)
              if (f(ctx.op(e, x))) return true;
            return false;
          },
          "H^-1(" + a.label + ")", std::nullopt};
}

std::vector<Element> initial_segment(std::int64_t m) {
  std::vector<Element> out;
  for (std::int64_t i = 0; i < m; ++i) out.push_back(Element{i});
  return out;
}

SyndeticityCertificate syndeticity_check(const SetOracle& a, const GroupContext& ctx, std::span<const Element> h,
                                         std::int64_t window_index) {
  if (h.empty()) throw ArgumentError("H must be nonempty");
  SyndeticityCertificate cert;
  cert.h.assign(h.begin(), h.end());
  cert.covered_window = window_index;
  const SetOracle cover = preimage_union(a, ctx, h);
  const WindowBox box = window_box(ctx, window_index);
  // Lexicographic enumeration is ascending, so the first failure is the least.
  bool found = false;
  for_each_in_box(box, [&](const Element& x) {
    if (found) return;
    if (!cover.contains(x)) {
      cert.failure_witness = x;
      found = true;
    }
  });
  return cert;
}

std::string to_string(EvidenceGrade g) {
  switch (g) {
    case EvidenceGrade::UnboundedThroughBudget: return "unbounded-through-budget";
    case EvidenceGrade::Stalled: return "stalled";
    case EvidenceGrade::Growing: return "growing";
  }
  return "?";
}

std::int64_t PsEvidence::strongest_profile() const {
  std::int64_t s = 0;
  for (const auto& e : entries) s = std::max(s, e.profile.max_shape_index);
  return s;
}

PsEvidence ps_evidence(const SetOracle& a, const GroupContext& ctx, std::span<const std::vector<Element>> h_family,
                       std::int64_t search_bound) {
  if (h_family.empty()) throw ArgumentError("H family must be nonempty");
  PsEvidence ev;
  bool any_saturated = false, all_stalled = true;
  for (const auto& h : h_family) {
    PsEvidenceEntry e;
    e.h = h;
    e.profile = thickness_profile(preimage_union(a, ctx, h), ctx, search_bound);
    if (e.profile.saturated())
      e.grade = EvidenceGrade::UnboundedThroughBudget;
    else if (e.profile.stalled())
      e.grade = EvidenceGrade::Stalled;
    else
      e.grade = EvidenceGrade::Growing;
    any_saturated = any_saturated || e.grade == EvidenceGrade::UnboundedThroughBudget;
    all_stalled = all_stalled && e.grade == EvidenceGrade::Stalled;
    ev.entries.push_back(std::move(e));
  }
  ev.summary = any_saturated ? "ps-evidence" : all_stalled ? "non-ps-evidence" : "inconclusive";
  return ev;
}

bool CRTWitness::verify(const SetOracle& a) const {
  for (std::size_t i = 0; i < shifts.size(); ++i)
    for (std::int64_t k = verified_range.first; k <= verified_range.second; ++k)
      if (a.contains(Element{shifts[i] + x + k * modulus})) return false;
  return true;
}

std::string CRTWitness::to_json() const {
  nlohmann::ordered_json j;
  j["shifts"] = shifts;
  j["moduli"] = moduli;
  j["targets"] = target_residues;
  j["x"] = x;
  j["N"] = modulus;
  nlohmann::ordered_json proof = nlohmann::ordered_json::array();
  for (const auto& [m, r] : residue_proof) proof.push_back({{"modulus", m}, {"residue", r}});
  j["residueProof"] = proof;
  j["verifiedRange"] = {verified_range.first, verified_range.second};
  return j.dump(2);
}

CRTWitness crt_witness(std::span<const std::int64_t> shifts, std::span<const std::int64_t> moduli,
                       std::span<const std::int64_t> targets) {
  if (shifts.empty()) throw ArgumentError("crt_witness needs at least one shift");
  if (shifts.size() > moduli.size())
    throw ArgumentError("crt_witness needs one modulus per shift (" + std::to_string(shifts.size()) + " shifts, " +
                        std::to_string(moduli.size()) + " moduli)");
  if (!targets.empty() && targets.size() < shifts.size()) throw ArgumentError("one target residue per shift");
  CRTWitness w;
  w.shifts.assign(shifts.begin(), shifts.end());
  w.moduli.assign(moduli.begin(), moduli.begin() + static_cast<std::ptrdiff_t>(shifts.size()));
  std::vector<std::int64_t> residues;
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    const std::int64_t target = targets.empty() ? 0 : mod_floor(targets[i], w.moduli[i]);
    w.target_residues.push_back(target);
    residues.push_back(target - shifts[i]);
  }
  if (!pairwise_coprime(w.moduli)) throw ArgumentError("crt_witness moduli are not pairwise coprime");
  const CrtSolution sol = solve_crt(residues, w.moduli);
  w.x = sol.x;
  w.modulus = sol.modulus;
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    const std::int64_t r = mod_floor(shifts[i] + w.x, w.moduli[i]);
    if (r != w.target_residues[i]) throw ConstructionError("CRT solution failed its residue check");
    w.residue_proof.emplace_back(w.moduli[i], r);
  }
  return w;
}

STDecomposition st_decompose(const SetOracle& a, const GroupContext& ctx, std::span<const Element> h,
                             std::int64_t window_index) {
  STDecomposition out;
  out.t = set_union(a, preimage_union(a, ctx, h));
  out.t.label = "T";
  out.s = set_union(a, complement(out.t));
  out.s.label = "S";
  for_each_in_box(window_box(ctx, window_index), [&](const Element& x) {
    ++out.checked;
    if ((out.s.contains(x) && out.t.contains(x)) != a.contains(x)) out.identity_holds = false;
  });
  return out;
}

bool DualityReport::all_consistent() const {
  return std::all_of(rows.begin(), rows.end(), [](const DualityRow& r) { return r.consistent; });
}

DualityReport duality_check(const SetOracle& a, const GroupContext& ctx,
                            std::span<const std::vector<Element>> h_catalog, std::int64_t search_bound) {
  if (ctx.dim() != 1) throw ConfigurationError("duality check scans one-dimensional contexts");
  const WindowBox box = window_box(ctx, search_bound);
  const auto [lo, hi] = box.ranges[0];
  const SetOracle comp = complement(a);
  DualityReport rep;
  for (const auto& h : h_catalog) {
    DualityRow row;
    row.h = h;
    const auto cert = syndeticity_check(a, ctx, h, search_bound);
    row.syndetic_on_window = cert.covered();
    row.syndeticity_failure = cert.failure_witness;

    std::int64_t hmin = INT64_MAX, hmax = INT64_MIN;
    for (const auto& e : h) {
      hmin = std::min(hmin, e[0]);
      hmax = std::max(hmax, e[0]);
    }
    const bool interval = static_cast<std::int64_t>(h.size()) == hmax - hmin + 1;
    if (interval && hmin == 0) {
      // Complement route: a run of Aᶜ of length |H| starting inside the window.
      const auto prof = thickness_profile_in(comp, lo, hi + hmax);
      if (prof.max_shape_index >= static_cast<std::int64_t>(h.size())) row.complement_translate = prof.witness;
    } else {
      std::vector<char> in_comp(static_cast<std::size_t>(hi + hmax - (lo + hmin) + 1));
      for (std::int64_t y = lo + hmin; y <= hi + hmax; ++y)
        in_comp[static_cast<std::size_t>(y - lo - hmin)] = comp.contains(Element{y});
      for (std::int64_t x = lo; x <= hi && !row.complement_translate; ++x) {
        bool all = true;
        for (const auto& e : h) all = all && in_comp[static_cast<std::size_t>(x + e[0] - lo - hmin)];
        if (all) row.complement_translate = Element{x};
      }
    }
    row.consistent = row.syndetic_on_window == !row.complement_translate.has_value();
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

PartitionReport partition_experiment(const SetOracle& a, const GroupContext& ctx,
                                     const std::function<int(const Element&)>& colouring, int colours,
                                     std::span<const std::vector<Element>> h_family, std::int64_t search_bound) {
  if (colours < 1) throw ArgumentError("need at least one colour");
  PartitionReport rep;
  std::int64_t best = -1;
  for (int c = 1; c <= colours; ++c) {
    SetOracle cls{[f = a.contains, colouring, c](const Element& x) { return f(x) && colouring(x) == c; },
                  a.label + "#" + std::to_string(c), std::nullopt};
    rep.classes.push_back(ps_evidence(cls, ctx, h_family, search_bound));
    const std::int64_t s = rep.classes.back().strongest_profile();
    if (s > best) {
      best = s;
      rep.strongest_class = static_cast<std::size_t>(c - 1);
    }
  }
  return rep;
}

}  // namespace discordant
