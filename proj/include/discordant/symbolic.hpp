#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "discordant/folner.hpp"

namespace discordant {

/// A point of {0,1}^G given lazily by a pure evaluation function.
struct BinaryConfig {
  std::function<bool(const Element&)> eval;
  std::string label;

  static BinaryConfig of(const SetOracle& a) { return {a.contains, "1_" + a.label}; }
  SetOracle as_set() const { return {eval, label, std::nullopt}; }
};

/// V(L1, L2) = {α : α(L1) = {1}, α(L2) = {0}}.
struct CylinderPattern {
  std::vector<Element> l1;
  std::vector<Element> l2;

  /// Throws ArgumentError if L1 and L2 meet.
  static CylinderPattern make(std::vector<Element> l1, std::vector<Element> l2);
  std::size_t support_size() const { return l1.size() + l2.size(); }
};

/// Every (L1, L2) with L1 ∪ L2 ⊆ {0..length-1} in a one-dimensional context
/// (3^length patterns, the empty pattern included).
std::vector<CylinderPattern> interval_pattern_catalog(int length);

/// A finite word ω on a shape K.
struct WordPattern {
  std::vector<Element> k;
  std::vector<bool> omega;

  static WordPattern make(std::vector<Element> k, std::vector<bool> omega);
  /// K = {0..bits.size()-1} with ω given by `bits` ("101" etc).
  static WordPattern from_string(const std::string& bits);
  std::string to_string() const;
};

/// Translates K + y for y in `packing`, pairwise disjoint and inside [lo, hi].
struct PackingFamily {
  std::vector<std::int64_t> k;
  std::int64_t lo = 0, hi = -1;
  std::vector<std::int64_t> packing;

  /// Pairwise disjointness and containment, checked directly.
  bool valid() const;
};

/// (gα)(x) = α(x·g).
BinaryConfig shift_config(const BinaryConfig& alpha, const GroupContext& ctx, const Element& g);

/// α is 1 on L1·g and 0 on L2·g.
bool cylinder_match(const BinaryConfig& alpha, const GroupContext& ctx, const CylinderPattern& p, const Element& g);

/// Visits the first `count` elements of the context's scan order: ℕ 0, 1, 2, ...;
/// ℤ 0, 1, -1, 2, -2, ...; ℤ^d by max-norm shells, each shell in
/// lexicographic order. `visit` returns true to stop.
void for_each_scan(const GroupContext& ctx, std::int64_t count, const std::function<bool(const Element&)>& visit);

struct DisjunctivityReport {
  std::vector<std::optional<Element>> witnesses;  // per catalog entry
  std::int64_t search_bound = 0;
  std::size_t found = 0;
  bool all_found() const { return found == witnesses.size(); }
};

/// Least witness in scan order among the first `search_bound` elements, per pattern.
DisjunctivityReport disjunctivity_scan(const BinaryConfig& alpha, const GroupContext& ctx,
                                       std::span<const CylinderPattern> catalog, std::int64_t search_bound,
                                       unsigned threads = 0);

/// One block of the disjunctive generator: every 0/1 cube of the given side,
/// in increasing binary order, laid side by side along the first axis.
struct PlacementBlock {
  int side = 0;
  std::int64_t offset = 0;   // first-axis coordinate of the first cube
  std::int64_t cubes = 0;    // 2^(side^d)
};

struct DisjunctiveConfig {
  BinaryConfig config;
  std::vector<PlacementBlock> placements;
  int dim = 1;

  /// First-axis offset of the cube whose bits, read in lexicographic cell order, are `word`.
  std::int64_t offset_of(int side, std::uint64_t word) const;
  /// The cylinder pattern fixing that cube at the origin.
  CylinderPattern pattern_of(int side, std::uint64_t word) const;
};

/// Places every cube pattern of side 1, 2, ... up to `max_side` on disjoint
/// translates; the configuration is 0 elsewhere. `max_side` = 0 picks the
/// largest side that keeps offsets within 2^60.
DisjunctiveConfig disjunctive_generator(const GroupContext& ctx, int max_side = 0);

struct PhasePacking {
  std::int64_t phase = 0;
  std::int64_t size = 0;
  std::int64_t matched = 0;
};

struct WordFrequency {
  /// Max / min matched fraction over the maximal phase packings; unset if no packing fits.
  std::optional<double> max_fraction;
  std::optional<double> min_fraction;
  std::vector<PhasePacking> phases;
  std::int64_t greedy_size = 0;
  std::int64_t trivial_upper_bound = 0;  // ⌊|X| / |K|⌋
};

/// Matched fraction of the translates Ky in a packing of Φ_n (ℕ or ℤ).
/// Interval shapes use exact greedy packings at every phase; other shapes
/// use one left-to-right greedy packing.
WordFrequency word_frequency(const BinaryConfig& alpha, const GroupContext& ctx, const WordPattern& w,
                             std::int64_t window_index);

/// The packing `word_frequency` builds at a given phase.
PackingFamily phase_packing(const GroupContext& ctx, const WordPattern& w, std::int64_t window_index,
                            std::int64_t phase);

struct EnaEntry {
  WordPattern pattern;
  double upper = 0.0;
  double lower = 1.0;
  std::vector<std::pair<std::int64_t, WordFrequency>> per_window;
};

/// Running max / min of word_frequency across the windows.
std::vector<EnaEntry> ena_statistics(const BinaryConfig& alpha, const GroupContext& ctx,
                                     std::span<const WordPattern> catalog, std::span<const std::int64_t> windows);

struct EnaConfig {
  BinaryConfig config;
  WordPattern omega;
  /// Window indices n_k = s^(k^2), k = 1..blocks.
  std::vector<std::int64_t> windows;
  /// Block k: true for match mode (tiled with ω), false for no-match mode.
  std::vector<bool> match_mode;
};

/// Blocks Ψ_k = Φ_{n_k} \ Φ_{n_{k-1}} alternate between tiling with ω (k even)
/// and tiling with the complement of ω (k odd).
EnaConfig ena_generator(const GroupContext& ctx, std::int64_t sparsity, const WordPattern& omega, int blocks);

/// Σ_{j<k} |Φ_{n_j}| < |Φ_{n_k}| / k for every generated k.
bool ena_sparsity_holds(const GroupContext& ctx, std::span<const std::int64_t> windows);

struct NormalWindow {
  std::int64_t n = 0;
  std::vector<double> frequencies;  // indexed by ω as a bitmask over K (first element = bit 0)
  double max_deviation = 0.0;       // max |freq - 2^-|K||
};

struct NormalReport {
  std::vector<NormalWindow> windows;
  double expected = 0.0;
  /// Set when the last window deviates by more than 0.05.
  bool flagged_non_normal = false;
};

inline constexpr double kNormalFlagThreshold = 0.05;

/// Sliding counts |{g : K+g ⊆ Φ_n, α(h+g) = ω(h) ∀h}| / |Φ_n| for every ω on K.
NormalReport normal_statistics(const BinaryConfig& alpha, const GroupContext& ctx, std::span<const std::int64_t> k,
                               std::span<const std::int64_t> windows);

inline constexpr std::uint64_t kPseudorandomSeed = 0x5DEECE66DULL;

/// Bit 63 of splitmix64 applied coordinate by coordinate to seed ^ (c · 0x9E3779B97F4A7C15).
BinaryConfig pseudorandom_config(std::uint64_t seed = kPseudorandomSeed);

struct OrbitWitness {
  std::optional<Element> g;
  std::int64_t probes = 0;
};

/// Least g (scan order, or the order of `candidates` when given) with
/// β(x) = α(x·g) on the shape.
OrbitWitness orbit_window_membership(const BinaryConfig& beta, const BinaryConfig& alpha, const GroupContext& ctx,
                                     std::span<const Element> shape, std::int64_t search_bound,
                                     std::optional<std::span<const Element>> candidates = std::nullopt);

struct ExtractionReport {
  bool success = false;
  int h = 0;                          // |H| of the accepted H = {0..h-1}
  std::optional<std::int64_t> offset; // g of the stabilised window
  std::vector<bool> window;           // β on {0..m-1}
  std::int64_t max_gap = 0;           // including the gap before the first 1
  std::int64_t candidates = 0;
  double coverage = 0.0;              // density of H⁻¹A in the scan region for the last h tried
  std::int64_t max_run = 0;           // longest run of H⁻¹A for the last h tried
  std::string outcome;
};

/// Finite replay of the orbit-closure argument for PS sets on ℕ or ℤ. For
/// h = 1..h_budget, H⁻¹A is profiled over the budget; the first h whose
/// profile does not stall and whose longest run holds the largest window
/// supplies the candidate shifts. Candidates are then narrowed window by
/// window to the most frequent pattern on {0..m-1} (ties: the class of the
/// least shift).
ExtractionReport syndetic_extraction(const BinaryConfig& alpha, const GroupContext& ctx,
                                     std::span<const std::int64_t> window_lengths, int h_budget,
                                     std::int64_t search_bound);

/// The window of a report extended periodically from its extraction offset.
BinaryConfig periodic_extension(const ExtractionReport& r);

enum class GapClass { Empty, BoundedGap, GrowingGap };
std::string to_string(GapClass c);

struct GapRow {
  std::int64_t occurrences = 0;
  std::int64_t max_gap_half = 0;
  std::int64_t max_gap = 0;
  GapClass cls = GapClass::Empty;
};

/// Occurrences of each pattern at g ∈ {0..n-1}. Gaps include the leading gap
/// and exclude the trailing one; bounded when the max gap over {0..n/2-1}
/// already equals the max gap over {0..n-1}.
std::vector<GapRow> minimal_orbit_gap_report(const BinaryConfig& alpha, const GroupContext& ctx,
                                             std::span<const CylinderPattern> catalog, std::int64_t n);

}  // namespace discordant
