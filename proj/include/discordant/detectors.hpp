#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "discordant/folner.hpp"

namespace discordant {

/// Finite-budget thickness evidence. Shapes are the intervals {0..L-1}
/// (cubes {0..L-1}^d in ℤ^d); `max_shape_index` is the largest L with a
/// verified translate inside A. It is a lower bound on the true reach and
/// never an overclaim.
struct ThicknessProfile {
  std::int64_t max_shape_index = 0;
  std::int64_t search_bound = 0;
  std::optional<Element> witness;
  /// Largest probeable shape in the scanned region.
  std::int64_t max_probeable = 0;
  /// (budget, profile) at half and full budget.
  std::vector<std::pair<std::int64_t, std::int64_t>> checkpoints;

  /// Profile at half budget equals profile at full budget, below the probeable maximum.
  bool stalled() const;
  /// The whole scanned region lies inside A.
  bool saturated() const { return max_shape_index >= max_probeable; }
};

/// Scan region for a budget: ℕ → [1, B], ℤ → [-⌊B/2⌋, ⌈B/2⌉-1], ℤ^d → a cube
/// of side ⌊B^(1/d)⌋ centred at the origin. Heisenberg and free contexts
/// are rejected.
ThicknessProfile thickness_profile(const SetOracle& a, const GroupContext& ctx, std::int64_t search_bound);

/// One-dimensional profile over the explicit region [lo, hi].
ThicknessProfile thickness_profile_in(const SetOracle& a, std::int64_t lo, std::int64_t hi);

struct SyndeticityCertificate {
  std::vector<Element> h;
  std::int64_t covered_window = 0;
  /// Least window element x (in window order) with h·x ∉ A for every h ∈ H.
  std::optional<Element> failure_witness;
  bool covered() const { return !failure_witness.has_value(); }
};

/// Checks Φ_n ⊆ ⋃_{h∈H} h⁻¹A.
SyndeticityCertificate syndeticity_check(const SetOracle& a, const GroupContext& ctx, std::span<const Element> h,
                                         std::int64_t window_index);

/// ⋃_{h∈H} h⁻¹A.
SetOracle preimage_union(const SetOracle& a, const GroupContext& ctx, std::span<const Element> h);

/// {0, ..., m-1} in a one-dimensional context.
std::vector<Element> initial_segment(std::int64_t m);

enum class EvidenceGrade {
  /// H⁻¹A covered the entire scanned region (consistent with thickness).
  UnboundedThroughBudget,
  /// Profile stopped growing between half and full budget.
  Stalled,
  /// Still growing at the end of the budget; no conclusion.
  Growing,
};

std::string to_string(EvidenceGrade g);

struct PsEvidenceEntry {
  std::vector<Element> h;
  ThicknessProfile profile;
  EvidenceGrade grade;
};

struct PsEvidence {
  std::vector<PsEvidenceEntry> entries;
  /// "ps-evidence" if some H⁻¹A saturates the budget, "non-ps-evidence" if
  /// every profile stalled, "inconclusive" otherwise. Never a proof.
  std::string summary;
  std::int64_t strongest_profile() const;
};

PsEvidence ps_evidence(const SetOracle& a, const GroupContext& ctx, std::span<const std::vector<Element>> h_family,
                       std::int64_t search_bound);

/// (x, N) such that f + x + kN lies in the removed class (residue_i mod m_i)
/// for the i-th shift f, for every k.
struct CRTWitness {
  std::vector<std::int64_t> shifts;
  std::vector<std::int64_t> moduli;
  std::vector<std::int64_t> target_residues;
  std::int64_t x = 0;
  std::int64_t modulus = 0;
  /// (m_i, (f_i + x) mod m_i) per shift.
  std::vector<std::pair<std::int64_t, std::int64_t>> residue_proof;
  std::pair<std::int64_t, std::int64_t> verified_range{0, 10};

  /// True iff a.contains(f + x + kN) is false for every shift and every k in the range.
  bool verify(const SetOracle& a) const;
  std::string to_json() const;
};

/// Uses the first |F| moduli. `targets` defaults to residue 0 for each modulus.
CRTWitness crt_witness(std::span<const std::int64_t> shifts, std::span<const std::int64_t> moduli,
                       std::span<const std::int64_t> targets = {});

struct STDecomposition {
  SetOracle s;  // A ∪ Tᶜ, syndetic
  SetOracle t;  // A ∪ H⁻¹A, thick when A is piecewise syndetic via H
  bool identity_holds = true;
  std::int64_t checked = 0;
};

/// Checks A = S ∩ T pointwise on Φ_n.
STDecomposition st_decompose(const SetOracle& a, const GroupContext& ctx, std::span<const Element> h,
                             std::int64_t window_index);

struct DualityRow {
  std::vector<Element> h;
  bool syndetic_on_window = false;
  std::optional<Element> syndeticity_failure;
  /// Translate x with x + H ⊆ Aᶜ found by the complement scan.
  std::optional<Element> complement_translate;
  bool consistent = false;
};

struct DualityReport {
  std::vector<DualityRow> rows;
  bool all_consistent() const;
};

/// Cross-tabulates syndeticity failures of A against translates of H inside
/// Aᶜ on the window {1..B} (ℕ) or {-B..B} (ℤ).
DualityReport duality_check(const SetOracle& a, const GroupContext& ctx,
                            std::span<const std::vector<Element>> h_catalog, std::int64_t search_bound);

struct PartitionReport {
  std::vector<PsEvidence> classes;
  std::size_t strongest_class = 0;  // 0-based colour index
};

/// Runs ps_evidence on A ∩ colour⁻¹(i) for i = 1..colours.
PartitionReport partition_experiment(const SetOracle& a, const GroupContext& ctx,
                                     const std::function<int(const Element&)>& colouring, int colours,
                                     std::span<const std::vector<Element>> h_family, std::int64_t search_bound);

}  // namespace discordant
